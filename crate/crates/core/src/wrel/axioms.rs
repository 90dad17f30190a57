//! The gs-monoidal axioms for the structural arrows, and the category and
//! symmetric monoidal laws for arbitrary arrows.

use rand::Rng;

use super::{compose, compose_all, copy, del, identity, swap, tensor, TensorWord, WRel};
use crate::report::{check_cases, LawReport};
use crate::rng;
use crate::semiring::Semiring;
use crate::space::Odometer;
use crate::weightmap::{EnumMode, Variant};

/// Words of set sizes with total size at most `max_total`: every composition
/// into positive parts, plus each of those with one size-0 set inserted.
pub fn words_up_to(max_total: usize) -> Vec<TensorWord> {
    fn compositions(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        (1..=n)
            .flat_map(|first| {
                compositions(n - first).into_iter().map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
            })
            .collect()
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    for n in 0..=max_total {
        for c in compositions(n) {
            for at in 0..=c.len() {
                let mut z = c.clone();
                z.insert(at, 0);
                out.push(z);
            }
            out.push(c);
        }
    }
    out.sort();
    out.dedup();
    out.iter().map(|s| TensorWord::of_sizes(s)).collect()
}

fn total_size(w: &TensorWord) -> usize {
    w.sets().iter().map(|s| s.size()).sum()
}

fn eq_or_witness(sr: &Semiring, what: &str, lhs: &WRel, rhs: &WRel) -> Result<(), Vec<String>> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(vec![what.to_string(), lhs.first_difference(sr, rhs).unwrap_or_else(|| "boundaries differ".into())])
    }
}

/// The seven gs-monoidal axiom schemas plus the symmetry laws, checked on
/// every word (or pair, triple of words) of total size at most `max_total`.
pub fn check_gs_axioms(sr: &Semiring, max_total: usize) -> Vec<LawReport> {
    let words = words_up_to(max_total);
    let pairs: Vec<(&TensorWord, &TensorWord)> = words
        .iter()
        .flat_map(|x| words.iter().map(move |y| (x, y)))
        .filter(|(x, y)| total_size(x) + total_size(y) <= max_total)
        .collect();
    let triples: Vec<(&TensorWord, &TensorWord, &TensorWord)> = pairs
        .iter()
        .flat_map(|(x, y)| words.iter().map(move |z| (*x, *y, z)))
        .filter(|(x, y, z)| total_size(x) + total_size(y) + total_size(z) <= max_total)
        .collect();
    let unit = TensorWord::unit();
    let id = |w: &TensorWord| identity(sr, w);
    let seq = |fs: &[&WRel]| compose_all(sr, fs).expect("structural boundaries match");
    let t = |f: &WRel, g: &WRel| tensor(sr, f, g);

    let reports = vec![
        check_cases("gs.copy_multiplicative", &pairs, true, |(x, y)| {
            let xy = x.concat(y);
            let middle = t(&t(&id(x), &swap(sr, x, y)), &id(y));
            let rhs = seq(&[&t(&copy(sr, x), &copy(sr, y)), &middle]);
            eq_or_witness(sr, &format!("X={x}, Y={y}"), &copy(sr, &xy), &rhs)
        }),
        check_cases("gs.del_multiplicative", &pairs, true, |(x, y)| {
            let lhs = del(sr, &x.concat(y));
            eq_or_witness(sr, &format!("X={x}, Y={y}"), &lhs, &t(&del(sr, x), &del(sr, y)))
        }),
        check_cases("gs.copy_unit", [&unit], true, |u| eq_or_witness(sr, "I", &copy(sr, u), &id(u))),
        check_cases("gs.del_unit", [&unit], true, |u| eq_or_witness(sr, "I", &del(sr, u), &id(u))),
        check_cases("gs.coassociative", &words, true, |x| {
            let c = copy(sr, x);
            let lhs = seq(&[&c, &t(&c, &id(x))]);
            let rhs = seq(&[&c, &t(&id(x), &c)]);
            eq_or_witness(sr, &format!("X={x}"), &lhs, &rhs)
        }),
        check_cases("gs.cocommutative", &words, true, |x| {
            let c = copy(sr, x);
            eq_or_witness(sr, &format!("X={x}"), &seq(&[&c, &swap(sr, x, x)]), &c)
        }),
        check_cases("gs.counit", &words, true, |x| {
            let c = copy(sr, x);
            let left = seq(&[&c, &t(&id(x), &del(sr, x))]);
            let right = seq(&[&c, &t(&del(sr, x), &id(x))]);
            eq_or_witness(sr, &format!("X={x}, right counit"), &left, &id(x))?;
            eq_or_witness(sr, &format!("X={x}, left counit"), &right, &id(x))
        }),
        check_cases("smc.swap_involutive", &pairs, true, |(x, y)| {
            let lhs = seq(&[&swap(sr, x, y), &swap(sr, y, x)]);
            eq_or_witness(sr, &format!("X={x}, Y={y}"), &lhs, &id(&x.concat(y)))
        }),
        check_cases("smc.swap_hexagon", &triples, true, |(x, y, z)| {
            let lhs = swap(sr, x, &y.concat(z));
            let rhs = seq(&[&t(&swap(sr, x, y), &id(z)), &t(&id(y), &swap(sr, x, z))]);
            eq_or_witness(sr, &format!("X={x}, Y={y}, Z={z}"), &lhs, &rhs)
        }),
    ];
    reports.into_iter().map(|r| r.with_semiring(sr.name())).collect()
}

struct Homs {
    sizes: Vec<usize>,
    pools: Vec<Vec<Vec<WRel>>>,
    exhaustive: bool,
}

impl Homs {
    fn get(&self, a: usize, b: usize) -> &[WRel] {
        &self.pools[a][b]
    }
}

/// Draws the cases of one law. Each shape fixes the boundary sizes and
/// thereby the hom-sets involved; the union of their products is enumerated
/// when it fits the budget, otherwise `samples` cases are drawn by picking a
/// shape and then one arrow from each hom-set.
#[allow(clippy::too_many_arguments)]
fn cases<'h>(
    homs: &'h Homs,
    arity: usize,
    shape_len: usize,
    budget: u64,
    samples: usize,
    seed: u64,
    law: &str,
    boundary: impl Fn(&[usize]) -> Vec<(usize, usize)>,
) -> (Vec<Vec<&'h WRel>>, bool) {
    let shapes: Vec<Vec<&[WRel]>> = Odometer::new(homs.sizes.len(), shape_len)
        .map(|shape| boundary(&shape).into_iter().map(|(a, b)| homs.get(a, b)).collect::<Vec<_>>())
        .filter(|hs: &Vec<&[WRel]>| hs.iter().all(|h| !h.is_empty()))
        .collect();
    let total = shapes.iter().fold(0u64, |acc, hs| {
        acc.saturating_add(hs.iter().fold(1u64, |p, h| p.saturating_mul(h.len() as u64)))
    });
    if total <= budget {
        let mut out = Vec::with_capacity(total as usize);
        for hs in &shapes {
            let mut ix = vec![0usize; arity];
            'all: loop {
                out.push(ix.iter().zip(hs).map(|(i, h)| &h[*i]).collect());
                for p in (0..arity).rev() {
                    ix[p] += 1;
                    if ix[p] < hs[p].len() {
                        continue 'all;
                    }
                    ix[p] = 0;
                }
                break;
            }
        }
        return (out, homs.exhaustive);
    }
    let mut r = rng::stream(seed, law);
    let out = (0..samples)
        .map(|_| {
            let hs = &shapes[r.gen_range(0..shapes.len())];
            hs.iter().map(|h| &h[r.gen_range(0..h.len())]).collect()
        })
        .collect();
    (out, false)
}

/// Associativity and unit laws of composition, functoriality of `⊗` and
/// naturality of the symmetry, over arrows whose rows lie in `variant`
/// between sets of the given sizes.
pub fn check_category_laws(
    sr: &Semiring,
    variant: Variant,
    sizes: &[usize],
    mode: EnumMode,
    arrow_samples: usize,
    law_samples: usize,
) -> Vec<LawReport> {
    let (budget, seed) = match mode {
        EnumMode::Exhaustive => (u64::MAX, 0),
        EnumMode::Sampled { seed, .. } => (0, seed),
        EnumMode::Auto { budget, seed, .. } => (budget, seed),
    };
    let mut exhaustive = true;
    let pools = sizes
        .iter()
        .map(|a| {
            sizes
                .iter()
                .map(|b| {
                    let p = super::enumerate_arrows(
                        sr,
                        &TensorWord::of_sizes(&[*a]),
                        &TensorWord::of_sizes(&[*b]),
                        variant,
                        mode,
                        arrow_samples,
                    )
                    .map(|p| {
                        exhaustive &= p.exhaustive;
                        p.arrows
                    });
                    p.unwrap_or_default()
                })
                .collect()
        })
        .collect();
    let homs = Homs { sizes: sizes.to_vec(), pools, exhaustive };
    let tag = |l: &str| format!("{l}/{}/{variant}", sr.name());

    let (c, ex) = cases(&homs, 1, 2, budget, law_samples, seed, &tag("cat.unit"), |s| vec![(s[0], s[1])]);
    let unit = check_cases("cat.unit", c, ex, |fs| {
        let f = fs[0];
        let l = compose(sr, &identity(sr, f.dom_word()), f).unwrap();
        let r = compose(sr, f, &identity(sr, f.cod_word())).unwrap();
        eq_or_witness(sr, &format!("f={}", f.render(sr)), &l, f)?;
        eq_or_witness(sr, &format!("f={}", f.render(sr)), &r, f)
    });

    let (c, ex) = cases(&homs, 3, 4, budget, law_samples, seed, &tag("cat.assoc"), |s| {
        vec![(s[0], s[1]), (s[1], s[2]), (s[2], s[3])]
    });
    let assoc = check_cases("cat.assoc", c, ex, |fs| {
        let l = compose(sr, &compose(sr, fs[0], fs[1]).unwrap(), fs[2]).unwrap();
        let r = compose(sr, fs[0], &compose(sr, fs[1], fs[2]).unwrap()).unwrap();
        let w: Vec<String> = fs.iter().map(|f| f.render(sr)).collect();
        eq_or_witness(sr, &w.join(" ; "), &l, &r)
    });

    let (c, ex) = cases(&homs, 4, 6, budget, law_samples, seed, &tag("tensor.interchange"), |s| {
        vec![(s[0], s[1]), (s[2], s[3]), (s[1], s[4]), (s[3], s[5])]
    });
    let interchange = check_cases("tensor.interchange", c, ex, |fs| {
        let l = compose(sr, &tensor(sr, fs[0], fs[1]), &tensor(sr, fs[2], fs[3])).unwrap();
        let r = tensor(sr, &compose(sr, fs[0], fs[2]).unwrap(), &compose(sr, fs[1], fs[3]).unwrap());
        let w: Vec<String> = fs.iter().map(|f| f.render(sr)).collect();
        eq_or_witness(sr, &w.join(", "), &l, &r)
    });

    let (c, ex) = cases(&homs, 2, 4, budget, law_samples, seed, &tag("smc.swap_natural"), |s| {
        vec![(s[0], s[1]), (s[2], s[3])]
    });
    let natural = check_cases("smc.swap_natural", c, ex, |fs| {
        let (f, g) = (fs[0], fs[1]);
        let l = compose(sr, &tensor(sr, f, g), &swap(sr, f.cod_word(), g.cod_word())).unwrap();
        let r = compose(sr, &swap(sr, f.dom_word(), g.dom_word()), &tensor(sr, g, f)).unwrap();
        eq_or_witness(sr, &format!("f={}, g={}", f.render(sr), g.render(sr)), &l, &r)
    });

    vec![unit, assoc, interchange, natural]
        .into_iter()
        .map(|r| r.with_semiring(sr.name()).with_variant(variant.as_str()))
        .collect()
}
