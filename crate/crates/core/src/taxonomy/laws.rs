//! Monad, monoidal and commutativity laws of a sub-monad, and its closure
//! under the structure maps.

use rand::seq::index::sample;
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};

use super::{map_pool, CheckConfig, Mutation};
use crate::report::{LawReport, Status};
use crate::rng;
use crate::semiring::{Elem, Semiring};
use crate::space::Odometer;
use crate::weightmap::{eta, mu, psi, psi0, pushforward, NestedWeightMap, Variant, WeightMap};

#[derive(Clone, Debug)]
enum Item {
    Map(WeightMap),
    Nested(NestedWeightMap),
    /// An element of `M(M(M(X)))`.
    Triple(Vec<(NestedWeightMap, Elem)>),
    /// A function between finite sets, as its table and target size.
    Fun(Vec<usize>, usize),
    /// An element and the size of its set.
    Point(usize, usize),
}

impl Item {
    fn render(&self, sr: &Semiring) -> String {
        match self {
            Item::Map(h) => format!("h={} over {}", h.render(sr), h.size()),
            Item::Nested(h) => format!("H={}", h.render(sr)),
            Item::Triple(t) => {
                let body: Vec<String> = t.iter().map(|(h, w)| format!("{}:{}", h.render(sr), sr.label(w))).collect();
                format!("T={{{}}}", body.join(","))
            }
            Item::Fun(f, m) => format!("f={f:?} into {m}"),
            Item::Point(x, n) => format!("x={x} of {n}"),
        }
    }

    fn map(&self) -> &WeightMap {
        match self {
            Item::Map(h) => h,
            _ => unreachable!("expected a weight map"),
        }
    }

    fn nested(&self) -> &NestedWeightMap {
        match self {
            Item::Nested(h) => h,
            _ => unreachable!("expected a nested map"),
        }
    }

    fn fun(&self) -> (&[usize], usize) {
        match self {
            Item::Fun(f, m) => (f, *m),
            _ => unreachable!("expected a function"),
        }
    }

    fn point(&self) -> (usize, usize) {
        match self {
            Item::Point(x, n) => (*x, *n),
            _ => unreachable!("expected a point"),
        }
    }
}

struct Pool {
    items: Vec<Item>,
    complete: bool,
}

struct Space<'a> {
    factors: Vec<&'a Pool>,
}

fn advance(ix: &mut [usize], radix: &[usize]) -> bool {
    for k in (0..ix.len()).rev() {
        ix[k] += 1;
        if ix[k] < radix[k] {
            return true;
        }
        ix[k] = 0;
    }
    false
}

struct Runner<'a> {
    sr: &'a Semiring,
    variant: Variant,
    cfg: &'a CheckConfig,
}

impl Runner<'_> {
    /// Checks `eval` on the union of the product spaces: exhaustively when
    /// every pool is complete and the union fits the budget, on everything
    /// when the union is no larger than the sample count, and on
    /// `law_samples` seeded draws otherwise.
    fn run(&self, law: &str, spaces: &[Space], eval: impl Fn(&[&Item]) -> Result<(), String>) -> LawReport {
        let size = |s: &Space| s.factors.iter().fold(1u64, |a, f| a.saturating_mul(f.items.len() as u64));
        let total = spaces.iter().map(size).fold(0u64, u64::saturating_add);
        let complete = spaces.iter().all(|s| s.factors.iter().all(|f| f.complete));
        let fail = |items: &[&Item], why: String, checks: u64| {
            let mut w: Vec<String> = items.iter().map(|i| i.render(self.sr)).collect();
            w.push(why);
            LawReport::counterexample(law, w, checks)
        };
        let mut checks = 0u64;
        if (complete && total <= self.cfg.budget) || total <= self.cfg.law_samples as u64 {
            for s in spaces.iter().filter(|s| size(s) > 0) {
                let radix: Vec<usize> = s.factors.iter().map(|f| f.items.len()).collect();
                let mut ix = vec![0; radix.len()];
                loop {
                    let items: Vec<&Item> = ix.iter().zip(&s.factors).map(|(i, f)| &f.items[*i]).collect();
                    checks += 1;
                    if let Err(why) = eval(&items) {
                        return fail(&items, why, checks);
                    }
                    if !advance(&mut ix, &radix) {
                        break;
                    }
                }
            }
            let status = if complete { Status::ExhaustivePass } else { Status::SampledPass };
            return LawReport::new(law, status, checks);
        }
        let live: Vec<&Space> = spaces.iter().filter(|s| size(s) > 0).collect();
        let mut r = rng::stream(self.cfg.seed, &format!("laws/{}/{}/{law}", self.sr.name(), self.variant));
        for _ in 0..self.cfg.law_samples {
            let s = live[r.gen_range(0..live.len())];
            let items: Vec<&Item> = s.factors.iter().map(|f| &f.items[r.gen_range(0..f.items.len())]).collect();
            checks += 1;
            if let Err(why) = eval(&items) {
                return fail(&items, why, checks);
            }
        }
        LawReport::new(law, Status::SampledPass, checks)
    }

    fn mu(&self, h: &NestedWeightMap) -> WeightMap {
        match self.cfg.mutation {
            None => mu(self.sr, h),
            Some(Mutation::MuSumForProduct) => {
                let n = h.inner_size();
                let pairs = (0..n).flat_map(|x| h.entries().iter().map(move |(k, w)| (x, w, k)));
                let pairs: Vec<(usize, Elem)> = pairs.map(|(x, w, k)| (x, self.sr.add(w, &k.value(self.sr, x)))).collect();
                WeightMap::from_pairs(self.sr, n, pairs).expect("indices in range")
            }
        }
    }

    fn nested(&self, n: usize, pairs: impl IntoIterator<Item = (WeightMap, Elem)>) -> NestedWeightMap {
        NestedWeightMap::from_pairs(self.sr, n, pairs).expect("inner maps share a domain")
    }

    /// Outer maps with support at most 3 over `inner`, admitted by the
    /// variant: all of them when `inner` is complete, the carrier finite and
    /// the count fits the budget, otherwise seeded draws.
    fn outer<T: Clone + Ord>(&self, inner: &[T], inner_complete: bool, tag: &str) -> (Vec<Vec<(T, Elem)>>, bool) {
        let sr = self.sr;
        let p = inner.len();
        let kmax = p.min(3);
        if let Some(elems) = sr.elements().filter(|_| inner_complete) {
            let weights: Vec<Elem> = elems.into_iter().filter(|e| !sr.is_zero(e)).collect();
            let mut count = 0u64;
            for k in 0..=kmax {
                let choose = (0..k).fold(1u64, |a, i| a.saturating_mul((p - i) as u64) / (i as u64 + 1));
                count = count.saturating_add(choose.saturating_mul(crate::space::count(weights.len(), k)));
            }
            if count <= self.cfg.budget {
                let mut out = Vec::new();
                for k in 0..=kmax {
                    for subset in combinations(p, k) {
                        for w in Odometer::new(weights.len(), k) {
                            let ws: Vec<&Elem> = w.iter().map(|i| &weights[*i]).collect();
                            if self.variant.admits(sr, ws.iter().copied()) {
                                out.push(subset.iter().zip(ws).map(|(i, v)| (inner[*i].clone(), v.clone())).collect());
                            }
                        }
                    }
                }
                return (out, true);
            }
        }
        let values: Vec<Elem> = sr.sample_set(self.cfg.seed).into_iter().filter(|v| !sr.is_zero(v)).collect();
        let mut r = rng::stream(self.cfg.seed, &format!("outer/{}/{tag}", sr.name()));
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for _ in 0..self.cfg.law_samples.saturating_mul(20) {
            if out.len() >= self.cfg.law_samples || values.is_empty() {
                break;
            }
            let k = r.gen_range(0..=kmax);
            let mut idx = sample(&mut r, p, k).into_vec();
            idx.sort_unstable();
            let mut ws: Vec<Elem> = (0..k).map(|_| values[r.gen_range(0..values.len())].clone()).collect();
            if !self.variant.admits(sr, ws.iter()) {
                let t = sr.sum(ws.iter());
                match sr.inverse(&t) {
                    Some(inv) => ws = ws.iter().map(|w| sr.mul(w, &inv)).collect(),
                    None => continue,
                }
                if !self.variant.admits(sr, ws.iter()) {
                    continue;
                }
            }
            let key: Vec<(usize, Elem)> = idx.iter().copied().zip(ws.iter().cloned()).collect();
            if seen.insert(key) {
                out.push(idx.iter().zip(ws).map(|(i, w)| (inner[*i].clone(), w)).collect());
            }
        }
        (out, false)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

type Pools = BTreeMap<usize, Pool>;

fn one_of<'a>(sizes: &[usize], p: &'a Pools) -> Vec<Space<'a>> {
    sizes.iter().map(|n| Space { factors: vec![&p[n]] }).collect()
}

fn two_of<'a>(sizes: &[usize], p: &'a Pools, q: &'a Pools) -> Vec<Space<'a>> {
    sizes.iter().flat_map(|n| sizes.iter().map(move |m| Space { factors: vec![&p[n], &q[m]] })).collect()
}

fn with_fun_of<'a>(sizes: &[usize], p: &'a Pools, funs: &'a BTreeMap<(usize, usize), Pool>) -> Vec<Space<'a>> {
    sizes.iter().flat_map(|n| sizes.iter().map(move |m| Space { factors: vec![&p[n], &funs[&(*n, *m)]] })).collect()
}

fn same(lhs: &WeightMap, rhs: &WeightMap, sr: &Semiring) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{} vs {}", lhs.render(sr), rhs.render(sr)))
    }
}

/// The laws of a symmetric monoidal (commutative) monad for `variant` over
/// `sr`, on sets of the configured sizes, plus closure of the variant under
/// `η`, `μ`, `ψ` and pushforward. Closure failures of a proper sub-monad are
/// instance-level findings and do not gate.
pub fn check_monad_laws(sr: &Semiring, variant: Variant, cfg: &CheckConfig) -> Vec<LawReport> {
    let run = Runner { sr, variant, cfg };
    let sizes = cfg.ladder();
    let mut maps = Pools::new();
    let mut nested = Pools::new();
    let mut triples = Pools::new();
    let mut points = Pools::new();
    let mut funs: BTreeMap<(usize, usize), Pool> = BTreeMap::new();
    for &n in &sizes {
        let pool = map_pool(sr, n, variant, cfg);
        let (outer, c2) = run.outer(&pool.maps, pool.exhaustive, &format!("{variant}/2/{n}"));
        let hs: Vec<NestedWeightMap> = outer.into_iter().map(|pairs| run.nested(n, pairs)).collect();
        let (outer3, c3) = run.outer(&hs, c2, &format!("{variant}/3/{n}"));
        triples.insert(n, Pool { items: outer3.into_iter().map(Item::Triple).collect(), complete: c3 });
        nested.insert(n, Pool { items: hs.into_iter().map(Item::Nested).collect(), complete: c2 });
        maps.insert(n, Pool { items: pool.maps.into_iter().map(Item::Map).collect(), complete: pool.exhaustive });
        points.insert(n, Pool { items: (0..n).map(|x| Item::Point(x, n)).collect(), complete: true });
        for &m in &sizes {
            let items = Odometer::new(m, n).map(|f| Item::Fun(f, m)).collect();
            funs.insert((n, m), Pool { items, complete: true });
        }
    }
    let one = |p| one_of(&sizes, p);
    let two = |p, q| two_of(&sizes, p, q);
    let with_fun = |p| with_fun_of(&sizes, p, &funs);
    let mut triple_maps = Vec::new();
    for a in &sizes {
        for b in &sizes {
            for c in &sizes {
                triple_maps.push(Space { factors: vec![&maps[a], &maps[b], &maps[c]] });
            }
        }
    }
    let mut psi_nat = Vec::new();
    for a in &sizes {
        for b in &sizes {
            for c in &sizes {
                for d in &sizes {
                    psi_nat.push(Space { factors: vec![&maps[a], &maps[b], &funs[&(*a, *c)], &funs[&(*b, *d)]] });
                }
            }
        }
    }
    let one_e = sr.one();
    let mut out = vec![
        run.run("monad.unit_left", &one(&maps), |it| {
            let h = it[0].map();
            same(&run.mu(&run.nested(h.size(), [(h.clone(), one_e.clone())])), h, sr)
        }),
        run.run("monad.unit_right", &one(&maps), |it| {
            let h = it[0].map();
            let n = h.size();
            let th = run.nested(n, h.entries().iter().map(|(x, v)| (eta(sr, n, *x).expect("in range"), v.clone())));
            same(&run.mu(&th), h, sr)
        }),
        run.run("monad.assoc", &one(&triples), |it| {
            let Item::Triple(t) = it[0] else { unreachable!() };
            let n = t.first().map_or(0, |(h, _)| h.inner_size());
            let lhs = run.mu(&run.nested(n, t.iter().map(|(h, w)| (run.mu(h), w.clone()))));
            let flat = t.iter().flat_map(|(h, w)| h.entries().iter().map(move |(k, v)| (k.clone(), sr.mul(w, v))));
            let rhs = run.mu(&run.nested(n, flat));
            same(&lhs, &rhs, sr)
        }),
        run.run("monad.eta_natural", &with_fun(&points), |it| {
            let ((x, n), (f, m)) = (it[0].point(), it[1].fun());
            let lhs = pushforward(sr, &eta(sr, n, x).expect("in range"), m, |i| f[i]).expect("in range");
            same(&lhs, &eta(sr, m, f[x]).expect("in range"), sr)
        }),
        run.run("monad.mu_natural", &with_fun(&nested), |it| {
            let (h, (f, m)) = (it[0].nested(), it[1].fun());
            let lhs = pushforward(sr, &run.mu(h), m, |i| f[i]).expect("in range");
            let pushed = h.entries().iter().map(|(k, w)| (pushforward(sr, k, m, |i| f[i]).expect("in range"), w.clone()));
            same(&lhs, &run.mu(&run.nested(m, pushed)), sr)
        }),
        run.run("monad.psi_natural", &psi_nat, |it| {
            let (h, k, (f, n2), (g, m2)) = (it[0].map(), it[1].map(), it[2].fun(), it[3].fun());
            let m = k.size();
            let lhs = pushforward(sr, &psi(sr, h, k), n2 * m2, |i| f[i / m] * m2 + g[i % m]).expect("in range");
            let rhs = psi(sr, &pushforward(sr, h, n2, |i| f[i]).expect("in range"), &pushforward(sr, k, m2, |i| g[i]).expect("in range"));
            same(&lhs, &rhs, sr)
        }),
        run.run("monoidal.assoc", &triple_maps, |it| {
            let (h, k, l) = (it[0].map(), it[1].map(), it[2].map());
            same(&psi(sr, &psi(sr, h, k), l), &psi(sr, h, &psi(sr, k, l)), sr)
        }),
        run.run("monoidal.unit_left", &one(&maps), |it| same(&psi(sr, &psi0(sr), it[0].map()), it[0].map(), sr)),
        run.run("monoidal.unit_right", &one(&maps), |it| same(&psi(sr, it[0].map(), &psi0(sr)), it[0].map(), sr)),
        run.run("monoidal.symmetry", &two(&maps, &maps), |it| {
            let (h, k) = (it[0].map(), it[1].map());
            let (n, m) = (h.size(), k.size());
            let lhs = pushforward(sr, &psi(sr, h, k), m * n, |i| (i % m) * n + i / m).expect("in range");
            same(&lhs, &psi(sr, k, h), sr)
        }),
        run.run("commutative.diagram1", &two(&points, &points), |it| {
            let ((x, n), (y, m)) = (it[0].point(), it[1].point());
            let lhs = psi(sr, &eta(sr, n, x).expect("in range"), &eta(sr, m, y).expect("in range"));
            same(&lhs, &eta(sr, n * m, x * m + y).expect("in range"), sr)
        }),
        run.run("commutative.diagram2", &two(&nested, &nested), |it| {
            let (h, k) = (it[0].nested(), it[1].nested());
            let (n, m) = (h.inner_size(), k.inner_size());
            let pairs = h
                .entries()
                .iter()
                .flat_map(|(a, w)| k.entries().iter().map(move |(b, v)| (psi(sr, a, b), sr.mul(w, v))));
            let lhs = run.mu(&run.nested(n * m, pairs));
            same(&lhs, &psi(sr, &run.mu(h), &run.mu(k)), sr)
        }),
    ];
    let member = |h: &WeightMap| {
        if variant.contains(sr, h) {
            Ok(())
        } else {
            Err(format!("{} is not in {variant}", h.render(sr)))
        }
    };
    let closure = [
        run.run("closure.eta", &one(&points), |it| {
            let (x, n) = it[0].point();
            member(&eta(sr, n, x).expect("in range"))
        }),
        run.run("closure.mu", &one(&nested), |it| member(&run.mu(it[0].nested()))),
        run.run("closure.psi", &two(&maps, &maps), |it| member(&psi(sr, it[0].map(), it[1].map()))),
        run.run("closure.pushforward", &with_fun(&maps), |it| {
            let (h, (f, m)) = (it[0].map(), it[1].fun());
            member(&pushforward(sr, h, m, |i| f[i]).expect("in range"))
        }),
    ];
    for r in closure {
        if variant == Variant::M {
            out.push(r);
        } else {
            let note = format!("a counterexample means {variant} is not closed over {}", sr.name());
            out.push(r.with_gate(false).with_note(note));
        }
    }
    out.into_iter().map(|r| r.with_semiring(sr.name()).with_variant(variant.as_str())).collect()
}

/// Whether every closure law held, i.e. the variant is a sub-monad on the
/// checked inputs.
pub(crate) fn closed(reports: &[LawReport]) -> bool {
    reports.iter().filter(|r| r.law.starts_with("closure.")).all(LawReport::holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find<'a>(rs: &'a [LawReport], law: &str) -> &'a LawReport {
        rs.iter().find(|r| r.law == law).unwrap()
    }

    #[test]
    fn bool_and_gf2_laws_are_exhaustive() {
        for sr in [Semiring::boolean(), Semiring::gf(2).unwrap()] {
            let rs = check_monad_laws(&sr, Variant::M, &CheckConfig::default());
            for r in &rs {
                assert_eq!(r.status, Status::ExhaustivePass, "{} {r}", sr.name());
            }
            assert_eq!(find(&rs, "monad.assoc").checks_performed, 576 + 15 + 4);
        }
    }

    #[test]
    fn nat_laws_are_sampled() {
        let rs = check_monad_laws(&Semiring::nat(), Variant::M, &CheckConfig::default());
        for r in &rs {
            assert!(r.passed(), "{r}");
        }
        assert_eq!(find(&rs, "commutative.diagram2").status, Status::SampledPass);
        assert!(find(&rs, "commutative.diagram2").checks_performed >= 500);
    }

    #[test]
    fn planted_mu_breaks_diagram2() {
        let cfg = CheckConfig { mutation: Some(Mutation::MuSumForProduct), ..CheckConfig::default() };
        let rs = check_monad_laws(&Semiring::nat(), Variant::M, &cfg);
        let d2 = find(&rs, "commutative.diagram2");
        assert_eq!(d2.status, Status::Counterexample);
        assert!(d2.is_inconsistency());
    }

    #[test]
    fn sub_monad_closure_failures_do_not_gate() {
        let rs = check_monad_laws(&Semiring::nonneg_rational(), Variant::Mm, &CheckConfig::default());
        let c = find(&rs, "closure.mu");
        assert_eq!(c.status, Status::Counterexample, "{c}");
        assert!(!c.gate);
        assert!(!closed(&rs));
        assert!(rs.iter().filter(|r| !r.law.starts_with("closure.")).all(LawReport::passed));
    }
}
