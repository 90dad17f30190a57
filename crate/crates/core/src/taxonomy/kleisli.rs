//! Category-level classification of the Kleisli category of a sub-monad.

use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

use super::witness::relabel;
use super::{draw, kleisli_objects, map_pool, CheckConfig, TaxonomyError};
use crate::report::{check_cases, merge, LawReport, Status};
use crate::semiring::Semiring;
use crate::weightmap::{MapPool, Variant, WeightMap};
use crate::wrel::{
    self, arrows_from_pool, check_gs_axioms, compose, copy, del, dom, dom_closed_form, dom_via_kleisli_path,
    hom_scalar_mul, mass, tensor, ArrowFlags, TensorWord, WRel,
};

/// A category-level property, with the violating arrow when it fails.
#[derive(Clone, Debug, Serialize)]
pub struct KleisliFlag {
    pub value: bool,
    pub report: LawReport,
    #[serde(skip)]
    pub witness: Option<WRel>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KleisliClassification {
    pub variant: Variant,
    pub semiring: String,
    pub gsm_axioms: KleisliFlag,
    pub markov: KleisliFlag,
    pub restriction: KleisliFlag,
    pub domain_category: KleisliFlag,
    pub mass_category: KleisliFlag,
    pub weakly_markov: KleisliFlag,
    /// Cross-checks of the `dom` construction on every arrow.
    pub checks: Vec<LawReport>,
    pub arrows_checked: u64,
    /// Every hom-set was enumerated completely.
    pub exhaustive: bool,
}

impl KleisliClassification {
    pub fn flags(&self) -> [(&'static str, &KleisliFlag); 6] {
        [
            ("gsm_axioms", &self.gsm_axioms),
            ("markov", &self.markov),
            ("restriction", &self.restriction),
            ("domain_category", &self.domain_category),
            ("mass_category", &self.mass_category),
            ("weakly_markov", &self.weakly_markov),
        ]
    }

    pub fn reports(&self) -> Vec<LawReport> {
        self.flags()
            .iter()
            .map(|(_, f)| f.report.clone())
            .chain(self.checks.iter().cloned())
            .map(|r| r.with_semiring(&self.semiring).with_variant(self.variant.as_str()))
            .collect()
    }
}

pub(crate) struct Hom {
    pub dom: TensorWord,
    pub cod: TensorWord,
    pub arrows: Vec<WRel>,
    pub complete: bool,
}

/// Every hom-set between the configured objects.
pub(crate) fn hom_sets(sr: &Semiring, variant: Variant, cfg: &CheckConfig) -> Vec<Hom> {
    let objects = kleisli_objects(cfg);
    let mut pools: BTreeMap<usize, MapPool> = BTreeMap::new();
    for o in &objects {
        let n = o.cardinality();
        pools.entry(n).or_insert_with(|| map_pool(sr, n, variant, cfg));
    }
    let mut out = Vec::new();
    for x in &objects {
        for y in &objects {
            let pool = &pools[&y.cardinality()];
            let p = arrows_from_pool(x, y, pool, cfg.budget, cfg.seed, cfg.arrow_samples);
            out.push(Hom { dom: x.clone(), cod: y.clone(), arrows: p.arrows, complete: p.exhaustive });
        }
    }
    out
}

fn pass(exhaustive: bool) -> Status {
    if exhaustive {
        Status::ExhaustivePass
    } else {
        Status::SampledPass
    }
}

/// Keeps only the first row on which `bad` fails, when empty rows are
/// allowed in the variant.
fn shrink(sr: &Semiring, variant: Variant, f: &WRel, bad: impl Fn(&WRel) -> bool) -> WRel {
    let n = f.cod_word().cardinality();
    if !variant.contains(sr, &WeightMap::empty(n)) || f.rows().len() <= 1 {
        return f.clone();
    }
    for x in 0..f.rows().len() {
        let rows = (0..f.rows().len())
            .map(|i| if i == x { f.row(i).clone() } else { WeightMap::empty(n) })
            .collect();
        let g = WRel::from_rows(f.dom_word().clone(), f.cod_word().clone(), rows).expect("same shape");
        if bad(&g) {
            return g;
        }
    }
    f.clone()
}

fn flag_from_scan(
    sr: &Semiring,
    variant: Variant,
    law: &str,
    arrows: &[(&WRel, ArrowFlags)],
    exhaustive: bool,
    holds: impl Fn(&ArrowFlags) -> bool,
    explain: impl Fn(&WRel) -> Vec<String>,
) -> KleisliFlag {
    let n = arrows.len() as u64;
    match arrows.iter().position(|(_, fl)| !holds(fl)) {
        None => KleisliFlag { value: true, report: LawReport::new(law, pass(exhaustive), n), witness: None },
        Some(i) => {
            let w = shrink(sr, variant, arrows[i].0, |g| !holds(&wrel::classify(sr, g)));
            let g = relabel(&w);
            let mut lines = vec![format!("f = {} : {} → {}", g.render(sr), g.dom_word(), g.cod_word())];
            lines.extend(explain(&g));
            KleisliFlag {
                value: false,
                report: LawReport::counterexample(law, lines, i as u64 + 1).with_gate(false),
                witness: Some(w),
            }
        }
    }
}

fn differ(sr: &Semiring, lhs: &WRel, rhs: &WRel) -> Vec<String> {
    lhs.first_difference(sr, rhs).into_iter().collect()
}

/// Classifies the Kleisli category of `variant` over `sr`, on the objects
/// `[n]` for each configured size and `I`.
pub fn classify_kleisli(sr: &Semiring, variant: Variant, cfg: &CheckConfig) -> Result<KleisliClassification, TaxonomyError> {
    cfg.validate()?;
    Ok(classify_on(sr, variant, cfg, &hom_sets(sr, variant, cfg)))
}

pub(crate) fn classify_on(sr: &Semiring, variant: Variant, cfg: &CheckConfig, homs: &[Hom]) -> KleisliClassification {
    let exhaustive = homs.iter().all(|h| h.complete);
    let all: Vec<&WRel> = homs.iter().flat_map(|h| h.arrows.iter()).collect();
    let flags: Vec<ArrowFlags> = all.par_iter().map(|f| wrel::classify(sr, f)).collect();
    let scanned: Vec<(&WRel, ArrowFlags)> = all.iter().copied().zip(flags).collect();

    let gs = check_gs_axioms(sr, 4);
    let gs_report = merge("kleisli.gsm_axioms", &gs);
    let gsm_axioms = KleisliFlag { value: gs_report.holds(), report: gs_report, witness: None };
    let markov = flag_from_scan(sr, variant, "kleisli.markov", &scanned, exhaustive, |f| f.total, |g| {
        vec![format!("f ; ! = {}", mass(sr, g).render(sr)), format!("! = {}", del(sr, g.dom_word()).render(sr))]
    });
    let restriction = flag_from_scan(sr, variant, "kleisli.restriction", &scanned, exhaustive, |f| f.copyable, |g| {
        let lhs = compose(sr, g, &copy(sr, g.cod_word())).expect("boundaries match");
        let rhs = compose(sr, &copy(sr, g.dom_word()), &tensor(sr, g, g)).expect("boundaries match");
        differ(sr, &lhs, &rhs)
    });
    let domain_category = flag_from_scan(sr, variant, "kleisli.domain_category", &scanned, exhaustive, |f| f.domain_eq, |g| {
        differ(sr, &compose(sr, &dom(sr, g), g).expect("boundaries match"), g)
    });
    let mass_category = flag_from_scan(sr, variant, "kleisli.mass_category", &scanned, exhaustive, |f| f.mass_eq, |g| {
        let m = mass(sr, g);
        differ(sr, &compose(sr, &dom(sr, g), &m).expect("boundaries match"), &m)
    });
    let weakly_markov = weakly_markov(sr, variant, cfg, homs);

    let checks = vec![
        check_cases("kleisli.dom_closed_form", all.iter(), exhaustive, |f| {
            let (lhs, rhs) = (dom(sr, f), dom_closed_form(sr, f));
            if lhs == rhs {
                Ok(())
            } else {
                Err(vec![f.render(sr), differ(sr, &lhs, &rhs).join("")])
            }
        }),
        check_cases("kleisli.dom_kleisli_path", all.iter(), exhaustive, |f| {
            let (lhs, rhs) = (dom_via_kleisli_path(sr, f), compose(sr, &dom(sr, f), f).expect("boundaries match"));
            if lhs == rhs {
                Ok(())
            } else {
                Err(vec![f.render(sr), differ(sr, &lhs, &rhs).join("")])
            }
        }),
        check_cases("kleisli.domain_eq_implies_mass_eq", scanned.iter(), exhaustive, |(f, fl)| {
            if !fl.domain_eq || fl.mass_eq {
                Ok(())
            } else {
                Err(vec![f.render(sr)])
            }
        }),
    ];
    KleisliClassification {
        variant,
        semiring: sr.name().to_string(),
        gsm_axioms,
        markov,
        restriction,
        domain_category,
        mass_category,
        weakly_markov,
        checks,
        arrows_checked: all.len() as u64,
        exhaustive,
    }
}

/// `hom(Y, I)` is a group under `f · g = ∇ ; (f ⊗ g)` with unit `!`:
/// products stay in the variant and every arrow has an inverse. Inverses are
/// searched in complete hom-sets and otherwise computed row by row from
/// reciprocals, which is exact because an inverse is unique when it exists.
fn weakly_markov(sr: &Semiring, variant: Variant, cfg: &CheckConfig, homs: &[Hom]) -> KleisliFlag {
    let mut checks = 0u64;
    let mut complete = true;
    for h in homs.iter().filter(|h| h.cod.is_unit()) {
        complete &= h.complete;
        let unit = del(sr, &h.dom);
        for f in &h.arrows {
            checks += 1;
            let inverse = if h.complete {
                h.arrows.iter().find(|g| hom_scalar_mul(sr, f, g).expect("same hom-set") == unit).cloned()
            } else {
                closed_form_inverse(sr, variant, f).filter(|g| hom_scalar_mul(sr, f, g).expect("same hom-set") == unit)
            };
            if inverse.is_none() {
                let g = relabel(f);
                let lines = vec![format!("f = {} : {} → I", g.render(sr), g.dom_word()), "f has no inverse in hom(Y, I)".into()];
                return KleisliFlag {
                    value: false,
                    report: LawReport::counterexample("kleisli.weakly_markov", lines, checks).with_gate(false),
                    witness: Some(f.clone()),
                };
            }
        }
        let tag = format!("weakly-markov/{}/{variant}/{}", sr.name(), h.dom);
        let (pairs, all) = draw(&h.arrows, 2, h.complete, cfg, &tag);
        complete &= all;
        for p in &pairs {
            checks += 1;
            let prod = hom_scalar_mul(sr, &p[0], &p[1]).expect("same hom-set");
            if !prod.rows().iter().all(|r| variant.contains(sr, r)) {
                let lines = vec![
                    format!("f = {}", relabel(&p[0]).render(sr)),
                    format!("g = {}", relabel(&p[1]).render(sr)),
                    format!("f · g = {} leaves the variant", relabel(&prod).render(sr)),
                ];
                return KleisliFlag {
                    value: false,
                    report: LawReport::counterexample("kleisli.weakly_markov", lines, checks).with_gate(false),
                    witness: Some(p[0].clone()),
                };
            }
        }
    }
    KleisliFlag { value: true, report: LawReport::new("kleisli.weakly_markov", pass(complete), checks), witness: None }
}

fn closed_form_inverse(sr: &Semiring, variant: Variant, f: &WRel) -> Option<WRel> {
    let rows = f
        .rows()
        .iter()
        .map(|r| {
            let inv = sr.inverse(&r.value(sr, 0))?;
            let m = WeightMap::from_pairs(sr, 1, [(0, inv)]).ok()?;
            variant.contains(sr, &m).then_some(m)
        })
        .collect::<Option<Vec<_>>>()?;
    WRel::from_rows(f.dom_word().clone(), f.cod_word().clone(), rows).ok()
}
