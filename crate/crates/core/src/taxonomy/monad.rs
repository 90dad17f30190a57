//! Functor-level classification of a sub-monad.

use serde::Serialize;

use super::{draw, map_pool, scalar_pool, CheckConfig, TaxonomyError};
use crate::report::{LawReport, Status};
use crate::semiring::Semiring;
use crate::weightmap::{antipode, psi, psi0, pushforward, total, Variant, WeightMap};

/// One property decided twice: by its closed-form criterion and by its
/// defining diagram.
#[derive(Clone, Debug, Serialize)]
pub struct FlagCheck {
    pub value: bool,
    pub pointwise: LawReport,
    pub diagram: LawReport,
    /// Counterexample iff the two verdicts differ on some input.
    pub agreement: LawReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonadClassification {
    pub variant: Variant,
    pub semiring: String,
    pub affine: FlagCheck,
    pub relevant: FlagCheck,
    pub domain_preserving: FlagCheck,
    pub mass_preserving: FlagCheck,
    pub unital_domain_preserving: FlagCheck,
    pub weakly_affine: FlagCheck,
    /// Monoid laws of `V(I)` under `ψ` and the antipode equation.
    pub scalar_group: Vec<LawReport>,
}

impl MonadClassification {
    pub fn flags(&self) -> [(&'static str, &FlagCheck); 6] {
        [
            ("affine", &self.affine),
            ("relevant", &self.relevant),
            ("domain_preserving", &self.domain_preserving),
            ("mass_preserving", &self.mass_preserving),
            ("unital_domain_preserving", &self.unital_domain_preserving),
            ("weakly_affine", &self.weakly_affine),
        ]
    }

    /// Whether pointwise and diagram verdicts agreed on every input.
    pub fn agrees(&self) -> bool {
        self.flags().iter().all(|(_, f)| f.agreement.holds())
    }

    /// Every report, tagged with semiring and variant.
    pub fn reports(&self) -> Vec<LawReport> {
        let mut out = Vec::new();
        for (_, f) in self.flags() {
            out.extend([f.pointwise.clone(), f.diagram.clone(), f.agreement.clone()]);
        }
        out.extend(self.scalar_group.iter().cloned());
        out.into_iter()
            .map(|r| r.with_semiring(&self.semiring).with_variant(self.variant.as_str()))
            .collect()
    }
}

fn pass(exhaustive: bool) -> Status {
    if exhaustive {
        Status::ExhaustivePass
    } else {
        Status::SampledPass
    }
}

fn decide<T>(
    name: &str,
    inputs: &[T],
    exhaustive: bool,
    render: impl Fn(&T) -> String,
    pointwise: impl Fn(&T) -> bool,
    diagram: impl Fn(&T) -> bool,
) -> FlagCheck {
    let (mut p_fail, mut d_fail, mut split) = (None, None, None);
    for (i, x) in inputs.iter().enumerate() {
        let (p, d) = (pointwise(x), diagram(x));
        if !p && p_fail.is_none() {
            p_fail = Some(i);
        }
        if !d && d_fail.is_none() {
            d_fail = Some(i);
        }
        if p != d {
            split = Some((i, p, d));
            break;
        }
    }
    let n = inputs.len() as u64;
    let verdict = |kind: &str, fail: Option<usize>| match fail {
        None => LawReport::new(format!("monad.{name}.{kind}"), pass(exhaustive), n),
        Some(i) => {
            LawReport::counterexample(format!("monad.{name}.{kind}"), vec![render(&inputs[i])], i as u64 + 1).with_gate(false)
        }
    };
    let agreement = match split {
        None => LawReport::new(format!("monad.{name}.agreement"), pass(exhaustive), n),
        Some((i, p, d)) => LawReport::counterexample(
            format!("monad.{name}.agreement"),
            vec![render(&inputs[i]), format!("pointwise {p}, diagram {d}")],
            i as u64 + 1,
        ),
    };
    FlagCheck { value: p_fail.is_none(), pointwise: verdict("pointwise", p_fail), diagram: verdict("diagram", d_fail), agreement }
}

fn show(sr: &Semiring, h: &WeightMap) -> String {
    format!("h={} on a {}-element set", h.render(sr), h.size())
}

fn to_unit(sr: &Semiring, h: &WeightMap) -> WeightMap {
    pushforward(sr, h, 1, |_| 0).expect("unit has one element")
}

fn scalar(sr: &Semiring, v: crate::semiring::Elem) -> WeightMap {
    WeightMap::from_pairs(sr, 1, [(0, v)]).expect("one-element map")
}

enum ScalarCase {
    One(WeightMap),
    Two(WeightMap, WeightMap),
}

/// Classifies `variant` over `sr` on sets of the configured sizes and `I`.
pub fn classify_monad(sr: &Semiring, variant: Variant, cfg: &CheckConfig) -> Result<MonadClassification, TaxonomyError> {
    cfg.validate()?;
    let mut maps = Vec::new();
    let mut exhaustive = true;
    for n in cfg.ladder_with_unit() {
        let pool = map_pool(sr, n, variant, cfg);
        exhaustive &= pool.exhaustive;
        maps.extend(pool.maps);
    }
    let scalars = scalar_pool(sr, variant, cfg);
    let one = sr.one();
    let idem = |v: &crate::semiring::Elem| sr.mul(v, v) == *v;
    let render = |h: &WeightMap| show(sr, h);

    let affine = decide(
        "affine",
        &maps,
        exhaustive,
        render,
        |h| total(sr, h) == one,
        |h| to_unit(sr, h) == psi0(sr),
    );
    let relevant = decide(
        "relevant",
        &maps,
        exhaustive,
        render,
        |h| h.support_len() <= 1 && h.values().all(idem),
        |h| {
            let n = h.size();
            psi(sr, h, h) == pushforward(sr, h, n * n, |x| x * n + x).expect("diagonal in range")
        },
    );
    let domain_preserving = decide(
        "domain_preserving",
        &maps,
        exhaustive,
        render,
        |h| {
            let t = total(sr, h);
            h.values().all(|v| sr.mul(v, &t) == *v)
        },
        |h| {
            let n = h.size();
            pushforward(sr, &psi(sr, h, h), n, |i| i / n).expect("projection in range") == *h
        },
    );
    let mass_preserving = decide(
        "mass_preserving",
        &maps,
        exhaustive,
        render,
        |h| idem(&total(sr, h)),
        |h| to_unit(sr, &psi(sr, h, h)) == to_unit(sr, h),
    );
    let unital_domain_preserving = decide(
        "unital_domain_preserving",
        &scalars.maps,
        scalars.exhaustive,
        render,
        |h| idem(&h.value(sr, 0)),
        |h| pushforward(sr, &psi(sr, h, h), 1, |i| i).expect("I ⊗ I has one element") == *h,
    );

    let (pairs, pairs_all) = draw(&scalars.maps, 2, scalars.exhaustive, cfg, &format!("scalar-pairs/{}/{variant}", sr.name()));
    let mut cases: Vec<ScalarCase> = scalars.maps.iter().cloned().map(ScalarCase::One).collect();
    cases.extend(pairs.into_iter().map(|p| ScalarCase::Two(p[0].clone(), p[1].clone())));
    let unit = psi0(sr);
    let weakly_affine = decide(
        "weakly_affine",
        &cases,
        pairs_all,
        |c| match c {
            ScalarCase::One(h) => format!("h={} has no inverse in V(I)", h.render(sr)),
            ScalarCase::Two(h, k) => format!("h={}, k={}: product leaves V(I)", h.render(sr), k.render(sr)),
        },
        |c| match c {
            ScalarCase::One(h) => {
                !h.is_empty() && sr.inverse(&h.value(sr, 0)).is_some_and(|inv| variant.contains(sr, &scalar(sr, inv)))
            }
            ScalarCase::Two(h, k) => variant.contains(sr, &scalar(sr, sr.mul(&h.value(sr, 0), &k.value(sr, 0)))),
        },
        |c| match c {
            ScalarCase::One(h) if scalars.exhaustive => scalars.maps.iter().any(|k| psi(sr, h, k) == unit),
            ScalarCase::One(h) => antipode(sr, h).is_ok_and(|k| variant.contains(sr, &k) && psi(sr, h, &k) == unit),
            ScalarCase::Two(h, k) => variant.contains(sr, &psi(sr, h, k)),
        },
    );

    let scalar_group = scalar_group_laws(sr, variant, &scalars.maps, scalars.exhaustive, cfg);
    Ok(MonadClassification {
        variant,
        semiring: sr.name().to_string(),
        affine,
        relevant,
        domain_preserving,
        mass_preserving,
        unital_domain_preserving,
        weakly_affine,
        scalar_group,
    })
}

fn scalar_group_laws(sr: &Semiring, variant: Variant, pool: &[WeightMap], exhaustive: bool, cfg: &CheckConfig) -> Vec<LawReport> {
    use crate::report::check_cases;
    let unit = psi0(sr);
    let tag = |law: &str| format!("scalar/{}/{variant}/{law}", sr.name());
    let (pairs, all2) = draw(pool, 2, exhaustive, cfg, &tag("pairs"));
    let (triples, all3) = draw(pool, 3, exhaustive, cfg, &tag("triples"));
    let r = |h: &WeightMap| h.render(sr);
    vec![
        check_cases("scalar.unit", pool, exhaustive, |h| {
            let h = *h;
            if psi(sr, &unit, h) == *h && psi(sr, h, &unit) == *h {
                Ok(())
            } else {
                Err(vec![r(h)])
            }
        }),
        check_cases("scalar.commutative", &pairs, all2, |p| {
            if psi(sr, &p[0], &p[1]) == psi(sr, &p[1], &p[0]) {
                Ok(())
            } else {
                Err(p.iter().map(r).collect())
            }
        }),
        check_cases("scalar.associative", &triples, all3, |p| {
            if psi(sr, &psi(sr, &p[0], &p[1]), &p[2]) == psi(sr, &p[0], &psi(sr, &p[1], &p[2])) {
                Ok(())
            } else {
                Err(p.iter().map(r).collect())
            }
        }),
        check_cases("scalar.antipode", pool, exhaustive, |h| match antipode(sr, h) {
            Ok(k) if psi(sr, h, &k) == unit => Ok(()),
            Ok(k) => Err(vec![r(h), format!("h·ι(h) = {}", psi(sr, h, &k).render(sr))]),
            Err(_) => Err(vec![r(h), "no antipode".into()]),
        })
        .with_gate(false),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> CheckConfig {
        CheckConfig { law_samples: 120, ..CheckConfig::default() }
    }

    #[test]
    fn bool_m_is_domain_preserving_but_neither_affine_nor_relevant() {
        let c = classify_monad(&Semiring::boolean(), Variant::M, &cfg()).unwrap();
        assert!(!c.affine.value);
        assert!(!c.relevant.value);
        assert!(c.domain_preserving.value);
        assert!(c.mass_preserving.value && c.unital_domain_preserving.value);
        assert!(!c.weakly_affine.value);
        assert!(c.agrees());
        assert_eq!(c.domain_preserving.pointwise.status, Status::ExhaustivePass);
    }

    #[test]
    fn nat_m_fails_the_preservation_flags() {
        let c = classify_monad(&Semiring::nat(), Variant::M, &cfg()).unwrap();
        assert!(!c.domain_preserving.value);
        assert!(!c.mass_preserving.value);
        assert!(!c.unital_domain_preserving.value);
        assert!(c.agrees());
        assert!(c.domain_preserving.pointwise.witness[0].contains(":2"));
    }

    #[test]
    fn normalised_and_partial_variants() {
        for sr in [Semiring::boolean(), Semiring::nat(), Semiring::nonneg_rational(), Semiring::gf(3).unwrap()] {
            let a = classify_monad(&sr, Variant::Ma, &cfg()).unwrap();
            assert!(a.affine.value, "{}", sr.name());
            let r = classify_monad(&sr, Variant::Mr, &cfg()).unwrap();
            assert!(r.relevant.value, "{}", sr.name());
            assert!(a.agrees() && r.agrees());
        }
    }

    #[test]
    fn invertible_rationals_form_a_group() {
        let c = classify_monad(&Semiring::nonneg_rational(), Variant::Mi, &CheckConfig::default()).unwrap();
        assert!(c.weakly_affine.value);
        assert!(!c.affine.value);
        assert!(c.scalar_group.iter().all(|r| r.passed() && r.checks_performed >= 200), "{:?}", c.scalar_group);
    }
}
