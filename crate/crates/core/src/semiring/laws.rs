//! Semiring axiom checks and the property flags that decide which sub-monads
//! coincide with the full weighted monad.

use serde::Serialize;

use super::{Elem, Semiring};
use crate::report::{check_cases, merge, LawReport};
use crate::space;

/// Seed used for the element sample of infinite carriers.
const SAMPLE_SEED: u64 = 0;
/// Number of random tuples drawn when a product space exceeds the budget.
const SAMPLED_TUPLES: usize = 4096;

fn witness(sr: &Semiring, xs: &[Elem]) -> Vec<String> {
    xs.iter().map(|x| sr.label(x)).collect()
}

fn law<F>(sr: &Semiring, name: &str, arity: usize, budget: u64, holds: F) -> LawReport
where
    F: Fn(&[Elem]) -> bool,
{
    let pool = sr.sample_set(SAMPLE_SEED);
    let (cases, covered) = space::tuples(&pool, arity, budget, SAMPLED_TUPLES, SAMPLE_SEED, name);
    let exhaustive = covered && sr.is_finite();
    let mut report = check_cases(name, cases, exhaustive, |xs| {
        if holds(xs) {
            Ok(())
        } else {
            Err(witness(sr, xs))
        }
    });
    if !sr.is_finite() {
        report = report.with_note(format!("sampled carrier of {} elements", pool.len()));
    }
    report.with_semiring(sr.name())
}

/// One report per semiring axiom.
pub fn check_semiring_laws(sr: &Semiring, budget: u64) -> Vec<LawReport> {
    assert!(budget > 0, "budget must be positive");
    let (z, o) = (sr.zero(), sr.one());
    let add = |a: &Elem, b: &Elem| sr.add(a, b);
    let mul = |a: &Elem, b: &Elem| sr.mul(a, b);
    vec![
        law(sr, "semiring.add_assoc", 3, budget, |x| {
            add(&add(&x[0], &x[1]), &x[2]) == add(&x[0], &add(&x[1], &x[2]))
        }),
        law(sr, "semiring.add_comm", 2, budget, |x| add(&x[0], &x[1]) == add(&x[1], &x[0])),
        law(sr, "semiring.add_unit", 1, budget, |x| add(&z, &x[0]) == x[0] && add(&x[0], &z) == x[0]),
        law(sr, "semiring.mul_assoc", 3, budget, |x| {
            mul(&mul(&x[0], &x[1]), &x[2]) == mul(&x[0], &mul(&x[1], &x[2]))
        }),
        law(sr, "semiring.mul_unit", 1, budget, |x| mul(&o, &x[0]) == x[0] && mul(&x[0], &o) == x[0]),
        law(sr, "semiring.distrib_left", 3, budget, |x| {
            mul(&x[0], &add(&x[1], &x[2])) == add(&mul(&x[0], &x[1]), &mul(&x[0], &x[2]))
        }),
        law(sr, "semiring.distrib_right", 3, budget, |x| {
            mul(&add(&x[0], &x[1]), &x[2]) == add(&mul(&x[0], &x[2]), &mul(&x[1], &x[2]))
        }),
        law(sr, "semiring.annihilation", 1, budget, |x| mul(&z, &x[0]) == z && mul(&x[0], &z) == z),
    ]
}

/// Property flags of a semiring, each backed by its law reports.
#[derive(Clone, Debug, Serialize)]
pub struct SemiringClassification {
    pub semiring: String,
    /// `a ⊙ a = a`.
    pub mult_idempotent: bool,
    /// `a ⊙ (a ⊕ b) = a`.
    pub absorptive: bool,
    /// Both operations idempotent and both absorption laws.
    pub distributive_lattice: bool,
    /// Every nonzero element has a ⊙-inverse.
    pub semifield: bool,
    /// `a ⊙ b = b ⊙ a`; needed for the weighted monad to be commutative.
    pub commutative: bool,
    pub reports: Vec<LawReport>,
}

pub fn classify_semiring(sr: &Semiring, budget: u64) -> SemiringClassification {
    assert!(budget > 0, "budget must be positive");
    let add = |a: &Elem, b: &Elem| sr.add(a, b);
    let mul = |a: &Elem, b: &Elem| sr.mul(a, b);
    let mul_idem = law(sr, "semiring.mul_idempotent", 1, budget, |x| mul(&x[0], &x[0]) == x[0]);
    let add_idem = law(sr, "semiring.add_idempotent", 1, budget, |x| add(&x[0], &x[0]) == x[0]);
    let absorb = law(sr, "semiring.absorptive", 2, budget, |x| mul(&x[0], &add(&x[0], &x[1])) == x[0]);
    let absorb_dual = law(sr, "semiring.absorptive_dual", 2, budget, |x| {
        add(&x[0], &mul(&x[0], &x[1])) == x[0]
    });
    let lattice = merge(
        "semiring.distributive_lattice",
        &[mul_idem.clone(), add_idem.clone(), absorb.clone(), absorb_dual.clone()],
    )
    .with_semiring(sr.name());
    let semifield = law(sr, "semiring.semifield", 1, budget, |x| {
        sr.is_zero(&x[0])
            || sr
                .inverse(&x[0])
                .is_some_and(|m| mul(&x[0], &m) == sr.one() && mul(&m, &x[0]) == sr.one())
    });
    let comm = law(sr, "semiring.mul_comm", 2, budget, |x| mul(&x[0], &x[1]) == mul(&x[1], &x[0]));
    SemiringClassification {
        semiring: sr.name().to_string(),
        mult_idempotent: mul_idem.holds(),
        absorptive: absorb.holds(),
        distributive_lattice: lattice.holds(),
        semifield: semifield.holds(),
        commutative: comm.holds(),
        reports: vec![mul_idem, add_idem, absorb, absorb_dual, lattice, semifield, comm],
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Table, TableDocument};
    use super::*;
    use crate::report::Status;
    use crate::semiring::DEFAULT_BUDGET;

    fn table(times: [[&str; 2]; 2]) -> Semiring {
        let t = |m: [[&str; 2]; 2]| m.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
        let doc = TableDocument {
            name: Some("t".into()),
            elements: vec!["0".into(), "1".into()],
            plus: t([["0", "1"], ["1", "1"]]),
            times: t(times),
            zero: "0".into(),
            one: "1".into(),
        };
        Semiring::from_table(Table::from_document(doc).unwrap())
    }

    #[test]
    fn bool_laws_hold_exhaustively() {
        let reports = check_semiring_laws(&Semiring::boolean(), DEFAULT_BUDGET);
        assert_eq!(reports.len(), 8);
        assert!(reports.iter().all(|r| r.status == Status::ExhaustivePass), "{reports:?}");
    }

    #[test]
    fn nat_laws_are_sampled() {
        let reports = check_semiring_laws(&Semiring::nat(), DEFAULT_BUDGET);
        assert!(reports.iter().all(|r| r.status == Status::SampledPass), "{reports:?}");
    }

    #[test]
    fn small_budget_downgrades_to_sampled() {
        let reports = check_semiring_laws(&Semiring::gf(3).unwrap(), 10);
        let assoc = reports.iter().find(|r| r.law == "semiring.add_assoc").unwrap();
        assert_eq!(assoc.status, Status::SampledPass);
        let unit = reports.iter().find(|r| r.law == "semiring.add_unit").unwrap();
        assert_eq!(unit.status, Status::ExhaustivePass);
    }

    #[test]
    fn planted_unit_violation_is_witnessed() {
        // 1 ⊙ 1 = 0 breaks the multiplicative unit law at a = 1.
        let sr = table([["0", "0"], ["0", "0"]]);
        let reports = check_semiring_laws(&sr, DEFAULT_BUDGET);
        let unit = reports.iter().find(|r| r.law == "semiring.mul_unit").unwrap();
        assert_eq!(unit.status, Status::Counterexample);
        assert_eq!(unit.witness, vec!["1"]);
        let a = sr.parse_elem(&unit.witness[0]).unwrap();
        assert_ne!(sr.mul(&sr.one(), &a), a);
    }

    #[test]
    fn classification_examples() {
        let b = classify_semiring(&Semiring::boolean(), DEFAULT_BUDGET);
        assert!(b.mult_idempotent && b.absorptive && b.distributive_lattice && b.semifield);
        let n = classify_semiring(&Semiring::nat(), DEFAULT_BUDGET);
        assert!(!n.mult_idempotent && !n.absorptive && !n.distributive_lattice && !n.semifield);
        let w = n.reports.iter().find(|r| r.law == "semiring.mul_idempotent").unwrap();
        assert_eq!(w.witness, vec!["2"]);
        let f = classify_semiring(&Semiring::fuzzy_max_min(), DEFAULT_BUDGET);
        assert!(f.distributive_lattice && !f.semifield);
        let q = classify_semiring(&Semiring::nonneg_rational(), DEFAULT_BUDGET);
        assert!(q.semifield && !q.mult_idempotent);
        let g = classify_semiring(&Semiring::gf(5).unwrap(), DEFAULT_BUDGET);
        assert!(g.semifield && !g.distributive_lattice);
    }

    #[test]
    fn lattice_implies_idempotent_and_absorptive() {
        for sr in [
            Semiring::boolean(),
            Semiring::nat(),
            Semiring::fuzzy_max_min(),
            Semiring::fuzzy_max_times(),
            Semiring::gf(2).unwrap(),
        ] {
            let c = classify_semiring(&sr, DEFAULT_BUDGET);
            if c.distributive_lattice {
                assert!(c.mult_idempotent && c.absorptive, "{}", sr.name());
            }
        }
    }

    #[test]
    fn table_bool_classifies_like_builtin() {
        let t = table([["0", "0"], ["0", "1"]]);
        let a = classify_semiring(&t, DEFAULT_BUDGET);
        let b = classify_semiring(&Semiring::boolean(), DEFAULT_BUDGET);
        assert_eq!(
            (a.mult_idempotent, a.absorptive, a.distributive_lattice, a.semifield),
            (b.mult_idempotent, b.absorptive, b.distributive_lattice, b.semifield)
        );
    }
}
