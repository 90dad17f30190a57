//! Arrows of the Kleisli category of a sub-monad: every row drawn from `V(Y)`.

use rand::Rng;
use std::collections::BTreeSet;

use super::{TensorWord, WRel};
use crate::rng;
use crate::semiring::Semiring;
use crate::space::{self, Odometer};
use crate::weightmap::{enumerate, EnumMode, MapPool, Variant, WeightMapError};

#[derive(Clone, Debug)]
pub struct ArrowPool {
    pub arrows: Vec<WRel>,
    /// The pool is the whole hom-set.
    pub exhaustive: bool,
}

/// Arrows `dom → cod` with rows from `rows`. The hom-set is enumerated when
/// the row pool is complete and `|rows|^|dom|` fits the budget. Otherwise
/// every constant arrow is included (so each pool map occurs as a row),
/// followed by up to `samples` distinct seeded row combinations.
pub fn arrows_from_pool(
    dom: &TensorWord,
    cod: &TensorWord,
    rows: &MapPool,
    budget: u64,
    seed: u64,
    samples: usize,
) -> ArrowPool {
    let m = dom.cardinality();
    let k = rows.maps.len();
    let build = |ix: &[usize]| {
        let r = ix.iter().map(|i| rows.maps[*i].clone()).collect();
        WRel::from_rows(dom.clone(), cod.clone(), r).expect("rows sized by construction")
    };
    let full = space::count(k, m);
    if (rows.exhaustive && full <= budget) || m <= 1 || k == 0 {
        let arrows = Odometer::new(k, m).map(|ix| build(&ix)).collect();
        return ArrowPool { arrows, exhaustive: rows.exhaustive || m == 0 };
    }
    let mut seen = BTreeSet::new();
    let mut arrows = Vec::new();
    for i in 0..k {
        let f = build(&vec![i; m]);
        seen.insert(f.clone());
        arrows.push(f);
    }
    let mut r = rng::stream(seed, &format!("arrows/{dom}/{cod}/{k}"));
    let target = arrows.len() + (samples as u64).min(full.saturating_sub(k as u64)) as usize;
    let mut attempts = samples.saturating_mul(20);
    while arrows.len() < target && attempts > 0 {
        attempts -= 1;
        let ix: Vec<usize> = (0..m).map(|_| r.gen_range(0..k)).collect();
        let f = build(&ix);
        if seen.insert(f.clone()) {
            arrows.push(f);
        }
    }
    ArrowPool { arrows, exhaustive: false }
}

/// Arrows `dom → cod` whose rows lie in the variant, with the row pool
/// produced by [`enumerate`] under `mode`.
pub fn enumerate_arrows(
    sr: &Semiring,
    dom: &TensorWord,
    cod: &TensorWord,
    variant: Variant,
    mode: EnumMode,
    samples: usize,
) -> Result<ArrowPool, WeightMapError> {
    let pool = enumerate(sr, cod.cardinality(), variant, mode)?;
    let (budget, seed) = match mode {
        EnumMode::Exhaustive => (u64::MAX, 0),
        EnumMode::Sampled { seed, .. } => (0, seed),
        EnumMode::Auto { budget, seed, .. } => (budget, seed),
    };
    Ok(arrows_from_pool(dom, cod, &pool, budget, seed, samples))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bool_hom_sets_are_complete() {
        let b = Semiring::boolean();
        let w = TensorWord::of_sizes(&[2]);
        let p = enumerate_arrows(&b, &w, &w, Variant::M, EnumMode::Exhaustive, 100).unwrap();
        assert!(p.exhaustive);
        assert_eq!(p.arrows.len(), 16);
        let p = enumerate_arrows(&b, &w, &w, Variant::Ma, EnumMode::Exhaustive, 100).unwrap();
        assert_eq!(p.arrows.len(), 9);
        let z = TensorWord::of_sizes(&[0]);
        let p = enumerate_arrows(&b, &z, &w, Variant::M, EnumMode::Exhaustive, 100).unwrap();
        assert_eq!(p.arrows.len(), 1);
        let p = enumerate_arrows(&b, &w, &z, Variant::Ma, EnumMode::Exhaustive, 100).unwrap();
        assert!(p.arrows.is_empty());
    }

    #[test]
    fn sampled_arrows_contain_every_constant() {
        let n = Semiring::nat();
        let w = TensorWord::of_sizes(&[2]);
        let mode = EnumMode::Auto { budget: 1000, seed: 1, samples: 10 };
        let p = enumerate_arrows(&n, &w, &w, Variant::M, mode, 30).unwrap();
        assert!(!p.exhaustive);
        assert_eq!(p.arrows.len(), 40);
        assert!(p.arrows[..10].iter().all(|f| f.row(0) == f.row(1)));
        let again = enumerate_arrows(&n, &w, &w, Variant::M, mode, 30).unwrap();
        assert_eq!(p.arrows, again.arrows);
    }
}
