//! Law suites that classify a (semiring, variant) pair.
//!
//! [`classify_monad`] decides the functor-level properties of the monad two
//! ways, by closed-form pointwise criteria and by evaluating the defining
//! commuting diagrams. [`classify_kleisli`] decides the category-level
//! properties of its Kleisli category arrow by arrow. [`run_theorem_suite`]
//! cross-checks the two against each other over a catalog of semirings.
//!
//! All inputs come from the same seeded pools, so maps seen by the monad
//! checks reappear as rows of the arrows seen by the Kleisli checks.

mod kleisli;
mod laws;
mod monad;
mod suite;
mod witness;



pub use laws::check_monad_laws;
pub use kleisli::{classify_kleisli, KleisliClassification, KleisliFlag};
pub use monad::{classify_monad, FlagCheck, MonadClassification};
pub use suite::{default_catalog, inconsistencies, run_theorem_suite};
pub use witness::{relabel, reproducer, Reproducer};



use std::collections::BTreeSet;
use thiserror::Error;

use crate::rng;
use crate::semiring::{Semiring, DEFAULT_BUDGET};
use crate::weightmap::{enumerate, EnumMode, MapPool, Variant, WeightMap};
use crate::wrel::TensorWord;

#[derive(Debug, Error)]
pub enum TaxonomyError {
    #[error("the size ladder is empty")]
    NoSizes,
    #[error("the budget must be positive")]
    ZeroBudget,
}

/// A deliberately broken monad structure, used to show the law suite can
/// fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// `μ(H)(x) = ⊕_h H(h) ⊕ h(x)`: the product of outer and inner weight
    /// replaced by a sum.
    MuSumForProduct,
}

/// Search parameters shared by every suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    /// Set sizes the checks range over.
    pub sizes: Vec<usize>,
    /// Largest search space enumerated exhaustively.
    pub budget: u64,
    pub seed: u64,
    /// Sampled members of `V(X)` for `|X| ≥ 2` on infinite carriers.
    pub map_samples: usize,
    /// Random arrows per hom-set beyond the constant ones.
    pub arrow_samples: usize,
    /// Sampled cases per law, and sampled scalars for `V(I)`.
    pub law_samples: usize,
    pub mutation: Option<Mutation>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            sizes: vec![0, 1, 2],
            budget: DEFAULT_BUDGET,
            seed: 0,
            map_samples: 48,
            arrow_samples: 100,
            law_samples: 500,
            mutation: None,
        }
    }
}

impl CheckConfig {
    pub fn validate(&self) -> Result<(), TaxonomyError> {
        if self.sizes.is_empty() {
            return Err(TaxonomyError::NoSizes);
        }
        if self.budget == 0 {
            return Err(TaxonomyError::ZeroBudget);
        }
        Ok(())
    }

    pub fn mode(&self) -> EnumMode {
        EnumMode::Auto { budget: self.budget, seed: self.seed, samples: self.map_samples }
    }

    /// The ladder sorted and deduplicated.
    pub(crate) fn ladder(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.sizes.iter().copied().collect();
        s.into_iter().collect()
    }

    /// Sizes of the ladder plus 1, the size of `I`.
    pub(crate) fn ladder_with_unit(&self) -> Vec<usize> {
        let mut s: BTreeSet<usize> = self.sizes.iter().copied().collect();
        s.insert(1);
        s.into_iter().collect()
    }
}

/// `V(I)`: exhaustive on finite carriers, otherwise the sampled pool widened
/// with values of up to four digits until it holds `law_samples` maps.
pub(crate) fn scalar_pool(sr: &Semiring, variant: Variant, cfg: &CheckConfig) -> MapPool {
    let base = enumerate(sr, 1, variant, cfg.mode()).expect("auto mode always yields a pool");
    if base.exhaustive {
        return base;
    }
    let mut seen: BTreeSet<WeightMap> = base.maps.iter().cloned().collect();
    let mut maps = base.maps;
    let mut r = rng::stream(cfg.seed, &format!("scalars/{}", sr.name()));
    let mut attempts = cfg.law_samples.saturating_mul(4);
    while maps.len() < cfg.law_samples && attempts > 0 {
        attempts -= 1;
        let v = sr.random_elem_wide(&mut r, 1000);
        let h = WeightMap::from_pairs(sr, 1, [(0, v)]).expect("one-element map");
        if variant.contains(sr, &h) && seen.insert(h.clone()) {
            maps.push(h);
        }
    }
    MapPool { maps, exhaustive: false }
}

/// `V(X)` for `|X| = size`; size 1 uses the scalar pool.
pub(crate) fn map_pool(sr: &Semiring, size: usize, variant: Variant, cfg: &CheckConfig) -> MapPool {
    if size == 1 {
        scalar_pool(sr, variant, cfg)
    } else {
        enumerate(sr, size, variant, cfg.mode()).expect("auto mode always yields a pool")
    }
}

/// Tuples over a pool: all of them when the pool is complete and the product
/// fits the budget (or is smaller than the sample count), otherwise
/// `law_samples` seeded draws. The flag is set when the result covers the
/// whole of `V(X)^arity`.
pub(crate) fn draw<T: Clone>(pool: &[T], arity: usize, complete: bool, cfg: &CheckConfig, tag: &str) -> (Vec<Vec<T>>, bool) {
    let budget = if complete { cfg.budget } else { cfg.law_samples as u64 };
    let (cases, all) = crate::space::tuples(pool, arity, budget, cfg.law_samples, cfg.seed, tag);
    (cases, all && complete)
}

/// Objects of the Kleisli checks: one set per ladder size, largest first,
/// then `I`.
pub(crate) fn kleisli_objects(cfg: &CheckConfig) -> Vec<TensorWord> {
    let mut out: Vec<TensorWord> = cfg.ladder().iter().rev().map(|n| TensorWord::of_sizes(&[*n])).collect();
    out.push(TensorWord::unit());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_pools() {
        let cfg = CheckConfig::default();
        let b = scalar_pool(&Semiring::boolean(), Variant::M, &cfg);
        assert!(b.exhaustive);
        assert_eq!(b.maps.len(), 2);
        let q = scalar_pool(&Semiring::nonneg_rational(), Variant::Mi, &cfg);
        assert!(!q.exhaustive);
        assert_eq!(q.maps.len(), cfg.law_samples);
        let a = scalar_pool(&Semiring::nat(), Variant::Ma, &cfg);
        assert_eq!(a.maps.len(), 1);
    }

    #[test]
    fn config_validation() {
        assert!(CheckConfig::default().validate().is_ok());
        let c = CheckConfig { sizes: vec![], ..CheckConfig::default() };
        assert!(matches!(c.validate(), Err(TaxonomyError::NoSizes)));
        let c = CheckConfig { budget: 0, ..CheckConfig::default() };
        assert!(matches!(c.validate(), Err(TaxonomyError::ZeroBudget)));
        let objs = kleisli_objects(&CheckConfig::default());
        let sizes: Vec<usize> = objs.iter().map(TensorWord::cardinality).collect();
        assert_eq!(sizes, vec![2, 1, 0, 1]);
        assert!(objs[3].is_unit());
    }
}
