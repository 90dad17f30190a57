//! The five sub-monads of `M` and enumeration of their members.

use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{WeightMap, WeightMapError};
use crate::rng;
use crate::semiring::{Elem, Semiring};
use crate::space::{self, Odometer};

/// Which monad a weight map is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// All finite-support maps.
    M,
    /// Support at most one, idempotent value.
    Mr,
    /// Normalised: total weight 1.
    Ma,
    /// Image-idempotent: `t ⊙ t = t` for the total `t`.
    Mm,
    /// Absorptive: `h(x) ⊙ t = h(x)`.
    Md,
    /// Nonempty support, every value invertible.
    Mi,
}

impl Variant {
    pub const ALL: [Variant; 6] = [Variant::M, Variant::Mr, Variant::Ma, Variant::Mm, Variant::Md, Variant::Mi];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::M => "M",
            Variant::Mr => "Mr",
            Variant::Ma => "Ma",
            Variant::Mm => "Mm",
            Variant::Md => "Md",
            Variant::Mi => "Mi",
        }
    }

    /// Membership of a map given by its nonzero values.
    pub fn admits<'a>(self, sr: &Semiring, values: impl IntoIterator<Item = &'a Elem>) -> bool {
        let values: Vec<&Elem> = values.into_iter().collect();
        VariantFlags::of_values(sr, &values).get(self)
    }

    pub fn contains(self, sr: &Semiring, h: &WeightMap) -> bool {
        self.admits(sr, h.values())
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Variant::ALL
            .into_iter()
            .find(|v| v.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown variant `{s}` (expected one of M, Mr, Ma, Mm, Md, Mi)"))
    }
}

/// Sub-monad membership of one weight map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VariantFlags {
    pub in_mr: bool,
    pub in_ma: bool,
    pub in_mm: bool,
    pub in_md: bool,
    pub in_mi: bool,
}

impl VariantFlags {
    pub fn of(sr: &Semiring, h: &WeightMap) -> Self {
        let values: Vec<&Elem> = h.values().collect();
        Self::of_values(sr, &values)
    }

    /// The predicates only depend on the multiset of nonzero values, so they
    /// apply to maps at any nesting level.
    pub fn of_values(sr: &Semiring, values: &[&Elem]) -> Self {
        let t = sr.sum(values.iter().copied());
        VariantFlags {
            in_mr: values.len() <= 1 && values.iter().all(|v| sr.mul(v, v) == **v),
            in_ma: t == sr.one(),
            in_mm: sr.mul(&t, &t) == t,
            in_md: values.iter().all(|v| sr.mul(v, &t) == **v),
            in_mi: !values.is_empty() && values.iter().all(|v| sr.inverse(v).is_some()),
        }
    }

    pub fn get(&self, v: Variant) -> bool {
        match v {
            Variant::M => true,
            Variant::Mr => self.in_mr,
            Variant::Ma => self.in_ma,
            Variant::Mm => self.in_mm,
            Variant::Md => self.in_md,
            Variant::Mi => self.in_mi,
        }
    }
}

/// How to produce members of `V(X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumMode {
    /// Every map; fails on infinite carriers.
    Exhaustive,
    /// Seeded candidates, filtered, up to `samples` distinct maps.
    Sampled { seed: u64, samples: usize },
    /// Exhaustive if the carrier is finite and `|M|^|X| ≤ budget`, sampled otherwise.
    Auto { budget: u64, seed: u64, samples: usize },
}

/// Members of `V(X)` for one variant and size.
#[derive(Clone, Debug)]
pub struct MapPool {
    pub maps: Vec<WeightMap>,
    /// The pool is all of `V(X)`.
    pub exhaustive: bool,
}

fn all_maps(sr: &Semiring, size: usize, variant: Variant, elements: &[Elem]) -> Vec<WeightMap> {
    Odometer::new(elements.len(), size)
        .map(|ix| {
            WeightMap::from_pairs(sr, size, ix.into_iter().enumerate().map(|(x, i)| (x, elements[i].clone())))
                .expect("indices in range")
        })
        .filter(|h| variant.contains(sr, h))
        .collect()
}

/// Candidate order: the empty map, Dirac maps for every sampled value, then
/// random maps (each followed by its normalisation when the total is
/// invertible). Candidates outside the variant are dropped.
fn sampled_maps(sr: &Semiring, size: usize, variant: Variant, seed: u64, samples: usize) -> Vec<WeightMap> {
    let values = sr.sample_set(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut offer = |h: WeightMap, out: &mut Vec<WeightMap>| {
        if out.len() < samples && variant.contains(sr, &h) && seen.insert(h.clone()) {
            out.push(h);
        }
    };
    offer(WeightMap::empty(size), &mut out);
    for v in values.iter().filter(|v| !sr.is_zero(v)) {
        for x in 0..size {
            offer(WeightMap::from_pairs(sr, size, [(x, v.clone())]).unwrap(), &mut out);
        }
    }
    if size == 0 {
        return out;
    }
    let mut r = rng::stream(seed, &format!("maps/{}/{}", sr.name(), size));
    let attempts = samples.saturating_mul(60);
    for _ in 0..attempts {
        if out.len() >= samples {
            break;
        }
        let mut pairs: Vec<(usize, Elem)> = Vec::new();
        for x in 0..size {
            if r.gen_bool(0.6) {
                pairs.push((x, values[r.gen_range(0..values.len())].clone()));
            }
        }
        let h = WeightMap::from_pairs(sr, size, pairs).unwrap();
        let t = super::total(sr, &h);
        if let Some(inv) = sr.inverse(&t).filter(|_| t != sr.one()) {
            let scaled = h.entries().iter().map(|(x, v)| (*x, sr.mul(v, &inv)));
            let normalised = WeightMap::from_pairs(sr, size, scaled).unwrap();
            offer(h, &mut out);
            offer(normalised, &mut out);
        } else {
            offer(h, &mut out);
        }
    }
    out
}

/// Members of `V(X)` for `|X| = size`, exhaustively or sampled per `mode`.
pub fn enumerate(sr: &Semiring, size: usize, variant: Variant, mode: EnumMode) -> Result<MapPool, WeightMapError> {
    let exhaustive = match mode {
        EnumMode::Exhaustive => match sr.elements() {
            Some(_) => true,
            None if size == 0 => true,
            None => return Err(WeightMapError::InfiniteCarrier(sr.name().to_string())),
        },
        EnumMode::Sampled { .. } => size == 0,
        EnumMode::Auto { budget, .. } => {
            size == 0 || sr.cardinality().is_some_and(|n| space::count(n as usize, size) <= budget)
        }
    };
    if exhaustive {
        let elements = sr.elements().unwrap_or_else(|| vec![sr.zero()]);
        return Ok(MapPool { maps: all_maps(sr, size, variant, &elements), exhaustive: true });
    }
    let (seed, samples) = match mode {
        EnumMode::Sampled { seed, samples } | EnumMode::Auto { seed, samples, .. } => (seed, samples),
        EnumMode::Exhaustive => unreachable!(),
    };
    Ok(MapPool { maps: sampled_maps(sr, size, variant, seed, samples), exhaustive: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat_map(pairs: &[(usize, u64)], size: usize) -> WeightMap {
        let sr = Semiring::nat();
        WeightMap::from_pairs(&sr, size, pairs.iter().map(|(k, v)| (*k, Elem::nat(*v)))).unwrap()
    }

    #[test]
    fn classify_examples() {
        let b = Semiring::boolean();
        let both = WeightMap::from_pairs(&b, 2, [(0, b.one()), (1, b.one())]).unwrap();
        let f = VariantFlags::of(&b, &both);
        assert_eq!(
            (f.in_mr, f.in_ma, f.in_mm, f.in_md, f.in_mi),
            (false, true, true, true, true)
        );
        let n = Semiring::nat();
        let f = VariantFlags::of(&n, &nat_map(&[(0, 2)], 2));
        assert_eq!((f.in_mr, f.in_ma, f.in_mm, f.in_md, f.in_mi), (false, false, false, false, false));
        for sr in [Semiring::boolean(), Semiring::nat(), Semiring::nonneg_rational(), Semiring::gf(3).unwrap()] {
            let dirac = super::super::eta(&sr, 3, 1).unwrap();
            let f = VariantFlags::of(&sr, &dirac);
            assert!(f.in_mr && f.in_ma && f.in_mm && f.in_md && f.in_mi, "{}", sr.name());
        }
    }

    #[test]
    fn empty_map_membership() {
        let sr = Semiring::nonneg_rational();
        let f = VariantFlags::of(&sr, &WeightMap::empty(2));
        assert!(f.in_mr && !f.in_ma && f.in_mm && f.in_md && !f.in_mi);
    }

    #[test]
    fn enumeration_counts_for_bool() {
        let b = Semiring::boolean();
        let count = |v| enumerate(&b, 2, v, EnumMode::Exhaustive).unwrap().maps.len();
        assert_eq!(count(Variant::M), 4);
        assert_eq!(count(Variant::Mr), 3);
        assert_eq!(count(Variant::Ma), 3);
        let mr = enumerate(&b, 2, Variant::Mr, EnumMode::Exhaustive).unwrap().maps;
        assert!(mr.iter().all(|h| h.support_len() <= 1));
        assert_eq!(enumerate(&Semiring::gf(3).unwrap(), 2, Variant::M, EnumMode::Exhaustive).unwrap().maps.len(), 9);
    }

    #[test]
    fn exhaustive_on_infinite_carrier_is_an_error() {
        let r = enumerate(&Semiring::nat(), 2, Variant::M, EnumMode::Exhaustive);
        assert_eq!(r.unwrap_err(), WeightMapError::InfiniteCarrier("nat".into()));
        let r = enumerate(&Semiring::nat(), 0, Variant::M, EnumMode::Exhaustive).unwrap();
        assert_eq!(r.maps, vec![WeightMap::empty(0)]);
    }

    #[test]
    fn sampled_pools_are_filtered_deterministic_and_distinct() {
        let sr = Semiring::nonneg_rational();
        let mode = EnumMode::Sampled { seed: 3, samples: 40 };
        for v in Variant::ALL {
            let a = enumerate(&sr, 2, v, mode).unwrap();
            let b = enumerate(&sr, 2, v, mode).unwrap();
            assert_eq!(a.maps, b.maps);
            assert!(!a.exhaustive);
            assert!(a.maps.iter().all(|h| v.contains(&sr, h)));
            let set: BTreeSet<_> = a.maps.iter().collect();
            assert_eq!(set.len(), a.maps.len());
        }
        // Normalised candidates make the affine pool nontrivial.
        let ma = enumerate(&sr, 2, Variant::Ma, mode).unwrap();
        assert!(ma.maps.iter().any(|h| h.support_len() == 2));
    }

    #[test]
    fn auto_mode_respects_budget() {
        let g = Semiring::gf(3).unwrap();
        assert!(enumerate(&g, 2, Variant::M, EnumMode::Auto { budget: 9, seed: 0, samples: 5 }).unwrap().exhaustive);
        let p = enumerate(&g, 2, Variant::M, EnumMode::Auto { budget: 8, seed: 0, samples: 5 }).unwrap();
        assert!(!p.exhaustive);
        assert!(p.maps.len() <= 5);
    }

    #[test]
    fn lattice_semirings_make_md_total() {
        let b = Semiring::boolean();
        for h in enumerate(&b, 3, Variant::M, EnumMode::Exhaustive).unwrap().maps {
            assert!(VariantFlags::of(&b, &h).in_md);
        }
    }

    #[test]
    fn variant_parse() {
        assert_eq!("mi".parse::<Variant>().unwrap(), Variant::Mi);
        assert!("Mx".parse::<Variant>().is_err());
    }
}
