//! Finite-support weight maps and the semiring-weighted monad.
//!
//! `M(X)` is the set of maps `h: X → M` with finite support. On finite sets
//! a [`WeightMap`] stores only the nonzero values, keyed by element index, so
//! equality of canonical forms is equality of maps. The monad structure is
//!
//! * `T(f)(h)(y) = ⊕_{f(x) = y} h(x)` ([`pushforward`]),
//! * `η(x) = {x: 1}` ([`eta`]),
//! * `μ(H)(x) = ⊕_h H(h) ⊙ h(x)` ([`mu`]),
//! * `ψ(h, k)(x, y) = h(x) ⊙ k(y)`, `ψ₀ = {•: 1}` ([`psi`], [`psi0`]).
//!
//! Elements of a product set are flattened to mixed-radix indices, so the
//! pair `(x, y)` of `X × Y` is `x·|Y| + y`; lexicographic tuple order and
//! numeric order coincide.

mod variant;

pub use variant::{enumerate, EnumMode, MapPool, Variant, VariantFlags};

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

use crate::semiring::{Elem, Semiring};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightMapError {
    #[error("element {key} is outside a domain of size {size}")]
    OutOfDomain { key: usize, size: usize },
    #[error("nested map mixes inner domains of sizes {0} and {1}")]
    MixedDomains(usize, usize),
    #[error("antipode needs a single invertible value on the unit object, got {0}")]
    NotInvertible(String),
    #[error("exhaustive enumeration requested over the infinite carrier {0}")]
    InfiniteCarrier(String),
    #[error("finite set `{name}`: {reason}")]
    BadSet { name: String, reason: String },
}

/// A named finite set, optionally with element labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "FinSetDoc", into = "FinSetDoc")]
pub struct FinSet {
    name: String,
    size: usize,
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FinSetDoc {
    name: String,
    size: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    labels: Option<Vec<String>>,
}

impl TryFrom<FinSetDoc> for FinSet {
    type Error = WeightMapError;

    fn try_from(d: FinSetDoc) -> Result<Self, Self::Error> {
        match d.labels {
            Some(l) => FinSet::labelled(d.name, l).and_then(|s| {
                if s.size == d.size {
                    Ok(s)
                } else {
                    Err(WeightMapError::BadSet {
                        name: s.name,
                        reason: format!("{} labels for size {}", s.size, d.size),
                    })
                }
            }),
            None => Ok(FinSet::new(d.name, d.size)),
        }
    }
}

impl From<FinSet> for FinSetDoc {
    fn from(s: FinSet) -> Self {
        FinSetDoc { name: s.name, size: s.size, labels: s.labels }
    }
}

impl FinSet {
    pub fn new(name: impl Into<String>, size: usize) -> Self {
        FinSet { name: name.into(), size, labels: None }
    }

    pub fn labelled(name: impl Into<String>, labels: Vec<String>) -> Result<Self, WeightMapError> {
        let name = name.into();
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(WeightMapError::BadSet { name, reason: "duplicate labels".into() });
        }
        Ok(FinSet { name, size: labels.len(), labels: Some(labels) })
    }

    /// A set named after its size, used for generated objects.
    pub fn sized(size: usize) -> Self {
        FinSet::new(format!("S{size}"), size)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|x| x == label),
            None => label.parse::<usize>().ok().filter(|i| *i < self.size),
        }
    }
}

/// An element of `M(X)` for a finite `X` of the given size.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightMap {
    size: usize,
    entries: BTreeMap<usize, Elem>,
}

pub(crate) fn accumulate<K: Ord>(sr: &Semiring, map: &mut BTreeMap<K, Elem>, key: K, v: Elem) {
    match map.get_mut(&key) {
        Some(acc) => *acc = sr.add(acc, &v),
        None => {
            map.insert(key, v);
        }
    }
}

pub(crate) fn prune<K: Ord>(sr: &Semiring, map: &mut BTreeMap<K, Elem>) {
    map.retain(|_, v| !sr.is_zero(v));
}

/// `⊕_k outer(k) ⊙ k(x)` over any nesting level: the shape of μ.
pub fn flatten<'a, K, I>(sr: &Semiring, outer: I) -> BTreeMap<K, Elem>
where
    K: Ord + Clone + 'a,
    I: IntoIterator<Item = (&'a BTreeMap<K, Elem>, &'a Elem)>,
{
    let mut acc = BTreeMap::new();
    for (inner, w) in outer {
        for (k, v) in inner {
            accumulate(sr, &mut acc, k.clone(), sr.mul(w, v));
        }
    }
    prune(sr, &mut acc);
    acc
}

/// Pushforward along an arbitrary key map: the functor action on any level.
pub fn push_keys<K, K2, F>(sr: &Semiring, map: &BTreeMap<K, Elem>, f: F) -> BTreeMap<K2, Elem>
where
    K2: Ord,
    F: Fn(&K) -> K2,
{
    let mut acc = BTreeMap::new();
    for (k, v) in map {
        accumulate(sr, &mut acc, f(k), v.clone());
    }
    prune(sr, &mut acc);
    acc
}

/// `ψ` on arbitrary key types: `(a, b) ↦ A(a) ⊙ B(b)`.
pub fn pair_keys<K1, K2>(
    sr: &Semiring,
    a: &BTreeMap<K1, Elem>,
    b: &BTreeMap<K2, Elem>,
) -> BTreeMap<(K1, K2), Elem>
where
    K1: Ord + Clone,
    K2: Ord + Clone,
{
    let mut out = BTreeMap::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let v = sr.mul(va, vb);
            if !sr.is_zero(&v) {
                out.insert((ka.clone(), kb.clone()), v);
            }
        }
    }
    out
}

impl WeightMap {
    pub fn empty(size: usize) -> Self {
        WeightMap { size, entries: BTreeMap::new() }
    }

    /// Builds a canonical map, ⊕-merging repeated keys and dropping zeros.
    pub fn from_pairs(
        sr: &Semiring,
        size: usize,
        pairs: impl IntoIterator<Item = (usize, Elem)>,
    ) -> Result<Self, WeightMapError> {
        let mut entries = BTreeMap::new();
        for (k, v) in pairs {
            if k >= size {
                return Err(WeightMapError::OutOfDomain { key: k, size });
            }
            accumulate(sr, &mut entries, k, v);
        }
        prune(sr, &mut entries);
        Ok(WeightMap { size, entries })
    }

    pub(crate) fn from_canonical(size: usize, entries: BTreeMap<usize, Elem>) -> Self {
        debug_assert!(entries.keys().all(|k| *k < size));
        WeightMap { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &BTreeMap<usize, Elem> {
        &self.entries
    }

    pub fn get(&self, x: usize) -> Option<&Elem> {
        self.entries.get(&x)
    }

    /// `h(x)`, with `0` off the support.
    pub fn value(&self, sr: &Semiring, x: usize) -> Elem {
        self.entries.get(&x).cloned().unwrap_or_else(|| sr.zero())
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = &Elem> {
        self.entries.values()
    }

    /// `{x:v, ...}` with semiring labels for the values.
    pub fn render(&self, sr: &Semiring) -> String {
        let body: Vec<String> = self
            .entries
            .iter()
            .map(|(k, v)| format!("{k}:{}", sr.label(v)))
            .collect();
        format!("{{{}}}", body.join(","))
    }
}

impl fmt::Display for WeightMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.entries.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        write!(f, "{{{}}}/{}", body.join(","), self.size)
    }
}

/// An element of `M(M(X))`: finitely many weight maps over a common domain.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NestedWeightMap {
    inner_size: usize,
    entries: BTreeMap<WeightMap, Elem>,
}

impl NestedWeightMap {
    pub fn from_pairs(
        sr: &Semiring,
        inner_size: usize,
        pairs: impl IntoIterator<Item = (WeightMap, Elem)>,
    ) -> Result<Self, WeightMapError> {
        let mut entries = BTreeMap::new();
        for (h, w) in pairs {
            if h.size != inner_size {
                return Err(WeightMapError::MixedDomains(inner_size, h.size));
            }
            accumulate(sr, &mut entries, h, w);
        }
        prune(sr, &mut entries);
        Ok(NestedWeightMap { inner_size, entries })
    }

    pub fn inner_size(&self) -> usize {
        self.inner_size
    }

    pub fn entries(&self) -> &BTreeMap<WeightMap, Elem> {
        &self.entries
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn values(&self) -> impl Iterator<Item = &Elem> {
        self.entries.values()
    }

    pub fn render(&self, sr: &Semiring) -> String {
        let body: Vec<String> = self
            .entries
            .iter()
            .map(|(h, w)| format!("{}:{}", h.render(sr), sr.label(w)))
            .collect();
        format!("{{{}}}", body.join(","))
    }
}

/// `T(f)(h)(y) = ⊕_{f(x) = y} h(x)`.
pub fn pushforward<F>(sr: &Semiring, h: &WeightMap, target_size: usize, f: F) -> Result<WeightMap, WeightMapError>
where
    F: Fn(usize) -> usize,
{
    for x in 0..h.size {
        let y = f(x);
        if y >= target_size {
            return Err(WeightMapError::OutOfDomain { key: y, size: target_size });
        }
    }
    Ok(WeightMap { size: target_size, entries: push_keys(sr, &h.entries, |x| f(*x)) })
}

/// The Dirac map `{x: 1}`.
pub fn eta(sr: &Semiring, size: usize, x: usize) -> Result<WeightMap, WeightMapError> {
    if x >= size {
        return Err(WeightMapError::OutOfDomain { key: x, size });
    }
    Ok(WeightMap { size, entries: BTreeMap::from([(x, sr.one())]) })
}

/// Flattens `M(M(X)) → M(X)`.
pub fn mu(sr: &Semiring, nested: &NestedWeightMap) -> WeightMap {
    WeightMap {
        size: nested.inner_size,
        entries: flatten(sr, nested.entries.iter().map(|(h, w)| (&h.entries, w))),
    }
}

/// `ψ(h, k)(x, y) = h(x) ⊙ k(y)` over `X × Y`.
pub fn psi(sr: &Semiring, h: &WeightMap, k: &WeightMap) -> WeightMap {
    let ks = k.size;
    let entries = pair_keys(sr, &h.entries, &k.entries)
        .into_iter()
        .map(|((x, y), v)| (x * ks + y, v))
        .collect();
    WeightMap { size: h.size * ks, entries }
}

/// `ψ₀(•) = {•: 1}`.
pub fn psi0(sr: &Semiring) -> WeightMap {
    WeightMap { size: 1, entries: BTreeMap::from([(0, sr.one())]) }
}

/// `⊕_x h(x)`.
pub fn total(sr: &Semiring, h: &WeightMap) -> Elem {
    sr.sum(h.values())
}

/// The antipode on `M_i(I)`: `{•: v} ↦ {•: v⁻¹}`.
pub fn antipode(sr: &Semiring, h: &WeightMap) -> Result<WeightMap, WeightMapError> {
    let bad = || WeightMapError::NotInvertible(h.render(sr));
    if h.size != 1 || h.support_len() != 1 {
        return Err(bad());
    }
    let v = h.value(sr, 0);
    let inv = sr.inverse(&v).ok_or_else(bad)?;
    Ok(WeightMap { size: 1, entries: BTreeMap::from([(0, inv)]) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wm(sr: &Semiring, size: usize, pairs: &[(usize, u64)]) -> WeightMap {
        let pairs = pairs.iter().map(|(k, v)| (*k, if sr.name() == "nat" { Elem::nat(*v) } else { Elem::Fin(*v as u32) }));
        WeightMap::from_pairs(sr, size, pairs).unwrap()
    }

    #[test]
    fn pushforward_sums_fibres() {
        let n = Semiring::nat();
        let h = wm(&n, 2, &[(0, 2), (1, 3)]);
        assert_eq!(pushforward(&n, &h, 1, |_| 0).unwrap(), wm(&n, 1, &[(0, 5)]));
        assert_eq!(pushforward(&n, &h, 2, |x| x).unwrap(), h);
        let b = Semiring::boolean();
        let h = wm(&b, 2, &[(0, 1), (1, 1)]);
        assert_eq!(pushforward(&b, &h, 1, |_| 0).unwrap(), wm(&b, 1, &[(0, 1)]));
        assert!(matches!(pushforward(&b, &h, 1, |x| x), Err(WeightMapError::OutOfDomain { .. })));
    }

    #[test]
    fn eta_is_dirac() {
        let b = Semiring::boolean();
        assert_eq!(eta(&b, 2, 0).unwrap(), wm(&b, 2, &[(0, 1)]));
        let n = Semiring::nat();
        assert_eq!(eta(&n, 2, 1).unwrap(), wm(&n, 2, &[(1, 1)]));
        let g = Semiring::gf(3).unwrap();
        assert_eq!(eta(&g, 3, 0).unwrap().entries()[&0], g.one());
        assert!(eta(&b, 2, 2).is_err());
    }

    #[test]
    fn mu_examples() {
        let n = Semiring::nat();
        let h = NestedWeightMap::from_pairs(&n, 1, [(wm(&n, 1, &[(0, 2)]), Elem::nat(3)), (wm(&n, 1, &[(0, 1)]), Elem::nat(1))]).unwrap();
        assert_eq!(mu(&n, &h), wm(&n, 1, &[(0, 7)]));
        let single = wm(&n, 2, &[(0, 4), (1, 1)]);
        let h = NestedWeightMap::from_pairs(&n, 2, [(single.clone(), n.one())]).unwrap();
        assert_eq!(mu(&n, &h), single);
        let b = Semiring::boolean();
        let h = NestedWeightMap::from_pairs(&b, 2, [(wm(&b, 2, &[(0, 1)]), b.one()), (wm(&b, 2, &[(1, 1)]), b.one())]).unwrap();
        assert_eq!(mu(&b, &h), wm(&b, 2, &[(0, 1), (1, 1)]));
        let mixed = NestedWeightMap::from_pairs(&b, 2, [(wm(&b, 1, &[(0, 1)]), b.one())]);
        assert_eq!(mixed, Err(WeightMapError::MixedDomains(2, 1)));
    }

    #[test]
    fn psi_examples() {
        let b = Semiring::boolean();
        assert_eq!(psi(&b, &wm(&b, 1, &[(0, 1)]), &wm(&b, 1, &[(0, 1)])), wm(&b, 1, &[(0, 1)]));
        let n = Semiring::nat();
        let p = psi(&n, &wm(&n, 2, &[(1, 2)]), &wm(&n, 3, &[(2, 3)]));
        assert_eq!(p, wm(&n, 6, &[(5, 6)]));
        assert!(psi(&n, &WeightMap::empty(2), &wm(&n, 3, &[(2, 3)])).is_empty());
        assert_eq!(psi0(&n), eta(&n, 1, 0).unwrap());
    }

    #[test]
    fn totals() {
        let b = Semiring::boolean();
        assert_eq!(total(&b, &wm(&b, 2, &[(0, 1), (1, 1)])), b.one());
        let n = Semiring::nat();
        assert_eq!(total(&n, &wm(&n, 2, &[(0, 2), (1, 3)])), Elem::nat(5));
        assert_eq!(total(&n, &WeightMap::empty(3)), n.zero());
    }

    #[test]
    fn antipode_examples() {
        let q = Semiring::nonneg_rational();
        let h = WeightMap::from_pairs(&q, 1, [(0, Elem::rat(2, 1))]).unwrap();
        let inv = antipode(&q, &h).unwrap();
        assert_eq!(inv.value(&q, 0), Elem::rat(1, 2));
        assert_eq!(antipode(&q, &psi0(&q)).unwrap(), psi0(&q));
        let n = Semiring::nat();
        assert!(antipode(&n, &wm(&n, 1, &[(0, 2)])).is_err());
    }

    #[test]
    fn zeros_are_never_stored() {
        let g = Semiring::gf(2).unwrap();
        let h = WeightMap::from_pairs(&g, 2, [(0, Elem::Fin(1)), (0, Elem::Fin(1)), (1, Elem::Fin(0))]).unwrap();
        assert!(h.is_empty());
    }

    #[test]
    fn finset_labels() {
        let s = FinSet::labelled("A", vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(s.index_of("b"), Some(1));
        assert_eq!(FinSet::new("B", 2).index_of("1"), Some(1));
        assert_eq!(FinSet::new("B", 2).index_of("2"), None);
        assert!(FinSet::labelled("A", vec!["a".into(), "a".into()]).is_err());
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<FinSet>(&json).unwrap(), s);
        assert!(serde_json::from_str::<FinSet>(r#"{"name":"A","size":3,"labels":["a"]}"#).is_err());
    }
}
