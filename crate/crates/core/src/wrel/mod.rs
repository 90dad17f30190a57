//! Weighted relations: the Kleisli category of the weighted monad.
//!
//! Objects are words of finite sets. The monoidal structure is strict: the
//! unit `I` is the empty word (one element `•`), `⊗` is concatenation, and
//! the unitors and associator are identities on flattened indices. An arrow
//! `X → Y` stores one canonical [`WeightMap`] over `|Y|` per element of `X`.
//! Composition is written in diagrammatic order, `f ; g` means "f then g".

mod axioms;
mod gen;
mod serial;

pub use axioms::{check_category_laws, check_gs_axioms, words_up_to};
pub use gen::{arrows_from_pool, enumerate_arrows, ArrowPool};
pub use serial::{from_json, to_json, WRelDocument};

use std::fmt;
use thiserror::Error;

use crate::semiring::{Elem, Semiring, SemiringError};
use crate::weightmap::{self, flatten, FinSet, WeightMap, WeightMapError};

#[derive(Debug, Error)]
pub enum WRelError {
    #[error("{op}: boundary mismatch between {left} and {right}")]
    Boundary { op: &'static str, left: String, right: String },
    #[error(transparent)]
    WeightMap(#[from] WeightMapError),
    #[error(transparent)]
    Semiring(#[from] SemiringError),
    #[error("bad entry: {0}")]
    BadEntry(String),
    #[error("malformed relation document: {0}")]
    Json(#[from] serde_json::Error),
}

/// A tensor word `X₁ ⊗ ... ⊗ Xₙ`; the empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorWord(pub Vec<FinSet>);

impl TensorWord {
    pub fn unit() -> Self {
        TensorWord(Vec::new())
    }

    pub fn single(s: FinSet) -> Self {
        TensorWord(vec![s])
    }

    /// A word of anonymous sets with the given sizes.
    pub fn of_sizes(sizes: &[usize]) -> Self {
        TensorWord(sizes.iter().map(|n| FinSet::sized(*n)).collect())
    }

    pub fn sets(&self) -> &[FinSet] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of elements of the product; 1 for the empty word.
    pub fn cardinality(&self) -> usize {
        self.0.iter().map(FinSet::size).product()
    }

    pub fn concat(&self, other: &TensorWord) -> TensorWord {
        TensorWord(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Mixed-radix index of a tuple, most significant component first.
    pub fn encode(&self, tuple: &[usize]) -> Option<usize> {
        if tuple.len() != self.0.len() {
            return None;
        }
        let mut acc = 0;
        for (x, s) in tuple.iter().zip(&self.0) {
            if *x >= s.size() {
                return None;
            }
            acc = acc * s.size() + x;
        }
        Some(acc)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.0.len()];
        for (slot, s) in out.iter_mut().zip(&self.0).rev() {
            *slot = index % s.size();
            index /= s.size();
        }
        out
    }

    /// `(a,b)` with labels, or `•` for the unit.
    pub fn render_element(&self, index: usize) -> String {
        if self.is_unit() {
            return "•".into();
        }
        let parts: Vec<String> = self.decode(index).iter().zip(&self.0).map(|(x, s)| s.label(*x)).collect();
        if parts.len() == 1 {
            parts[0].clone()
        } else {
            format!("({})", parts.join(","))
        }
    }
}

impl fmt::Display for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("I");
        }
        let names: Vec<&str> = self.0.iter().map(FinSet::name).collect();
        f.write_str(&names.join("⊗"))
    }
}

/// An arrow `dom → cod` of weighted relations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WRel {
    dom: TensorWord,
    cod: TensorWord,
    rows: Vec<WeightMap>,
}

fn mismatch(op: &'static str, left: &TensorWord, right: &TensorWord) -> WRelError {
    WRelError::Boundary { op, left: left.to_string(), right: right.to_string() }
}

impl WRel {
    /// Builds an arrow from canonical rows, one per element of `dom`.
    pub fn from_rows(dom: TensorWord, cod: TensorWord, rows: Vec<WeightMap>) -> Result<Self, WRelError> {
        if rows.len() != dom.cardinality() {
            return Err(WRelError::BadEntry(format!("{} rows for a domain of {} elements", rows.len(), dom.cardinality())));
        }
        let n = cod.cardinality();
        if let Some(r) = rows.iter().find(|r| r.size() != n) {
            return Err(WRelError::BadEntry(format!("row over {} elements, codomain has {n}", r.size())));
        }
        Ok(WRel { dom, cod, rows })
    }

    /// Builds an arrow from `(row, column, value)` triples on flat indices,
    /// ⊕-merging repeats.
    pub fn from_entries(
        sr: &Semiring,
        dom: TensorWord,
        cod: TensorWord,
        entries: impl IntoIterator<Item = (usize, usize, Elem)>,
    ) -> Result<Self, WRelError> {
        let (m, n) = (dom.cardinality(), cod.cardinality());
        let mut pairs: Vec<Vec<(usize, Elem)>> = vec![Vec::new(); m];
        for (x, y, v) in entries {
            if x >= m {
                return Err(WeightMapError::OutOfDomain { key: x, size: m }.into());
            }
            pairs[x].push((y, v));
        }
        let rows = pairs
            .into_iter()
            .map(|p| WeightMap::from_pairs(sr, n, p))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WRel { dom, cod, rows })
    }

    pub fn zero(dom: TensorWord, cod: TensorWord) -> Self {
        let n = cod.cardinality();
        let rows = (0..dom.cardinality()).map(|_| WeightMap::empty(n)).collect();
        WRel { dom, cod, rows }
    }

    pub fn dom_word(&self) -> &TensorWord {
        &self.dom
    }

    pub fn cod_word(&self) -> &TensorWord {
        &self.cod
    }

    pub fn rows(&self) -> &[WeightMap] {
        &self.rows
    }

    pub fn row(&self, x: usize) -> &WeightMap {
        &self.rows[x]
    }

    /// `f(x, y)`.
    pub fn value(&self, sr: &Semiring, x: usize, y: usize) -> Elem {
        self.rows[x].value(sr, y)
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Elem)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, r)| r.entries().iter().map(move |(y, v)| (x, *y, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(WeightMap::support_len).sum()
    }

    /// `{(x,y):v, ...}` with element and value labels.
    pub fn render(&self, sr: &Semiring) -> String {
        let body: Vec<String> = self
            .entries()
            .map(|(x, y, v)| format!("({},{}):{}", self.dom.render_element(x), self.cod.render_element(y), sr.label(v)))
            .collect();
        format!("{{{}}}", body.join(","))
    }

    /// The first entry where `self` and `other` differ, rendered for reports.
    pub fn first_difference(&self, sr: &Semiring, other: &WRel) -> Option<String> {
        for (x, (a, b)) in self.rows.iter().zip(&other.rows).enumerate() {
            if a == b {
                continue;
            }
            let y = a
                .entries()
                .keys()
                .chain(b.entries().keys())
                .copied()
                .filter(|y| a.get(*y) != b.get(*y))
                .min()
                .expect("rows differ");
            return Some(format!(
                "({},{}): {} vs {}",
                self.dom.render_element(x),
                self.cod.render_element(y),
                sr.label(&a.value(sr, y)),
                sr.label(&b.value(sr, y))
            ));
        }
        None
    }
}

impl fmt::Display for WRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.entries().map(|(x, y, v)| format!("({x},{y}):{v}")).collect();
        write!(f, "{} → {} {{{}}}", self.dom, self.cod, body.join(","))
    }
}

fn diagonal(sr: &Semiring, dom: TensorWord, cod: TensorWord, f: impl Fn(usize) -> usize) -> WRel {
    let n = cod.cardinality();
    let rows = (0..dom.cardinality())
        .map(|x| weightmap::eta(sr, n, f(x)).expect("structural index in range"))
        .collect();
    WRel { dom, cod, rows }
}

/// `id_w`, the Kleisli identity `η`.
pub fn identity(sr: &Semiring, w: &TensorWord) -> WRel {
    diagonal(sr, w.clone(), w.clone(), |x| x)
}

/// `∇_w : w → w⊗w`.
pub fn copy(sr: &Semiring, w: &TensorWord) -> WRel {
    let n = w.cardinality();
    diagonal(sr, w.clone(), w.concat(w), |x| x * n + x)
}

/// `!_w : w → I`.
pub fn del(sr: &Semiring, w: &TensorWord) -> WRel {
    diagonal(sr, w.clone(), TensorWord::unit(), |_| 0)
}

/// `σ : a⊗b → b⊗a`.
pub fn swap(sr: &Semiring, a: &TensorWord, b: &TensorWord) -> WRel {
    let (na, nb) = (a.cardinality(), b.cardinality());
    diagonal(sr, a.concat(b), b.concat(a), |i| {
        let (x, y) = (i / nb, i % nb);
        y * na + x
    })
}

/// `f ; g`, `(f;g)(x,z) = ⊕_y f(x,y) ⊙ g(y,z)`.
pub fn compose(sr: &Semiring, f: &WRel, g: &WRel) -> Result<WRel, WRelError> {
    if f.cod != g.dom {
        return Err(mismatch("compose", &f.cod, &g.dom));
    }
    let n = g.cod.cardinality();
    let rows = f
        .rows
        .iter()
        .map(|h| {
            let acc = flatten(sr, h.entries().iter().map(|(y, v)| (g.rows[*y].entries(), v)));
            WeightMap::from_canonical(n, acc)
        })
        .collect();
    Ok(WRel { dom: f.dom.clone(), cod: g.cod.clone(), rows })
}

/// Composes a nonempty chain left to right.
pub fn compose_all(sr: &Semiring, arrows: &[&WRel]) -> Result<WRel, WRelError> {
    let (first, rest) = arrows.split_first().expect("empty chain");
    rest.iter().try_fold((*first).clone(), |acc, g| compose(sr, &acc, g))
}

/// `f ⊗ g`, the Kronecker product of the matrices.
pub fn tensor(sr: &Semiring, f: &WRel, g: &WRel) -> WRel {
    let rows = f
        .rows
        .iter()
        .flat_map(|h| g.rows.iter().map(move |k| weightmap::psi(sr, h, k)))
        .collect();
    WRel { dom: f.dom.concat(&g.dom), cod: f.cod.concat(&g.cod), rows }
}

/// `mass(f) = f ; !`.
pub fn mass(sr: &Semiring, f: &WRel) -> WRel {
    compose(sr, f, &del(sr, &f.cod)).expect("boundaries match by construction")
}

/// `dom(f) = ∇ ; (id ⊗ (f ; !))`, evaluated as a composite.
pub fn dom(sr: &Semiring, f: &WRel) -> WRel {
    let x = &f.dom;
    let right = tensor(sr, &identity(sr, x), &mass(sr, f));
    compose(sr, &copy(sr, x), &right).expect("boundaries match by construction")
}

/// Closed form of `dom(f)`: the diagonal of row totals.
pub fn dom_closed_form(sr: &Semiring, f: &WRel) -> WRel {
    let n = f.dom.cardinality();
    let rows = f
        .rows
        .iter()
        .enumerate()
        .map(|(x, h)| WeightMap::from_pairs(sr, n, [(x, weightmap::total(sr, h))]).expect("diagonal in range"))
        .collect();
    WRel { dom: f.dom.clone(), cod: f.dom.clone(), rows }
}

/// `dom(f) ; f` computed from the monad structure alone: each row `h` goes
/// to `T(ρ⁻¹)(ψ(h, T(!)(h)))`.
pub fn dom_via_kleisli_path(sr: &Semiring, f: &WRel) -> WRel {
    let n = f.cod.cardinality();
    let rows = f
        .rows
        .iter()
        .map(|h| {
            let m = weightmap::pushforward(sr, h, 1, |_| 0).expect("unit has one element");
            let paired = weightmap::psi(sr, h, &m);
            // Over Y × I the flat index of (y, •) is y.
            weightmap::pushforward(sr, &paired, n, |i| i).expect("ρ⁻¹ is a bijection")
        })
        .collect();
    WRel { dom: f.dom.clone(), cod: f.cod.clone(), rows }
}

/// Per-arrow predicates, each decided by its defining composite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ArrowFlags {
    /// `f ; ! = !`.
    pub total: bool,
    /// `f ; ∇ = ∇ ; (f ⊗ f)`.
    pub copyable: bool,
    /// `dom(f) ; f = f`.
    pub domain_eq: bool,
    /// `dom(f) ; mass(f) = mass(f)`.
    pub mass_eq: bool,
}

pub fn is_total(sr: &Semiring, f: &WRel) -> bool {
    mass(sr, f) == del(sr, &f.dom)
}

pub fn is_copyable(sr: &Semiring, f: &WRel) -> bool {
    let lhs = compose(sr, f, &copy(sr, &f.cod)).expect("boundaries match");
    let rhs = compose(sr, &copy(sr, &f.dom), &tensor(sr, f, f)).expect("boundaries match");
    lhs == rhs
}

pub fn satisfies_domain_eq(sr: &Semiring, f: &WRel) -> bool {
    compose(sr, &dom(sr, f), f).expect("boundaries match") == *f
}

pub fn satisfies_mass_eq(sr: &Semiring, f: &WRel) -> bool {
    let m = mass(sr, f);
    compose(sr, &dom(sr, f), &m).expect("boundaries match") == m
}

pub fn classify(sr: &Semiring, f: &WRel) -> ArrowFlags {
    ArrowFlags {
        total: is_total(sr, f),
        copyable: is_copyable(sr, f),
        domain_eq: satisfies_domain_eq(sr, f),
        mass_eq: satisfies_mass_eq(sr, f),
    }
}

/// `f · g = ∇ ; (f ⊗ g)` on `hom(Y, I)`.
pub fn hom_scalar_mul(sr: &Semiring, f: &WRel, g: &WRel) -> Result<WRel, WRelError> {
    if !f.cod.is_unit() || !g.cod.is_unit() {
        return Err(mismatch("hom_scalar_mul", &f.cod, &g.cod));
    }
    if f.dom != g.dom {
        return Err(mismatch("hom_scalar_mul", &f.dom, &g.dom));
    }
    compose(sr, &copy(sr, &f.dom), &tensor(sr, f, g))
}

/// The unit of `hom(Y, I)`: `!_Y`.
pub fn hom_scalar_unit(sr: &Semiring, y: &TensorWord) -> WRel {
    del(sr, y)
}

/// `Δ_w = id ⊗ ! : w⊗w → w`.
pub fn canonical_semigroup_mul(sr: &Semiring, w: &TensorWord) -> WRel {
    tensor(sr, &identity(sr, w), &del(sr, w))
}

/// Canonical equality; arrows with different boundaries are not comparable.
pub fn wrel_eq(f: &WRel, g: &WRel) -> Result<bool, WRelError> {
    if f.dom != g.dom {
        return Err(mismatch("eq", &f.dom, &g.dom));
    }
    if f.cod != g.cod {
        return Err(mismatch("eq", &f.cod, &g.cod));
    }
    Ok(f.rows == g.rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(name: &str, labels: &[&str]) -> TensorWord {
        TensorWord::single(FinSet::labelled(name, labels.iter().map(|s| s.to_string()).collect()).unwrap())
    }

    fn rel(sr: &Semiring, dom: &TensorWord, cod: &TensorWord, e: &[(usize, usize, u64)]) -> WRel {
        let v = |n: u64| if sr.name() == "nat" { Elem::nat(n) } else { Elem::Fin(n as u32) };
        WRel::from_entries(sr, dom.clone(), cod.clone(), e.iter().map(|(x, y, n)| (*x, *y, v(*n)))).unwrap()
    }

    #[test]
    fn words_encode_and_decode() {
        let w = TensorWord::of_sizes(&[2, 3]);
        assert_eq!(w.cardinality(), 6);
        assert_eq!(w.encode(&[1, 2]), Some(5));
        assert_eq!(w.decode(5), vec![1, 2]);
        assert_eq!(TensorWord::unit().cardinality(), 1);
        assert_eq!(TensorWord::unit().decode(0), Vec::<usize>::new());
        assert_eq!(TensorWord::of_sizes(&[2, 0]).cardinality(), 0);
        assert_eq!(w.encode(&[2, 0]), None);
    }

    #[test]
    fn identity_examples() {
        let b = Semiring::boolean();
        let a = set("A", &["a", "b"]);
        assert_eq!(identity(&b, &a).render(&b), "{(a,a):1,(b,b):1}");
        assert_eq!(identity(&b, &TensorWord::unit()).render(&b), "{(•,•):1}");
    }

    #[test]
    fn compose_examples() {
        let b = Semiring::boolean();
        let x = set("X", &["x"]);
        let y = set("Y", &["y0", "y1"]);
        let z = set("Z", &["z"]);
        let f = rel(&b, &x, &y, &[(0, 0, 1), (0, 1, 1)]);
        let g = rel(&b, &y, &z, &[(0, 0, 1), (1, 0, 1)]);
        assert_eq!(compose(&b, &f, &g).unwrap().render(&b), "{(x,z):1}");
        let n = Semiring::nat();
        let f = rel(&n, &x, &set("Y", &["y"]), &[(0, 0, 2)]);
        let g = rel(&n, &set("Y", &["y"]), &z, &[(0, 0, 3)]);
        assert_eq!(compose(&n, &f, &g).unwrap().render(&n), "{(x,z):6}");
        assert_eq!(compose(&n, &f, &identity(&n, f.cod_word())).unwrap(), f);
        assert!(matches!(compose(&n, &f, &f), Err(WRelError::Boundary { .. })));
    }

    #[test]
    fn tensor_examples() {
        let n = Semiring::nat();
        let (a, b) = (TensorWord::of_sizes(&[2]), TensorWord::of_sizes(&[3]));
        assert_eq!(tensor(&n, &identity(&n, &a), &identity(&n, &b)), identity(&n, &a.concat(&b)));
        let x = set("X", &["x"]);
        let y = set("Y", &["y"]);
        let f = rel(&n, &x, &y, &[(0, 0, 2)]);
        let g = rel(&n, &set("U", &["u"]), &set("V", &["v"]), &[(0, 0, 3)]);
        assert_eq!(tensor(&n, &f, &g).render(&n), "{((x,u),(y,v)):6}");
        let empty = WRel::zero(TensorWord::of_sizes(&[1]), TensorWord::of_sizes(&[0]));
        assert_eq!(tensor(&n, &f, &empty).nnz(), 0);
    }

    #[test]
    fn structural_examples() {
        let b = Semiring::boolean();
        let a = set("A", &["a", "b"]);
        assert_eq!(copy(&b, &a).render(&b), "{(a,(a,a)):1,(b,(b,b)):1}");
        assert_eq!(del(&b, &a).render(&b), "{(a,•):1,(b,•):1}");
        let cs = compose(&b, &copy(&b, &a), &swap(&b, &a, &a)).unwrap();
        assert_eq!(cs, copy(&b, &a));
        let c = set("C", &["c", "d", "e"]);
        let s = swap(&b, &a, &c);
        assert_eq!(compose(&b, &s, &swap(&b, &c, &a)).unwrap(), identity(&b, &a.concat(&c)));
    }

    #[test]
    fn dom_and_mass_examples() {
        let b = Semiring::boolean();
        let x = set("X", &["a", "b"]);
        let y = set("Y", &["c", "d"]);
        let f = rel(&b, &x, &y, &[(0, 0, 1)]);
        assert_eq!(dom(&b, &f).render(&b), "{(a,a):1}");
        let f2 = rel(&b, &x, &y, &[(0, 0, 1), (0, 1, 1)]);
        assert_eq!(mass(&b, &f2).render(&b), "{(a,•):1}");
        let n = Semiring::nat();
        let f = rel(&n, &x, &y, &[(0, 0, 2)]);
        assert_eq!(dom(&n, &f).render(&n), "{(a,a):2}");
        let f2 = rel(&n, &x, &y, &[(0, 0, 2), (0, 1, 3)]);
        assert_eq!(mass(&n, &f2).render(&n), "{(a,•):5}");
        let z = WRel::zero(x.clone(), y.clone());
        assert_eq!(dom(&n, &z), WRel::zero(x.clone(), x.clone()));
        assert_eq!(mass(&n, &z), WRel::zero(x, TensorWord::unit()));
    }

    #[test]
    fn kleisli_path_examples() {
        let n = Semiring::nat();
        let x = set("X", &["a"]);
        let y = set("Y", &["c"]);
        let f = rel(&n, &x, &y, &[(0, 0, 2)]);
        let path = dom_via_kleisli_path(&n, &f);
        assert_eq!(path.render(&n), "{(a,c):4}");
        assert_eq!(path, compose(&n, &dom(&n, &f), &f).unwrap());
        let id = identity(&n, &TensorWord::of_sizes(&[3]));
        assert_eq!(dom_via_kleisli_path(&n, &id), id);
    }

    #[test]
    fn classify_examples() {
        let b = Semiring::boolean();
        let x = set("X", &["a"]);
        let y = set("Y", &["c", "d"]);
        let f = rel(&b, &x, &y, &[(0, 0, 1), (0, 1, 1)]);
        let fl = classify(&b, &f);
        assert_eq!((fl.total, fl.copyable, fl.domain_eq, fl.mass_eq), (true, false, true, true));
        let n = Semiring::nat();
        let f = rel(&n, &x, &set("Y", &["c"]), &[(0, 0, 2)]);
        let fl = classify(&n, &f);
        assert_eq!((fl.total, fl.copyable, fl.domain_eq, fl.mass_eq), (false, false, false, false));
        let id = classify(&n, &identity(&n, &y));
        assert!(id.total && id.copyable && id.domain_eq && id.mass_eq);
    }

    #[test]
    fn hom_scalar_examples() {
        let b = Semiring::boolean();
        let y = set("Y", &["a", "b"]);
        let i = TensorWord::unit();
        let f = rel(&b, &y, &i, &[(0, 0, 1)]);
        let g = rel(&b, &y, &i, &[(0, 0, 1), (1, 0, 1)]);
        assert_eq!(hom_scalar_mul(&b, &f, &g).unwrap().render(&b), "{(a,•):1}");
        assert_eq!(hom_scalar_mul(&b, &f, &hom_scalar_unit(&b, &y)).unwrap(), f);
        let n = Semiring::nat();
        let f = rel(&n, &y, &i, &[(0, 0, 2)]);
        let g = rel(&n, &y, &i, &[(0, 0, 3)]);
        assert_eq!(hom_scalar_mul(&n, &f, &g).unwrap().render(&n), "{(a,•):6}");
        assert!(hom_scalar_mul(&n, &identity(&n, &y), &g).is_err());
    }

    #[test]
    fn canonical_semigroup_examples() {
        let b = Semiring::boolean();
        let a = set("A", &["a", "b"]);
        let d = canonical_semigroup_mul(&b, &a);
        assert_eq!(compose(&b, &copy(&b, &a), &d).unwrap(), identity(&b, &a));
        let ab = a.concat(&a).encode(&[0, 1]).unwrap();
        assert_eq!(d.value(&b, ab, 0), b.one());
        assert_eq!(d.value(&b, ab, 1), b.zero());
        let u = canonical_semigroup_mul(&b, &TensorWord::unit());
        assert_eq!(u.render(&b), "{(•,•):1}");
    }

    #[test]
    fn equality_examples() {
        let b = Semiring::boolean();
        let a = set("A", &["a", "b"]);
        let counit = compose(&b, &copy(&b, &a), &tensor(&b, &identity(&b, &a), &del(&b, &a))).unwrap();
        assert!(wrel_eq(&counit, &identity(&b, &a)).unwrap());
        let cs = compose(&b, &copy(&b, &a), &swap(&b, &a, &a)).unwrap();
        assert!(wrel_eq(&copy(&b, &a), &cs).unwrap());
        assert!(wrel_eq(&copy(&b, &a), &identity(&b, &a)).is_err());
    }

    #[test]
    fn first_difference_reports_entry() {
        let n = Semiring::nat();
        let x = set("X", &["a"]);
        let y = set("Y", &["c"]);
        let f = rel(&n, &x, &y, &[(0, 0, 2)]);
        let g = compose(&n, &dom(&n, &f), &f).unwrap();
        assert_eq!(g.first_difference(&n, &f).unwrap(), "(a,c): 4 vs 2");
        assert_eq!(f.first_difference(&n, &f), None);
    }
}
