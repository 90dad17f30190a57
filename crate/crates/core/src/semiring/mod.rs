//! Exact semiring arithmetic.
//!
//! A [`Semiring`] is a runtime value: builtin carriers (bool, nat, rationals,
//! fuzzy semirings, prime fields) or a finite carrier loaded from operation
//! tables. Elements are [`Elem`] values that are canonical within one carrier,
//! so structural equality is semantic equality.

mod laws;
mod table;

pub use laws::{check_semiring_laws, classify_semiring, SemiringClassification};
pub use table::{Table, TableDocument};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use std::fmt;
use std::path::Path;
use thiserror::Error;

use crate::rng;

/// Default number of primitive evaluations allowed per law.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum SemiringError {
    #[error("unknown semiring `{0}` (builtins: bool, nat, nonneg-rational, fuzzy-max-min, fuzzy-max-times, gf(p); or a table file)")]
    UnknownBuiltin(String),
    #[error("gf({0}): modulus must be a prime between 2 and 65521")]
    BadModulus(u64),
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("table operation `{op}` is not closed: entry `{entry}` is not an element")]
    NotClosed { op: &'static str, entry: String },
    #[error("semiring axiom `{law}` fails at [{witness}]")]
    AxiomViolation { law: String, witness: String },
    #[error("`{label}` is not an element of {semiring}")]
    BadElement { label: String, semiring: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// An element of some semiring carrier.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    /// Index into a finite carrier (bool, gf(p), tables).
    Fin(u32),
    Nat(BigUint),
    Rat(BigRational),
}

impl Elem {
    pub fn rat(num: u64, den: u64) -> Elem {
        Elem::Rat(BigRational::new(num.into(), den.into()))
    }

    pub fn nat(n: u64) -> Elem {
        Elem::Nat(BigUint::from(n))
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Fin(i) => write!(f, "#{i}"),
            Elem::Nat(n) => write!(f, "{n}"),
            Elem::Rat(q) => write!(f, "{q}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Bool,
    Nat,
    NonNegRational,
    FuzzyMaxMin,
    FuzzyMaxTimes,
    Gf(u32),
    Table(Box<Table>),
}

/// A semiring `(M, ⊕, ⊙, 0, 1)` with exact elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semiring {
    name: String,
    kind: Kind,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Semiring {
    pub fn boolean() -> Self {
        Semiring { name: "bool".into(), kind: Kind::Bool }
    }

    pub fn nat() -> Self {
        Semiring { name: "nat".into(), kind: Kind::Nat }
    }

    pub fn nonneg_rational() -> Self {
        Semiring { name: "nonneg-rational".into(), kind: Kind::NonNegRational }
    }

    pub fn fuzzy_max_min() -> Self {
        Semiring { name: "fuzzy-max-min".into(), kind: Kind::FuzzyMaxMin }
    }

    pub fn fuzzy_max_times() -> Self {
        Semiring { name: "fuzzy-max-times".into(), kind: Kind::FuzzyMaxTimes }
    }

    pub fn gf(p: u64) -> Result<Self, SemiringError> {
        if !is_prime(p) || p > 65521 {
            return Err(SemiringError::BadModulus(p));
        }
        Ok(Semiring { name: format!("gf({p})"), kind: Kind::Gf(p as u32) })
    }

    /// A table semiring. Only structural validity is assumed; use
    /// [`check_semiring_laws`] (or [`load_semiring`]) to verify the axioms.
    pub fn from_table(table: Table) -> Self {
        Semiring { name: table.name().to_string(), kind: Kind::Table(Box::new(table)) }
    }

    /// Looks up a builtin by name. Accepts `q+` for the nonnegative rationals
    /// and both `gf(p)` and `gfp`.
    pub fn builtin(name: &str) -> Result<Self, SemiringError> {
        let n = name.trim().to_ascii_lowercase();
        match n.as_str() {
            "bool" | "boolean" => return Ok(Self::boolean()),
            "nat" | "n" => return Ok(Self::nat()),
            "nonneg-rational" | "q+" | "rational+" => return Ok(Self::nonneg_rational()),
            "fuzzy-max-min" => return Ok(Self::fuzzy_max_min()),
            "fuzzy-max-times" => return Ok(Self::fuzzy_max_times()),
            _ => {}
        }
        let digits = n
            .strip_prefix("gf(")
            .and_then(|s| s.strip_suffix(')'))
            .or_else(|| n.strip_prefix("gf"));
        if let Some(d) = digits {
            if let Ok(p) = d.parse::<u64>() {
                return Self::gf(p);
            }
        }
        Err(SemiringError::UnknownBuiltin(name.to_string()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The operation tables of a table-loaded carrier.
    pub fn table(&self) -> Option<&Table> {
        match &self.kind {
            Kind::Table(t) => Some(t),
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        match &self.kind {
            Kind::Bool | Kind::Gf(_) => Elem::Fin(0),
            Kind::Nat => Elem::Nat(BigUint::zero()),
            Kind::NonNegRational | Kind::FuzzyMaxMin | Kind::FuzzyMaxTimes => {
                Elem::Rat(BigRational::zero())
            }
            Kind::Table(t) => Elem::Fin(t.zero),
        }
    }

    pub fn one(&self) -> Elem {
        match &self.kind {
            Kind::Bool | Kind::Gf(_) => Elem::Fin(1),
            Kind::Nat => Elem::Nat(BigUint::one()),
            Kind::NonNegRational | Kind::FuzzyMaxMin | Kind::FuzzyMaxTimes => {
                Elem::Rat(BigRational::one())
            }
            Kind::Table(t) => Elem::Fin(t.one),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        *a == self.zero()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.kind, a, b) {
            (Kind::Bool, Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(x | y),
            (Kind::Gf(p), Elem::Fin(x), Elem::Fin(y)) => Elem::Fin((x + y) % p),
            (Kind::Table(t), Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(t.plus(*x, *y)),
            (Kind::Nat, Elem::Nat(x), Elem::Nat(y)) => Elem::Nat(x + y),
            (Kind::NonNegRational, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Kind::FuzzyMaxMin | Kind::FuzzyMaxTimes, Elem::Rat(x), Elem::Rat(y)) => {
                Elem::Rat(x.max(y).clone())
            }
            _ => panic!("element does not belong to semiring {}", self.name),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.kind, a, b) {
            (Kind::Bool, Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(x & y),
            (Kind::Gf(p), Elem::Fin(x), Elem::Fin(y)) => {
                Elem::Fin(((u64::from(*x) * u64::from(*y)) % u64::from(*p)) as u32)
            }
            (Kind::Table(t), Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(t.times(*x, *y)),
            (Kind::Nat, Elem::Nat(x), Elem::Nat(y)) => Elem::Nat(x * y),
            (Kind::NonNegRational | Kind::FuzzyMaxTimes, Elem::Rat(x), Elem::Rat(y)) => {
                Elem::Rat(x * y)
            }
            (Kind::FuzzyMaxMin, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x.min(y).clone()),
            _ => panic!("element does not belong to semiring {}", self.name),
        }
    }

    /// ⊕ over an iterator; `0` for an empty one.
    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Elem>) -> Elem {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// The two-sided ⊙-inverse of `a`, if it exists.
    pub fn inverse(&self, a: &Elem) -> Option<Elem> {
        let one = self.one();
        match (&self.kind, a) {
            (Kind::Table(t), Elem::Fin(x)) => (0..t.len() as u32)
                .find(|m| t.times(*x, *m) == t.one && t.times(*m, *x) == t.one)
                .map(Elem::Fin),
            (Kind::Gf(p), Elem::Fin(x)) => {
                if *x == 0 {
                    None
                } else {
                    let p = i64::from(*p);
                    let inv = i64::from(*x).extended_gcd(&p).x.mod_floor(&p);
                    Some(Elem::Fin(inv as u32))
                }
            }
            (Kind::NonNegRational, Elem::Rat(q)) => {
                if q.is_zero() {
                    None
                } else {
                    Some(Elem::Rat(q.recip()))
                }
            }
            // In bool, nat and both fuzzy semirings only 1 is invertible.
            _ => (*a == one).then_some(one),
        }
    }

    /// Whether the carrier is finite.
    pub fn is_finite(&self) -> bool {
        matches!(self.kind, Kind::Bool | Kind::Gf(_) | Kind::Table(_))
    }

    /// All elements of a finite carrier, in canonical order.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        let n = match &self.kind {
            Kind::Bool => 2,
            Kind::Gf(p) => *p,
            Kind::Table(t) => t.len() as u32,
            _ => return None,
        };
        Some((0..n).map(Elem::Fin).collect())
    }

    /// Number of carrier elements, `None` when infinite.
    pub fn cardinality(&self) -> Option<u64> {
        match &self.kind {
            Kind::Bool => Some(2),
            Kind::Gf(p) => Some(u64::from(*p)),
            Kind::Table(t) => Some(t.len() as u64),
            _ => None,
        }
    }

    /// The element set law checks range over: the whole carrier when finite,
    /// otherwise the seeded sample policy (nat: {0..5} plus 8 values ≤ 100;
    /// rationals: {0, 1} plus 12 values with numerator and denominator ≤ 10).
    pub fn sample_set(&self, seed: u64) -> Vec<Elem> {
        if let Some(all) = self.elements() {
            return all;
        }
        let mut r = rng::stream(seed, &format!("sample-set/{}", self.name));
        let mut out: Vec<Elem> = Vec::new();
        match &self.kind {
            Kind::Nat => {
                out.extend((0..=5).map(Elem::nat));
                for _ in 0..8 {
                    out.push(Elem::nat(r.gen_range(0..=100)));
                }
            }
            _ => {
                out.push(self.zero());
                out.push(self.one());
                for _ in 0..12 {
                    out.push(self.random_rational(&mut r));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    fn random_rational<R: Rng>(&self, r: &mut R) -> Elem {
        let den = r.gen_range(1..=10u64);
        let num = match self.kind {
            Kind::NonNegRational => r.gen_range(0..=10u64),
            _ => r.gen_range(0..=den),
        };
        Elem::rat(num, den)
    }

    /// One random element, with the same bounds as the sample policy.
    pub fn random_elem<R: Rng>(&self, r: &mut R) -> Elem {
        match &self.kind {
            Kind::Nat => {
                if r.gen_bool(0.5) {
                    Elem::nat(r.gen_range(0..=5))
                } else {
                    Elem::nat(r.gen_range(0..=100))
                }
            }
            Kind::NonNegRational | Kind::FuzzyMaxMin | Kind::FuzzyMaxTimes => {
                self.random_rational(r)
            }
            _ => {
                let n = self.cardinality().unwrap_or(1) as u32;
                Elem::Fin(r.gen_range(0..n))
            }
        }
    }

    /// A random element from a wider range: naturals up to `bound`, rationals
    /// with numerator and denominator up to `bound`. Finite carriers ignore
    /// the bound.
    pub fn random_elem_wide<R: Rng>(&self, r: &mut R, bound: u64) -> Elem {
        match &self.kind {
            Kind::Nat => Elem::nat(r.gen_range(0..=bound)),
            Kind::NonNegRational => Elem::rat(r.gen_range(0..=bound), r.gen_range(1..=bound.max(1))),
            Kind::FuzzyMaxMin | Kind::FuzzyMaxTimes => {
                let den = r.gen_range(1..=bound.max(1));
                Elem::rat(r.gen_range(0..=den), den)
            }
            _ => self.random_elem(r),
        }
    }

    /// Whether `a` is a valid element of this carrier.
    pub fn contains(&self, a: &Elem) -> bool {
        match (&self.kind, a) {
            (Kind::Bool, Elem::Fin(x)) => *x < 2,
            (Kind::Gf(p), Elem::Fin(x)) => x < p,
            (Kind::Table(t), Elem::Fin(x)) => (*x as usize) < t.len(),
            (Kind::Nat, Elem::Nat(_)) => true,
            (Kind::NonNegRational, Elem::Rat(q)) => *q >= BigRational::zero(),
            (Kind::FuzzyMaxMin | Kind::FuzzyMaxTimes, Elem::Rat(q)) => {
                *q >= BigRational::zero() && *q <= BigRational::one()
            }
            _ => false,
        }
    }

    /// Text label of an element (round-trips through [`Semiring::parse_elem`]).
    pub fn label(&self, a: &Elem) -> String {
        match (&self.kind, a) {
            (Kind::Table(t), Elem::Fin(x)) => t.label(*x).to_string(),
            (_, Elem::Fin(x)) => x.to_string(),
            (_, Elem::Nat(n)) => n.to_string(),
            (_, Elem::Rat(q)) => q.to_string(),
        }
    }

    pub fn parse_elem(&self, label: &str) -> Result<Elem, SemiringError> {
        let bad = || SemiringError::BadElement {
            label: label.to_string(),
            semiring: self.name.clone(),
        };
        let s = label.trim();
        let e = match &self.kind {
            Kind::Table(t) => Elem::Fin(t.index_of(s).ok_or_else(bad)?),
            Kind::Bool => match s {
                "0" | "false" => Elem::Fin(0),
                "1" | "true" => Elem::Fin(1),
                _ => return Err(bad()),
            },
            Kind::Gf(_) => Elem::Fin(s.parse::<u32>().map_err(|_| bad())?),
            Kind::Nat => Elem::Nat(s.parse::<BigUint>().map_err(|_| bad())?),
            _ => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let n = n.parse::<BigUint>().map_err(|_| bad())?;
                let d = d.parse::<BigUint>().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Elem::Rat(BigRational::new(n.into(), d.into()))
            }
        };
        if self.contains(&e) {
            Ok(e)
        } else {
            Err(bad())
        }
    }

    /// Small integer view, used in tests and diagnostics.
    pub fn to_u64(&self, a: &Elem) -> Option<u64> {
        match a {
            Elem::Fin(x) => Some(u64::from(*x)),
            Elem::Nat(n) => n.to_u64(),
            Elem::Rat(q) => q.is_integer().then(|| q.to_integer().to_u64()).flatten(),
        }
    }
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Loads a semiring from a builtin name or a table file, verifying the
/// semiring axioms of table carriers.
pub fn load_semiring(spec: &str) -> Result<Semiring, SemiringError> {
    let sr = load_semiring_unverified(spec)?;
    if sr.is_finite() && matches!(sr.kind, Kind::Table(_)) {
        if let Some(bad) = check_semiring_laws(&sr, DEFAULT_BUDGET)
            .into_iter()
            .find(|r| !r.holds())
        {
            return Err(SemiringError::AxiomViolation {
                law: bad.law,
                witness: bad.witness.join(", "),
            });
        }
    }
    Ok(sr)
}

/// Like [`load_semiring`] but only checks that a table is well formed, so
/// that axiom violations can be reported instead of rejected.
pub fn load_semiring_unverified(spec: &str) -> Result<Semiring, SemiringError> {
    match Semiring::builtin(spec) {
        Ok(sr) => Ok(sr),
        Err(e) => {
            let path = Path::new(spec);
            if path.is_file() {
                let text = std::fs::read_to_string(path).map_err(|source| SemiringError::Io {
                    path: spec.to_string(),
                    source,
                })?;
                let doc: TableDocument = serde_json::from_str(&text)
                    .map_err(|e| SemiringError::MalformedTable(e.to_string()))?;
                Ok(Semiring::from_table(Table::from_document(doc)?))
            } else {
                Err(e)
            }
        }
    }
}
