//! Semiring-weighted relations as a gs-monoidal category.
//!
//! The crate is organised bottom-up:
//!
//! * [`semiring`]: exact semiring arithmetic, builtin and table-loaded carriers,
//!   axiom checking and classification.
//! * [`weightmap`]: finite-support weight maps, the semiring-weighted monad
//!   (η, μ, ψ, pushforward) and its five sub-monad predicates.
//! * [`wrel`]: Kleisli arrows (weighted relations), composition, tensor,
//!   structural arrows, `dom` / `mass` and per-arrow predicates.
//! * [`diagram`]: a textual string-diagram DSL with parser, typechecker and
//!   evaluator into weighted relations.
//! * [`taxonomy`]: law suites classifying monad variants and their Kleisli
//!   categories, plus the cross-checking theorem suite.
//!
//! Law checks never use floating point; every comparison is on canonical
//! exact values.

pub mod diagram;
pub mod report;
pub mod rng;
pub mod semiring;
mod space;
pub mod taxonomy;
pub mod weightmap;
pub mod wrel;

pub use report::{LawReport, Status};
pub use semiring::{Elem, Semiring, SemiringError};
pub use weightmap::{FinSet, NestedWeightMap, Variant, WeightMap};
pub use wrel::{TensorWord, WRel};
