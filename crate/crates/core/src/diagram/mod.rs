//! String-diagram terms over a typed signature.
//!
//! Grammar, lowest precedence first:
//!
//! ```text
//! file   := ("let" NAME "=" term)* term?
//! term   := tensor (";" tensor)*          // diagrammatic order: f ; g is "f then g"
//! tensor := atom ("*" atom)*
//! atom   := NAME | "(" term ")" | "dom(" term ")" | "mass(" term ")"
//!         | "id[" word "]" | "copy[" word "]" | "del[" word "]"
//!         | "swap[" word ";" word "]"
//! word   := (SORT ("," SORT)*)?
//! ```
//!
//! `#` starts a comment running to the end of the line. Both binary
//! operators associate to the left.

mod interp;
mod parse;

pub use interp::{
    axiom_pairs, check_equation_over_models, check_term_equality, evaluate_term, random_interpretation,
    Interpretation, InterpretationDoc, SemiringRef,
};
pub use parse::{parse_file, parse_term, TermFile};

use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

use crate::semiring::SemiringError;
use crate::wrel::WRelError;

/// A word of sort names; the empty word is the unit.
pub type Word = Vec<String>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Id(Word),
    Gen(String),
    Seq(Box<Term>, Box<Term>),
    Tensor(Box<Term>, Box<Term>),
    Swap(Word, Word),
    Copy(Word),
    Del(Word),
    Dom(Box<Term>),
    Mass(Box<Term>),
}

impl Term {
    pub fn seq(a: Term, b: Term) -> Term {
        Term::Seq(Box::new(a), Box::new(b))
    }

    pub fn tensor(a: Term, b: Term) -> Term {
        Term::Tensor(Box::new(a), Box::new(b))
    }

    pub fn gen(name: &str) -> Term {
        Term::Gen(name.to_string())
    }

    /// Generator names occurring in the term.
    pub fn generators(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_generators(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_generators<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::Gen(g) => out.push(g),
            Term::Seq(a, b) | Term::Tensor(a, b) => {
                a.collect_generators(out);
                b.collect_generators(out);
            }
            Term::Dom(t) | Term::Mass(t) => t.collect_generators(out),
            _ => {}
        }
    }
}

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("{line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown sort `{0}`")]
    UnknownSort(String),
    #[error("{context}: boundary mismatch, [{left}] vs [{right}]")]
    Boundary { context: String, left: String, right: String },
    #[error("interpretation: {0}")]
    Interpretation(String),
    #[error(transparent)]
    WRel(#[from] WRelError),
    #[error(transparent)]
    Semiring(#[from] SemiringError),
    #[error("malformed interpretation document: {0}")]
    Json(#[from] serde_json::Error),
}

fn word_text(w: &[String]) -> String {
    w.join(",")
}

// Binding strength of the outermost constructor: 0 for `;`, 1 for `*`, 2 for atoms.
fn level(t: &Term) -> u8 {
    match t {
        Term::Seq(..) => 0,
        Term::Tensor(..) => 1,
        _ => 2,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, t: &Term, min: u8) -> fmt::Result {
    if level(t) < min {
        write!(f, "(")?;
        write_term(f, t)?;
        write!(f, ")")
    } else {
        write_term(f, t)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &Term) -> fmt::Result {
    match t {
        Term::Id(w) => write!(f, "id[{}]", word_text(w)),
        Term::Gen(g) => f.write_str(g),
        Term::Copy(w) => write!(f, "copy[{}]", word_text(w)),
        Term::Del(w) => write!(f, "del[{}]", word_text(w)),
        Term::Swap(a, b) => write!(f, "swap[{};{}]", word_text(a), word_text(b)),
        Term::Dom(t) => {
            write!(f, "dom(")?;
            write_term(f, t)?;
            write!(f, ")")
        }
        Term::Mass(t) => {
            write!(f, "mass(")?;
            write_term(f, t)?;
            write!(f, ")")
        }
        Term::Seq(a, b) => {
            write_at(f, a, 0)?;
            write!(f, " ; ")?;
            write_at(f, b, 1)
        }
        Term::Tensor(a, b) => {
            write_at(f, a, 1)?;
            write!(f, " * ")?;
            write_at(f, b, 2)
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self)
    }
}

/// Prints a term with the fewest parentheses that re-parse to the same tree.
pub fn print_term(t: &Term) -> String {
    t.to_string()
}

/// Sorts and generator types.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub sorts: Vec<String>,
    pub generators: BTreeMap<String, (Word, Word)>,
}

impl Signature {
    pub fn new(sorts: &[&str]) -> Self {
        Signature { sorts: sorts.iter().map(|s| s.to_string()).collect(), generators: BTreeMap::new() }
    }

    pub fn with_generator(mut self, name: &str, dom: &[&str], cod: &[&str]) -> Self {
        let w = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        self.generators.insert(name.to_string(), (w(dom), w(cod)));
        self
    }

    fn check_word(&self, w: &[String]) -> Result<(), DiagramError> {
        match w.iter().find(|s| !self.sorts.contains(s)) {
            Some(s) => Err(DiagramError::UnknownSort(s.clone())),
            None => Ok(()),
        }
    }
}

fn concat(a: &[String], b: &[String]) -> Word {
    a.iter().chain(b).cloned().collect()
}

/// The boundary `(dom, cod)` of a term.
pub fn typecheck_term(t: &Term, sig: &Signature) -> Result<(Word, Word), DiagramError> {
    match t {
        Term::Id(w) => {
            sig.check_word(w)?;
            Ok((w.clone(), w.clone()))
        }
        Term::Gen(g) => sig.generators.get(g).cloned().ok_or_else(|| DiagramError::UnknownGenerator(g.clone())),
        Term::Copy(w) => {
            sig.check_word(w)?;
            Ok((w.clone(), concat(w, w)))
        }
        Term::Del(w) => {
            sig.check_word(w)?;
            Ok((w.clone(), Vec::new()))
        }
        Term::Swap(a, b) => {
            sig.check_word(a)?;
            sig.check_word(b)?;
            Ok((concat(a, b), concat(b, a)))
        }
        Term::Seq(a, b) => {
            let (x, y) = typecheck_term(a, sig)?;
            let (y2, z) = typecheck_term(b, sig)?;
            if y != y2 {
                return Err(DiagramError::Boundary { context: format!("in `{t}`"), left: word_text(&y), right: word_text(&y2) });
            }
            Ok((x, z))
        }
        Term::Tensor(a, b) => {
            let (x, y) = typecheck_term(a, sig)?;
            let (x2, y2) = typecheck_term(b, sig)?;
            Ok((concat(&x, &x2), concat(&y, &y2)))
        }
        Term::Dom(a) => {
            let (x, _) = typecheck_term(a, sig)?;
            Ok((x.clone(), x))
        }
        Term::Mass(a) => {
            let (x, _) = typecheck_term(a, sig)?;
            Ok((x, Vec::new()))
        }
    }
}
