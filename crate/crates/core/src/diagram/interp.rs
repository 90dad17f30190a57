//! Interpretations of a signature in weighted relations, and evaluation.
//!
//! Interpretation files are JSON:
//!
//! ```json
//! { "semiring": "bool",
//!   "sorts": { "A": { "labels": ["a", "b"] }, "B": { "size": 1 } },
//!   "generators": {
//!     "f": { "dom": ["A"], "cod": ["B"], "entries": [[["a"], ["0"], "1"]] } } }
//! ```
//!
//! `semiring` is a builtin name, a path to a table file (relative to the
//! interpretation file), or `{"table": {...}}` with the table inline.
//! Generator entries use the relation serialization, with boundary words
//! given as sort names.

use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

use super::{typecheck_term, DiagramError, Signature, Term, Word};
use crate::report::{LawReport, Status};
use crate::rng;
use crate::semiring::{load_semiring, Semiring, Table, TableDocument};
use crate::space::Odometer;
use crate::weightmap::{EnumMode, FinSet, Variant};
use crate::wrel::{self, enumerate_arrows, TensorWord, WRel, WRelDocument};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SemiringRef {
    Name(String),
    Table { table: TableDocument },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SortDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorDoc {
    dom: Word,
    cod: Word,
    entries: Vec<(Vec<String>, Vec<String>, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpretationDoc {
    semiring: SemiringRef,
    sorts: BTreeMap<String, SortDoc>,
    #[serde(default)]
    generators: BTreeMap<String, GeneratorDoc>,
}

/// A semiring, a finite set per sort, and a relation per generator.
#[derive(Clone, Debug)]
pub struct Interpretation {
    pub semiring: Semiring,
    sorts: BTreeMap<String, FinSet>,
    generators: BTreeMap<String, (Word, Word, WRel)>,
}

impl Interpretation {
    pub fn new(semiring: Semiring) -> Self {
        Interpretation { semiring, sorts: BTreeMap::new(), generators: BTreeMap::new() }
    }

    /// Adds a sort. The set's own name is replaced by the sort name.
    pub fn add_sort(&mut self, name: &str, set: &FinSet) -> Result<(), DiagramError> {
        let renamed = match labels_of(set) {
            Some(l) => FinSet::labelled(name, l).map_err(|e| DiagramError::Interpretation(e.to_string()))?,
            None => FinSet::new(name, set.size()),
        };
        self.sorts.insert(name.to_string(), renamed);
        Ok(())
    }

    pub fn sort(&self, name: &str) -> Option<&FinSet> {
        self.sorts.get(name)
    }

    pub fn word(&self, w: &[String]) -> Result<TensorWord, DiagramError> {
        w.iter()
            .map(|s| self.sorts.get(s).cloned().ok_or_else(|| DiagramError::UnknownSort(s.clone())))
            .collect::<Result<Vec<_>, _>>()
            .map(TensorWord)
    }

    /// Adds a generator; its relation must have the boundary the sort words
    /// denote.
    pub fn add_generator(&mut self, name: &str, dom: Word, cod: Word, rel: WRel) -> Result<(), DiagramError> {
        let (d, c) = (self.word(&dom)?, self.word(&cod)?);
        if rel.dom_word().cardinality() != d.cardinality()
            || rel.cod_word().cardinality() != c.cardinality()
            || rel.dom_word().sets().len() != d.sets().len()
            || rel.cod_word().sets().len() != c.sets().len()
        {
            return Err(DiagramError::Interpretation(format!(
                "generator `{name}` has boundary {} → {}, expected {d} → {c}",
                rel.dom_word(),
                rel.cod_word()
            )));
        }
        let sizes_match = |a: &TensorWord, b: &TensorWord| a.sets().iter().zip(b.sets()).all(|(x, y)| x.size() == y.size());
        if !sizes_match(rel.dom_word(), &d) || !sizes_match(rel.cod_word(), &c) {
            return Err(DiagramError::Interpretation(format!("generator `{name}`: component sizes differ from its sorts")));
        }
        let rows = rel.rows().to_vec();
        let rel = WRel::from_rows(d, c, rows)?;
        self.generators.insert(name.to_string(), (dom, cod, rel));
        Ok(())
    }

    pub fn generator(&self, name: &str) -> Option<&WRel> {
        self.generators.get(name).map(|(_, _, r)| r)
    }

    pub fn signature(&self) -> Signature {
        Signature {
            sorts: self.sorts.keys().cloned().collect(),
            generators: self.generators.iter().map(|(n, (d, c, _))| (n.clone(), (d.clone(), c.clone()))).collect(),
        }
    }

    pub fn from_doc(doc: InterpretationDoc, base: Option<&Path>) -> Result<Self, DiagramError> {
        let semiring = match &doc.semiring {
            SemiringRef::Name(n) => {
                let spec = match base {
                    Some(dir) if Semiring::builtin(n).is_err() => dir.join(n).to_string_lossy().into_owned(),
                    _ => n.clone(),
                };
                load_semiring(&spec)?
            }
            SemiringRef::Table { table } => {
                let sr = Semiring::from_table(Table::from_document(table.clone())?);
                verify_table(&sr)?;
                sr
            }
        };
        let mut out = Interpretation::new(semiring);
        for (name, s) in &doc.sorts {
            let set = match (&s.size, &s.labels) {
                (_, Some(l)) => {
                    let set = FinSet::labelled(name.clone(), l.clone()).map_err(|e| DiagramError::Interpretation(e.to_string()))?;
                    if s.size.is_some_and(|n| n != l.len()) {
                        return Err(DiagramError::Interpretation(format!("sort `{name}`: size and labels disagree")));
                    }
                    set
                }
                (Some(n), None) => FinSet::new(name.clone(), *n),
                (None, None) => return Err(DiagramError::Interpretation(format!("sort `{name}` needs a size or labels"))),
            };
            out.sorts.insert(name.clone(), set);
        }
        for (name, g) in &doc.generators {
            let (d, c) = (out.word(&g.dom)?, out.word(&g.cod)?);
            let rel = WRelDocument { dom: d.sets().to_vec(), cod: c.sets().to_vec(), entries: g.entries.clone() }
                .to_wrel(&out.semiring)
                .map_err(|e| DiagramError::Interpretation(format!("generator `{name}`: {e}")))?;
            out.generators.insert(name.clone(), (g.dom.clone(), g.cod.clone(), rel));
        }
        Ok(out)
    }

    pub fn from_json(text: &str, base: Option<&Path>) -> Result<Self, DiagramError> {
        Self::from_doc(serde_json::from_str(text)?, base)
    }

    pub fn load(path: &Path) -> Result<Self, DiagramError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| DiagramError::Interpretation(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text, path.parent())
    }

    pub fn to_doc(&self) -> InterpretationDoc {
        let semiring = match self.semiring.table() {
            Some(t) => SemiringRef::Table { table: t.to_document() },
            None => SemiringRef::Name(self.semiring.name().to_string()),
        };
        let sorts = self
            .sorts
            .iter()
            .map(|(n, s)| {
                let doc = match labels_of(s) {
                    Some(l) => SortDoc { size: None, labels: Some(l) },
                    None => SortDoc { size: Some(s.size()), labels: None },
                };
                (n.clone(), doc)
            })
            .collect();
        let generators = self
            .generators
            .iter()
            .map(|(n, (d, c, r))| {
                let entries = WRelDocument::from_wrel(&self.semiring, r).entries;
                (n.clone(), GeneratorDoc { dom: d.clone(), cod: c.clone(), entries })
            })
            .collect();
        InterpretationDoc { semiring, sorts, generators }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("documents always serialize")
    }
}

/// Element labels, unless they are the default `0, 1, ...`.
fn labels_of(set: &FinSet) -> Option<Vec<String>> {
    let labels: Vec<String> = (0..set.size()).map(|i| set.label(i)).collect();
    labels.iter().enumerate().any(|(i, l)| *l != i.to_string()).then_some(labels)
}

fn verify_table(sr: &Semiring) -> Result<(), DiagramError> {
    let bad = crate::semiring::check_semiring_laws(sr, crate::semiring::DEFAULT_BUDGET)
        .into_iter()
        .find(|r| !r.holds());
    match bad {
        Some(r) => Err(crate::semiring::SemiringError::AxiomViolation { law: r.law, witness: r.witness.join(", ") }.into()),
        None => Ok(()),
    }
}

/// Evaluates a term, expanding `dom` and `mass` to their defining composites.
pub fn evaluate_term(t: &Term, interp: &Interpretation) -> Result<WRel, DiagramError> {
    typecheck_term(t, &interp.signature())?;
    eval(t, interp)
}

fn eval(t: &Term, i: &Interpretation) -> Result<WRel, DiagramError> {
    let sr = &i.semiring;
    Ok(match t {
        Term::Id(w) => wrel::identity(sr, &i.word(w)?),
        Term::Gen(g) => i.generator(g).cloned().ok_or_else(|| DiagramError::UnknownGenerator(g.clone()))?,
        Term::Copy(w) => wrel::copy(sr, &i.word(w)?),
        Term::Del(w) => wrel::del(sr, &i.word(w)?),
        Term::Swap(a, b) => wrel::swap(sr, &i.word(a)?, &i.word(b)?),
        Term::Seq(a, b) => wrel::compose(sr, &eval(a, i)?, &eval(b, i)?)?,
        Term::Tensor(a, b) => wrel::tensor(sr, &eval(a, i)?, &eval(b, i)?),
        Term::Dom(a) => wrel::dom(sr, &eval(a, i)?),
        Term::Mass(a) => wrel::mass(sr, &eval(a, i)?),
    })
}

fn equation_name(lhs: &Term, rhs: &Term) -> String {
    format!("{lhs} = {rhs}")
}

fn same_boundary(lhs: &Term, rhs: &Term, sig: &Signature) -> Result<(), DiagramError> {
    let (a, b) = (typecheck_term(lhs, sig)?, typecheck_term(rhs, sig)?);
    if a != b {
        return Err(DiagramError::Boundary {
            context: format!("equation {}", equation_name(lhs, rhs)),
            left: format!("{} → {}", a.0.join(","), a.1.join(",")),
            right: format!("{} → {}", b.0.join(","), b.1.join(",")),
        });
    }
    Ok(())
}

/// Compares two terms under one interpretation. The witness of a failure is
/// the first entry where the two relations differ.
pub fn check_term_equality(lhs: &Term, rhs: &Term, interp: &Interpretation) -> Result<LawReport, DiagramError> {
    same_boundary(lhs, rhs, &interp.signature())?;
    let (a, b) = (eval(lhs, interp)?, eval(rhs, interp)?);
    let law = equation_name(lhs, rhs);
    let report = match a.first_difference(&interp.semiring, &b) {
        None => LawReport::new(law, Status::ExhaustivePass, 1),
        Some(diff) => LawReport::counterexample(law, vec![diff], 1),
    };
    Ok(report.with_semiring(interp.semiring.name()))
}

/// Checks an equation in every model of `sig` over `sr` with sort sizes from
/// `sizes`: all generator assignments when their number fits the budget,
/// otherwise `law_samples` seeded ones per size assignment.
#[allow(clippy::too_many_arguments)]
pub fn check_equation_over_models(
    lhs: &Term,
    rhs: &Term,
    sig: &Signature,
    sr: &Semiring,
    sizes: &[usize],
    mode: EnumMode,
    arrow_samples: usize,
    law_samples: usize,
) -> Result<LawReport, DiagramError> {
    same_boundary(lhs, rhs, sig)?;
    let (budget, seed) = match mode {
        EnumMode::Exhaustive => (u64::MAX, 0),
        EnumMode::Sampled { seed, .. } => (0, seed),
        EnumMode::Auto { budget, seed, .. } => (budget, seed),
    };
    let law = equation_name(lhs, rhs);
    let mut exhaustive = true;
    let mut checks = 0u64;
    let mut r = rng::stream(seed, &law);
    for choice in Odometer::new(sizes.len(), sig.sorts.len()) {
        let mut interp = Interpretation::new(sr.clone());
        for (s, i) in sig.sorts.iter().zip(&choice) {
            interp.sorts.insert(s.clone(), FinSet::new(s.clone(), sizes[*i]));
        }
        let mut pools = Vec::new();
        for (g, (d, c)) in &sig.generators {
            let pool = enumerate_arrows(sr, &interp.word(d)?, &interp.word(c)?, Variant::M, mode, arrow_samples)
                .map_err(|e| DiagramError::Interpretation(e.to_string()))?;
            exhaustive &= pool.exhaustive;
            pools.push((g.clone(), d.clone(), c.clone(), pool.arrows));
        }
        if pools.iter().any(|p| p.3.is_empty()) {
            continue;
        }
        let count = pools.iter().fold(1u64, |acc, p| acc.saturating_mul(p.3.len() as u64));
        let picks: Vec<Vec<usize>> = if count <= budget {
            let mut all = vec![Vec::new()];
            for p in &pools {
                all = all.into_iter().flat_map(|v| (0..p.3.len()).map(move |i| [v.clone(), vec![i]].concat())).collect();
            }
            all
        } else {
            exhaustive = false;
            (0..law_samples).map(|_| pools.iter().map(|p| r.gen_range(0..p.3.len())).collect()).collect()
        };
        for pick in picks {
            for (p, i) in pools.iter().zip(&pick) {
                interp.generators.insert(p.0.clone(), (p.1.clone(), p.2.clone(), p.3[*i].clone()));
            }
            checks += 1;
            let (a, b) = (eval(lhs, &interp)?, eval(rhs, &interp)?);
            if let Some(diff) = a.first_difference(sr, &b) {
                let mut witness: Vec<String> = sig.sorts.iter().map(|s| format!("|{s}|={}", interp.sorts[s].size())).collect();
                witness.extend(interp.generators.iter().map(|(g, (_, _, rel))| format!("{g}={}", rel.render(sr))));
                witness.push(diff);
                return Ok(LawReport::counterexample(law, witness, checks).with_semiring(sr.name()));
            }
        }
    }
    let status = if exhaustive { Status::ExhaustivePass } else { Status::SampledPass };
    Ok(LawReport::new(law, status, checks).with_semiring(sr.name()))
}

/// A seeded interpretation: each sort gets a size in `1..=max_size`, each
/// generator a relation whose entries are zero with probability 1/2 and a
/// random element otherwise.
pub fn random_interpretation(sig: &Signature, sr: &Semiring, max_size: usize, seed: u64) -> Interpretation {
    let mut r = rng::stream(seed, &format!("interpretation/{}", sr.name()));
    let mut interp = Interpretation::new(sr.clone());
    for s in &sig.sorts {
        interp.sorts.insert(s.clone(), FinSet::new(s.clone(), r.gen_range(1..=max_size.max(1))));
    }
    for (g, (d, c)) in &sig.generators {
        let (dw, cw) = (interp.word(d).expect("declared sorts"), interp.word(c).expect("declared sorts"));
        let mut triples = Vec::new();
        for x in 0..dw.cardinality() {
            for y in 0..cw.cardinality() {
                if r.gen_bool(0.5) {
                    triples.push((x, y, sr.random_elem(&mut r)));
                }
            }
        }
        let rel = WRel::from_entries(sr, dw, cw, triples).expect("indices in range");
        interp.generators.insert(g.clone(), (d.clone(), c.clone(), rel));
    }
    interp
}

/// The seven gs-monoidal axiom schemas as term pairs over sorts `A`, `B`,
/// with the signature they live in (one generator `f: A → B`, unused by the
/// axioms, so that interpretations are not purely structural).
pub fn axiom_pairs() -> (Signature, Vec<(&'static str, Term, Term)>) {
    let sig = Signature::new(&["A", "B"]).with_generator("f", &["A"], &["B"]);
    let p = |s: &str| super::parse_term(s).expect("axiom terms parse");
    let pairs = vec![
        ("copy_multiplicative", p("copy[A,B]"), p("copy[A] * copy[B] ; id[A] * swap[A;B] * id[B]")),
        ("del_multiplicative", p("del[A,B]"), p("del[A] * del[B]")),
        ("copy_unit", p("copy[]"), p("id[]")),
        ("del_unit", p("del[]"), p("id[]")),
        ("coassociative", p("copy[A] ; copy[A] * id[A]"), p("copy[A] ; id[A] * copy[A]")),
        ("cocommutative", p("copy[A] ; swap[A;A]"), p("copy[A]")),
        ("counit", p("copy[A] ; id[A] * del[A]"), p("id[A]")),
    ];
    (sig, pairs)
}
