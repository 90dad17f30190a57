//! JSON form of a relation: boundary words plus nonzero entries as
//! `[row labels, column labels, value label]` triples in row-major order.

use serde::{Deserialize, Serialize};

use super::{TensorWord, WRel, WRelError};
use crate::semiring::Semiring;
use crate::weightmap::FinSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WRelDocument {
    pub dom: Vec<FinSet>,
    pub cod: Vec<FinSet>,
    pub entries: Vec<(Vec<String>, Vec<String>, String)>,
}

fn labels(w: &TensorWord, index: usize) -> Vec<String> {
    w.decode(index).iter().zip(w.sets()).map(|(x, s)| s.label(*x)).collect()
}

fn lookup(w: &TensorWord, tuple: &[String]) -> Result<usize, WRelError> {
    if tuple.len() != w.sets().len() {
        return Err(WRelError::BadEntry(format!("tuple {tuple:?} does not fit the word {w}")));
    }
    let ix = tuple
        .iter()
        .zip(w.sets())
        .map(|(l, s)| {
            s.index_of(l)
                .ok_or_else(|| WRelError::BadEntry(format!("`{l}` is not an element of {}", s.name())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(w.encode(&ix).expect("indices checked"))
}

impl WRelDocument {
    pub fn from_wrel(sr: &Semiring, f: &WRel) -> Self {
        WRelDocument {
            dom: f.dom_word().sets().to_vec(),
            cod: f.cod_word().sets().to_vec(),
            entries: f
                .entries()
                .map(|(x, y, v)| (labels(f.dom_word(), x), labels(f.cod_word(), y), sr.label(v)))
                .collect(),
        }
    }

    /// Rejects repeated cells, which a canonical document never contains.
    pub fn to_wrel(&self, sr: &Semiring) -> Result<WRel, WRelError> {
        let dom = TensorWord(self.dom.clone());
        let cod = TensorWord(self.cod.clone());
        let mut seen = std::collections::BTreeSet::new();
        let mut triples = Vec::with_capacity(self.entries.len());
        for (r, c, v) in &self.entries {
            let (x, y) = (lookup(&dom, r)?, lookup(&cod, c)?);
            if !seen.insert((x, y)) {
                return Err(WRelError::BadEntry(format!("cell ({r:?}, {c:?}) listed twice")));
            }
            triples.push((x, y, sr.parse_elem(v)?));
        }
        WRel::from_entries(sr, dom, cod, triples)
    }
}

pub fn to_json(sr: &Semiring, f: &WRel) -> String {
    serde_json::to_string(&WRelDocument::from_wrel(sr, f)).expect("documents always serialize")
}

pub fn from_json(sr: &Semiring, text: &str) -> Result<WRel, WRelError> {
    serde_json::from_str::<WRelDocument>(text)?.to_wrel(sr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Elem;

    #[test]
    fn round_trip_is_bit_exact() {
        let q = Semiring::nonneg_rational();
        let a = FinSet::labelled("A", vec!["a".into(), "b".into()]).unwrap();
        let dom = TensorWord(vec![a.clone(), FinSet::new("N", 2)]);
        let cod = TensorWord::single(a);
        let f = WRel::from_entries(&q, dom, cod, [(0, 1, Elem::rat(1, 3)), (3, 0, Elem::rat(2, 1))]).unwrap();
        let text = to_json(&q, &f);
        assert_eq!(
            text,
            r#"{"dom":[{"name":"A","size":2,"labels":["a","b"]},{"name":"N","size":2}],"cod":[{"name":"A","size":2,"labels":["a","b"]}],"entries":[[["a","0"],["b"],"1/3"],[["b","1"],["a"],"2"]]}"#
        );
        let back = from_json(&q, &text).unwrap();
        assert_eq!(back, f);
        assert_eq!(to_json(&q, &back), text);
    }

    #[test]
    fn unit_words_use_empty_tuples() {
        let b = Semiring::boolean();
        let f = super::super::del(&b, &TensorWord::of_sizes(&[1]));
        let text = to_json(&b, &f);
        assert!(text.contains(r#"[["0"],[],"1"]"#), "{text}");
        assert_eq!(from_json(&b, &text).unwrap(), f);
    }

    #[test]
    fn rejects_bad_documents() {
        let b = Semiring::boolean();
        let head = r#"{"dom":[{"name":"A","size":1}],"cod":[{"name":"A","size":1}],"entries":"#;
        assert!(from_json(&b, &format!("{head}[[[\"1\"],[\"0\"],\"1\"]]}}")).is_err());
        assert!(from_json(&b, &format!("{head}[[[\"0\"],[\"0\"],\"7\"]]}}")).is_err());
        assert!(from_json(&b, &format!("{head}[[[\"0\"],[\"0\"],\"1\"],[[\"0\"],[\"0\"],\"1\"]]}}")).is_err());
        assert!(from_json(&b, &format!("{head}[[[\"0\",\"0\"],[\"0\"],\"1\"]]}}")).is_err());
    }
}
