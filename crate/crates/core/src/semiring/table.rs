use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::SemiringError;

/// On-disk form of a finite semiring given by operation tables.
///
/// ```json
/// { "name": "bool-table",
///   "elements": ["0", "1"],
///   "plus":  [["0", "1"], ["1", "1"]],
///   "times": [["0", "0"], ["0", "1"]],
///   "zero": "0", "one": "1" }
/// ```
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDocument {
    #[serde(default)]
    pub name: Option<String>,
    pub elements: Vec<String>,
    pub plus: Vec<Vec<String>>,
    pub times: Vec<Vec<String>>,
    pub zero: String,
    pub one: String,
}

/// A validated finite carrier with its two operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    name: String,
    labels: Vec<String>,
    plus: Vec<Vec<u32>>,
    times: Vec<Vec<u32>>,
    pub(super) zero: u32,
    pub(super) one: u32,
}

impl Table {
    pub fn from_document(doc: TableDocument) -> Result<Self, SemiringError> {
        let n = doc.elements.len();
        if n == 0 {
            return Err(SemiringError::MalformedTable("`elements` is empty".into()));
        }
        let mut index = BTreeMap::new();
        for (i, l) in doc.elements.iter().enumerate() {
            if index.insert(l.clone(), i as u32).is_some() {
                return Err(SemiringError::MalformedTable(format!("duplicate element `{l}`")));
            }
        }
        let lookup = |op: &'static str, l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| SemiringError::NotClosed { op, entry: l.to_string() })
        };
        let table = |op: &'static str, rows: &[Vec<String>]| -> Result<Vec<Vec<u32>>, SemiringError> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(SemiringError::MalformedTable(format!("`{op}` must be a {n}x{n} table")));
            }
            rows.iter()
                .map(|r| r.iter().map(|l| lookup(op, l)).collect())
                .collect()
        };
        let plus = table("plus", &doc.plus)?;
        let times = table("times", &doc.times)?;
        let zero = lookup("zero", &doc.zero)?;
        let one = lookup("one", &doc.one)?;
        Ok(Table {
            name: doc.name.unwrap_or_else(|| "table".into()),
            labels: doc.elements,
            plus,
            times,
            zero,
            one,
        })
    }

    pub fn to_document(&self) -> TableDocument {
        let render = |t: &[Vec<u32>]| {
            t.iter()
                .map(|r| r.iter().map(|i| self.labels[*i as usize].clone()).collect())
                .collect()
        };
        TableDocument {
            name: Some(self.name.clone()),
            elements: self.labels.clone(),
            plus: render(&self.plus),
            times: render(&self.times),
            zero: self.labels[self.zero as usize].clone(),
            one: self.labels[self.one as usize].clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub(super) fn plus(&self, a: u32, b: u32) -> u32 {
        self.plus[a as usize][b as usize]
    }

    pub(super) fn times(&self, a: u32, b: u32) -> u32 {
        self.times[a as usize][b as usize]
    }

    pub(super) fn label(&self, a: u32) -> &str {
        &self.labels[a as usize]
    }

    pub(super) fn index_of(&self, label: &str) -> Option<u32> {
        self.labels.iter().position(|l| l == label).map(|i| i as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(plus: [[&str; 2]; 2]) -> TableDocument {
        let t = |m: [[&str; 2]; 2]| m.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
        TableDocument {
            name: None,
            elements: vec!["0".into(), "1".into()],
            plus: t(plus),
            times: t([["0", "0"], ["0", "1"]]),
            zero: "0".into(),
            one: "1".into(),
        }
    }

    #[test]
    fn rejects_duplicates_and_unclosed_tables() {
        let mut d = doc([["0", "1"], ["1", "1"]]);
        d.elements[1] = "0".into();
        assert!(matches!(Table::from_document(d), Err(SemiringError::MalformedTable(_))));
        let d = doc([["0", "1"], ["1", "2"]]);
        assert!(matches!(Table::from_document(d), Err(SemiringError::NotClosed { op: "plus", .. })));
        let mut d = doc([["0", "1"], ["1", "1"]]);
        d.times.pop();
        assert!(matches!(Table::from_document(d), Err(SemiringError::MalformedTable(_))));
    }

    #[test]
    fn document_round_trip() {
        let t = Table::from_document(doc([["0", "1"], ["1", "1"]])).unwrap();
        let again = Table::from_document(t.to_document()).unwrap();
        assert_eq!(t, again);
    }
}
