//! Counterexample arrows as standalone equations.
//!
//! A witness arrow `f : X → Y` becomes an interpretation with sorts `X` and
//! `Y` (omitted when the object is `I`), one generator `f`, and the two sides
//! of the per-arrow equation it violates.

use crate::diagram::{Interpretation, Term, Word};
use crate::semiring::Semiring;
use crate::weightmap::FinSet;
use crate::wrel::{TensorWord, WRel};

#[derive(Clone, Debug)]
pub struct Reproducer {
    pub interpretation: Interpretation,
    pub lhs: Term,
    pub rhs: Term,
}

fn letter(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("e{i}")
    }
}

fn sort_word(w: &TensorWord, name: &str) -> Word {
    if w.is_unit() {
        Vec::new()
    } else {
        vec![name.to_string()]
    }
}

fn labelled(w: &TensorWord, name: &str, offset: usize) -> TensorWord {
    if w.is_unit() {
        return TensorWord::unit();
    }
    let labels = (offset..offset + w.cardinality()).map(letter).collect();
    TensorWord::single(FinSet::labelled(name, labels).expect("letters are distinct"))
}

/// `f` over sets `X = {a, b, ...}` and `Y` labelled by the following letters.
/// Only arrows between single sets or `I` are relabelled.
pub fn relabel(f: &WRel) -> WRel {
    let (d, c) = (f.dom_word(), f.cod_word());
    if d.sets().len() > 1 || c.sets().len() > 1 {
        return f.clone();
    }
    let offset = if d.is_unit() { 0 } else { d.cardinality() };
    WRel::from_rows(labelled(d, "X", 0), labelled(c, "Y", offset), f.rows().to_vec()).expect("same shape")
}

/// The equation a per-arrow flag asserts for `f`, packaged for
/// re-evaluation. Flags are `markov`, `restriction`, `domain_category` and
/// `mass_category`.
pub fn reproducer(flag: &str, sr: &Semiring, f: &WRel) -> Option<Reproducer> {
    let g = relabel(f);
    let (d, c) = (g.dom_word().clone(), g.cod_word().clone());
    if d.sets().len() > 1 || c.sets().len() > 1 {
        return None;
    }
    let (x, y) = (sort_word(&d, "X"), sort_word(&c, "Y"));
    let f_t = Term::gen("f");
    let (lhs, rhs) = match flag {
        "markov" => (Term::seq(f_t, Term::Del(y.clone())), Term::Del(x.clone())),
        "restriction" => (
            Term::seq(f_t.clone(), Term::Copy(y.clone())),
            Term::seq(Term::Copy(x.clone()), Term::tensor(f_t.clone(), f_t)),
        ),
        "domain_category" => (Term::seq(Term::Dom(Box::new(f_t.clone())), f_t.clone()), f_t),
        "mass_category" => (
            Term::seq(Term::Dom(Box::new(f_t.clone())), Term::Mass(Box::new(f_t.clone()))),
            Term::Mass(Box::new(f_t)),
        ),
        _ => return None,
    };
    let mut interp = Interpretation::new(sr.clone());
    for (w, name) in [(&d, "X"), (&c, "Y")] {
        if let Some(s) = w.sets().first() {
            interp.add_sort(name, s).ok()?;
        }
    }
    interp.add_generator("f", x, y, g).ok()?;
    Some(Reproducer { interpretation: interp, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::check_term_equality;
    use crate::semiring::Elem;
    use crate::Status;

    #[test]
    fn nat_domain_witness_reproduces() {
        let n = Semiring::nat();
        let w = TensorWord::of_sizes(&[2]);
        let f = WRel::from_entries(&n, w.clone(), w, [(0, 0, Elem::nat(2))]).unwrap();
        assert_eq!(relabel(&f).render(&n), "{(a,c):2}");
        let r = reproducer("domain_category", &n, &f).unwrap();
        assert_eq!(r.lhs.to_string(), "dom(f) ; f");
        let rep = check_term_equality(&r.lhs, &r.rhs, &r.interpretation).unwrap();
        assert_eq!(rep.status, Status::Counterexample);
        assert_eq!(rep.witness, vec!["(a,c): 4 vs 2".to_string()]);
    }

    #[test]
    fn unit_codomain() {
        let b = Semiring::boolean();
        let f = WRel::zero(TensorWord::of_sizes(&[1]), TensorWord::unit());
        assert_eq!(relabel(&f).dom_word().to_string(), "X");
        let r = reproducer("markov", &b, &f).unwrap();
        assert_eq!(r.lhs.to_string(), "f ; del[]");
        let rep = check_term_equality(&r.lhs, &r.rhs, &r.interpretation).unwrap();
        assert_eq!(rep.status, Status::Counterexample);
        assert!(reproducer("weakly_markov", &b, &f).is_none());
    }
}
