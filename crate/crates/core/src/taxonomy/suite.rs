//! The theorem suite: monad-level and category-level classifications
//! cross-checked over a catalog of semirings.
//!
//! Implications that follow row by row from the definitions always gate.
//! `unital_domain_preserving ⇔ mass_category` and the two decompositions
//! (of `markov` and of `affine`) need the variant to be a sub-monad, so they
//! gate only when every closure law held for the pair.

use rand::Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;

use super::kleisli::{classify_on, hom_sets, Hom};
use super::laws::closed;
use super::{classify_monad, draw, map_pool, check_monad_laws, CheckConfig, KleisliClassification, MonadClassification, TaxonomyError};
use crate::report::{check_cases, LawReport, Status};
use crate::rng;
use crate::semiring::{check_semiring_laws, classify_semiring, Semiring};
use crate::weightmap::{MapPool, Variant};
use crate::wrel::{
    canonical_semigroup_mul, check_gs_axioms, compose, copy, del, dom, dom_via_kleisli_path, hom_scalar_mul,
    identity, mass, tensor, words_up_to, TensorWord, WRel,
};

/// bool, gf(2), gf(3), nat, nonneg-rational, fuzzy-max-min, fuzzy-max-times.
pub fn default_catalog() -> Vec<Semiring> {
    vec![
        Semiring::boolean(),
        Semiring::gf(2).expect("2 is prime"),
        Semiring::gf(3).expect("3 is prime"),
        Semiring::nat(),
        Semiring::nonneg_rational(),
        Semiring::fuzzy_max_min(),
        Semiring::fuzzy_max_times(),
    ]
}

/// Gating counterexamples.
pub fn inconsistencies(reports: &[LawReport]) -> Vec<&LawReport> {
    reports.iter().filter(|r| r.is_inconsistency()).collect()
}

struct Cell {
    reports: Vec<LawReport>,
    monad: MonadClassification,
    kleisli: KleisliClassification,
    arrows: Vec<WRel>,
}

fn relation(law: &str, ok: bool, exhaustive: bool, detail: String) -> LawReport {
    if ok {
        LawReport::new(law, if exhaustive { Status::ExhaustivePass } else { Status::SampledPass }, 1)
    } else {
        LawReport::counterexample(law, vec![detail], 1)
    }
}

fn hypothesis(r: LawReport, closed: bool) -> LawReport {
    if closed {
        r
    } else {
        r.with_gate(false).with_note("the variant is not closed under the monad structure here, so the statement does not apply")
    }
}

fn eq_report(sr: &Semiring, lhs: &WRel, rhs: &WRel, f: &WRel) -> Result<(), Vec<String>> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(vec![f.render(sr), lhs.first_difference(sr, rhs).unwrap_or_default()])
    }
}

/// `count` seeded arrows between sets of the ladder sizes, 3, and `I`.
fn seeded_arrows(sr: &Semiring, variant: Variant, cfg: &CheckConfig, count: usize) -> Vec<WRel> {
    let mut words: Vec<TensorWord> = cfg.ladder().iter().chain([&3]).map(|n| TensorWord::of_sizes(&[*n])).collect();
    words.dedup();
    words.push(TensorWord::unit());
    let mut pools: BTreeMap<usize, MapPool> = BTreeMap::new();
    let mut r = rng::stream(cfg.seed, &format!("path-arrows/{}/{variant}", sr.name()));
    let mut out = Vec::new();
    for _ in 0..count * 10 {
        if out.len() >= count {
            break;
        }
        let x = &words[r.gen_range(0..words.len())];
        let y = &words[r.gen_range(0..words.len())];
        let n = y.cardinality();
        let pool = pools.entry(n).or_insert_with(|| map_pool(sr, n, variant, cfg));
        if pool.maps.is_empty() {
            continue;
        }
        let rows = (0..x.cardinality()).map(|_| pool.maps[r.gen_range(0..pool.maps.len())].clone()).collect();
        out.push(WRel::from_rows(x.clone(), y.clone(), rows).expect("rows sized by construction"));
    }
    out
}

fn run_cell(sr: &Semiring, variant: Variant, cfg: &CheckConfig) -> Cell {
    let laws = check_monad_laws(sr, variant, cfg);
    let is_closed = closed(&laws);
    let mc = classify_monad(sr, variant, cfg).expect("config validated");
    let homs: Vec<Hom> = hom_sets(sr, variant, cfg);
    let kc = classify_on(sr, variant, cfg, &homs);
    let arrows: Vec<WRel> = homs.iter().flat_map(|h| h.arrows.iter().cloned()).collect();

    let m_ex = mc.domain_preserving.pointwise.status == Status::ExhaustivePass;
    let ex = m_ex && kc.exhaustive;
    let (dp, mp, udp) = (mc.domain_preserving.value, mc.mass_preserving.value, mc.unital_domain_preserving.value);
    let (aff, rel, waff) = (mc.affine.value, mc.relevant.value, mc.weakly_affine.value);
    let (dc, mcat, mk, rs, wm) =
        (kc.domain_category.value, kc.mass_category.value, kc.markov.value, kc.restriction.value, kc.weakly_markov.value);
    let iff = |a: bool, b: bool, an: &str, bn: &str| format!("{an} = {a}, {bn} = {b}");

    let mut theorems = vec![
        relation("thm.domain_preserving_iff_domain_category", dp == dc, ex, iff(dp, dc, "domain_preserving", "domain_category")),
        relation("thm.mass_preserving_iff_mass_category", mp == mcat, ex, iff(mp, mcat, "mass_preserving", "mass_category")),
        hypothesis(
            relation("thm.unital_domain_preserving_iff_mass_category", udp == mcat, ex, iff(udp, mcat, "unital_domain_preserving", "mass_category")),
            is_closed,
        ),
        hypothesis(
            relation(
                "thm.markov_iff_weakly_markov_and_mass_category",
                mk == (wm && mcat),
                ex,
                format!("markov = {mk}, weakly_markov = {wm}, mass_category = {mcat}"),
            )
            .with_note("the unital domain category condition is read as the mass-category predicate"),
            is_closed,
        ),
        hypothesis(
            relation(
                "thm.affine_iff_weakly_affine_and_unital_domain_preserving",
                aff == (waff && udp),
                ex,
                format!("affine = {aff}, weakly_affine = {waff}, unital_domain_preserving = {udp}"),
            ),
            is_closed,
        ),
        relation("thm.weakly_affine_iff_weakly_markov", waff == wm, ex, iff(waff, wm, "weakly_affine", "weakly_markov")),
        relation("thm.affine_iff_markov", aff == mk, ex, iff(aff, mk, "affine", "markov")),
        relation("thm.relevant_iff_restriction", rel == rs, ex, iff(rel, rs, "relevant", "restriction")),
        relation(
            "thm.domain_implies_mass_implies_unital",
            (!dp || mp) && (!mp || udp),
            ex,
            format!("domain_preserving = {dp}, mass_preserving = {mp}, unital_domain_preserving = {udp}"),
        ),
        relation("thm.affine_implies_domain_preserving", !aff || dp, ex, iff(aff, dp, "affine", "domain_preserving")),
        relation("thm.relevant_implies_domain_preserving", !rel || dp, ex, iff(rel, dp, "relevant", "domain_preserving")),
        relation("thm.markov_implies_domain_category", !mk || dc, ex, iff(mk, dc, "markov", "domain_category")),
        relation("thm.restriction_implies_domain_category", !rs || dc, ex, iff(rs, dc, "restriction", "domain_category")),
    ];

    let seeded = seeded_arrows(sr, variant, cfg, 100);
    theorems.push(check_cases("thm.dom_kleisli_path_seeded", seeded.iter(), false, |f| {
        eq_report(sr, &dom_via_kleisli_path(sr, f), &compose(sr, &dom(sr, f), f).expect("boundaries match"), f)
    }));
    theorems.push(check_cases("lemma.dom_of_mass", arrows.iter(), kc.exhaustive, |f| {
        eq_report(sr, &dom(sr, &mass(sr, f)), &dom(sr, f), f)
    }));
    if dc {
        theorems.push(check_cases("lemma.dom_of_copy", arrows.iter(), kc.exhaustive, |f| {
            let g = compose(sr, f, &copy(sr, f.cod_word())).expect("boundaries match");
            eq_report(sr, &dom(sr, &g), &dom(sr, f), f)
        }));
        theorems.push(check_cases("lemma.dom_of_copied_pair", arrows.iter(), kc.exhaustive, |f| {
            let g = compose(sr, &copy(sr, f.dom_word()), &tensor(sr, f, f)).expect("boundaries match");
            eq_report(sr, &dom(sr, &g), &dom(sr, f), f)
        }));
    } else {
        for law in ["lemma.dom_of_copy", "lemma.dom_of_copied_pair"] {
            theorems.push(LawReport::skipped(law, "holds in domain categories only"));
        }
    }
    theorems.extend(hom_monoid_laws(sr, variant, cfg, &homs));

    let mut reports = laws;
    reports.extend(mc.reports());
    reports.extend(kc.reports());
    reports.extend(theorems.into_iter().map(|r| r.with_semiring(sr.name()).with_variant(variant.as_str())));
    Cell { reports, monad: mc, kleisli: kc, arrows }
}

/// `hom(Y, I)` is a commutative monoid under `f · g = ∇ ; (f ⊗ g)` with
/// unit `!`.
fn hom_monoid_laws(sr: &Semiring, variant: Variant, cfg: &CheckConfig, homs: &[Hom]) -> Vec<LawReport> {
    let mut unit = Vec::new();
    let mut comm = Vec::new();
    let mut assoc = Vec::new();
    for h in homs.iter().filter(|h| h.cod.is_unit()) {
        let tag = format!("hom-monoid/{}/{variant}/{}", sr.name(), h.dom);
        let e = del(sr, &h.dom);
        let mul = |f: &WRel, g: &WRel| hom_scalar_mul(sr, f, g).expect("same hom-set");
        unit.push(check_cases("prop.hom_monoid.unit", h.arrows.iter(), h.complete, |f| {
            eq_report(sr, &mul(&e, f), f, f)?;
            eq_report(sr, &mul(f, &e), f, f)
        }));
        let (pairs, all2) = draw(&h.arrows, 2, h.complete, cfg, &format!("{tag}/2"));
        comm.push(check_cases("prop.hom_monoid.commutative", pairs.iter(), all2, |p| {
            eq_report(sr, &mul(&p[0], &p[1]), &mul(&p[1], &p[0]), &p[0])
        }));
        let (triples, all3) = draw(&h.arrows, 3, h.complete, cfg, &format!("{tag}/3"));
        assoc.push(check_cases("prop.hom_monoid.associative", triples.iter(), all3, |p| {
            eq_report(sr, &mul(&mul(&p[0], &p[1]), &p[2]), &mul(&p[0], &mul(&p[1], &p[2])), &p[0])
        }));
    }
    use crate::report::merge;
    vec![
        merge("prop.hom_monoid.unit", &unit),
        merge("prop.hom_monoid.commutative", &comm),
        merge("prop.hom_monoid.associative", &assoc),
    ]
}

/// `∇ ; Δ = id` for the canonical semigroup `Δ = id ⊗ !` on every word of
/// total size at most 4.
fn cansem(sr: &Semiring) -> LawReport {
    check_cases("lemma.copy_then_semigroup_is_identity", words_up_to(4), true, |w| {
        let lhs = compose(sr, &copy(sr, w), &canonical_semigroup_mul(sr, w)).expect("boundaries match");
        let id = identity(sr, w);
        eq_report(sr, &lhs, &id, &id)
    })
}

fn lattice_coincidence(sr: &Semiring, is_lattice: bool, m: &Cell, md: &Cell) -> LawReport {
    let law = "lattice.m_equals_md";
    if !is_lattice {
        return LawReport::skipped(law, "the semiring is not a distributive lattice");
    }
    let flags = |c: &Cell| -> Vec<bool> {
        let mut v: Vec<bool> = c.monad.flags().iter().map(|(_, f)| f.value).collect();
        v.extend(c.kleisli.flags().iter().map(|(_, f)| f.value));
        v
    };
    let exhaustive = m.kleisli.exhaustive && md.kleisli.exhaustive;
    if m.arrows != md.arrows {
        let first = m.arrows.iter().zip(&md.arrows).find(|(a, b)| a != b);
        let detail = match first {
            Some((a, b)) => format!("{} vs {}", a.render(sr), b.render(sr)),
            None => format!("{} vs {} arrows", m.arrows.len(), md.arrows.len()),
        };
        return LawReport::counterexample(law, vec!["arrow sets differ".into(), detail], 1);
    }
    if flags(m) != flags(md) {
        return LawReport::counterexample(law, vec!["classifications differ".into()], 1);
    }
    let status = if exhaustive { Status::ExhaustivePass } else { Status::SampledPass };
    LawReport::new(law, status, m.arrows.len() as u64)
}

fn semiring_reports(sr: &Semiring, cfg: &CheckConfig) -> Vec<LawReport> {
    let mut out = check_semiring_laws(sr, cfg.budget);
    out.extend(check_gs_axioms(sr, 4));
    out.push(cansem(sr));
    out.into_iter().map(|r| r.with_semiring(sr.name())).collect()
}

/// Runs every suite over every (semiring, variant) pair of the catalog. The
/// cells run in parallel; the report order is fixed: per semiring, its
/// axioms and the structural laws, then each variant in turn, then the
/// lattice coincidence check.
pub fn run_theorem_suite(catalog: &[Semiring], cfg: &CheckConfig) -> Result<Vec<LawReport>, TaxonomyError> {
    cfg.validate()?;
    let per_semiring: Vec<Vec<LawReport>> = catalog
        .par_iter()
        .map(|sr| {
            let head = semiring_reports(sr, cfg);
            let cells: Vec<Cell> = Variant::ALL.par_iter().map(|v| run_cell(sr, *v, cfg)).collect();
            let is_lattice = classify_semiring(sr, cfg.budget).distributive_lattice;
            let tail = lattice_coincidence(sr, is_lattice, &cells[0], &cells[4]).with_semiring(sr.name());
            let mut out = head;
            for c in cells {
                out.extend(c.reports);
            }
            out.push(tail);
            out
        })
        .collect();
    Ok(per_semiring.into_iter().flatten().collect())
}
