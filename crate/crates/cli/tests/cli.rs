use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

fn gsrel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsrel"))
        .args(args)
        .env_remove("GSREL_BUDGET")
        .env_remove("GSREL_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_semiring_examples() {
    let b = gsrel(&["check-semiring", "bool"]);
    assert_eq!(b.status.code(), Some(0));
    assert!(stdout(&b).contains("distributive_lattice: true"));
    let n = gsrel(&["check-semiring", "nat"]);
    assert_eq!(n.status.code(), Some(0));
    assert!(stdout(&n).contains("mult_idempotent: false (witness 2)"));
    assert_eq!(gsrel(&["check-semiring", &data("bad-table.txt")]).status.code(), Some(2));
    assert_eq!(gsrel(&["check-semiring", &data("bool.table.json")]).status.code(), Some(0));
}

#[test]
fn table_violating_an_axiom_is_refuted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    std::fs::write(
        &path,
        r#"{"elements":["0","1"],"plus":[["0","1"],["1","0"]],"times":[["0","0"],["0","0"]],"zero":"0","one":"1"}"#,
    )
    .unwrap();
    let o = gsrel(&["check-semiring", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample"));
}

#[test]
fn classify_examples() {
    let b = stdout(&gsrel(&["classify", "bool", "--variant", "M"]));
    assert!(b.lines().any(|l| l.starts_with("domain_category") && l.contains("true")));
    assert!(b.lines().any(|l| l.starts_with("markov") && l.contains("false")));
    let n = gsrel(&["classify", "nat", "--variant", "M"]);
    assert_eq!(n.status.code(), Some(0));
    let line = stdout(&n).lines().find(|l| l.starts_with("domain_category")).unwrap().to_string();
    assert!(line.contains("false") && line.contains("{(a,c):2}"), "{line}");
    let q = stdout(&gsrel(&["classify", "q+", "--variant", "Mi"]));
    assert!(q.lines().any(|l| l.starts_with("weakly_markov") && l.contains("true")));
    assert_eq!(gsrel(&["classify", "bool", "--variant", "Mz"]).status.code(), Some(2));
    assert_eq!(gsrel(&["classify", "bool", "--sizes", ""]).status.code(), Some(2));
}

#[test]
fn witnesses_reproduce_through_eq() {
    let dir = tempfile::tempdir().unwrap();
    let o = gsrel(&["classify", "nat", "--witness-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let p = |s: &str| dir.path().join(s).display().to_string();
    for flag in ["markov", "restriction", "domain_category", "mass_category"] {
        let e = gsrel(&["eq", &p(&format!("{flag}.lhs.term")), &p(&format!("{flag}.rhs.term")), &p(&format!("{flag}.interp.json"))]);
        assert_eq!(e.status.code(), Some(1), "{flag}");
    }
    let e = gsrel(&["eq", &p("domain_category.lhs.term"), &p("domain_category.rhs.term"), &p("domain_category.interp.json")]);
    assert!(stdout(&e).contains("(a,c): 4 vs 2"));
}

#[test]
fn eval_and_eq_examples() {
    let o = gsrel(&["eval", "copy[A];(id[A]*del[A])", &data("copy_discard.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "{(a,a):1,(b,b):1,(c,c):1}");
    assert_eq!(gsrel(&["eq", "dom(f);f", "f", &data("bool_f.json")]).status.code(), Some(0));
    let n = gsrel(&["eq", "dom(f);f", "f", &data("nat_f.json")]);
    assert_eq!(n.status.code(), Some(1));
    assert!(stdout(&n).contains("(a,c): 4 vs 2"));
    let bad = gsrel(&["eq", "dom(f ; f", "f", &data("nat_f.json")]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("1:"));
    assert_eq!(gsrel(&["eval", "f ; f", &data("nat_f.json")]).status.code(), Some(2));
}

#[test]
fn eval_reads_term_files_and_writes_out() {
    let dir = tempfile::tempdir().unwrap();
    let term = dir.path().join("t.term");
    std::fs::write(&term, "let d = dom(f)\nd ; f\n").unwrap();
    let out = dir.path().join("r.json");
    let o = gsrel(&[
        "eval",
        term.to_str().unwrap(),
        &data("nat_f.json"),
        "--format",
        "structured",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["entries"][0][2], "4");
}

#[test]
fn taxonomy_exit_codes_and_determinism() {
    let args = ["taxonomy", "--catalog", "bool,gf(2)", "--sizes", "0,1,2", "--seed", "7", "--format", "structured"];
    let a = gsrel(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&gsrel(&args)));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert!(v.as_array().unwrap().iter().any(|r| r["law"] == "thm.domain_preserving_iff_domain_category"));
    let bad = gsrel(&["taxonomy", "--catalog", "gf(2)", "--inject-fault", "mu"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(gsrel(&["taxonomy", "--catalog", "nope"]).status.code(), Some(2));
}

#[test]
fn environment_overrides() {
    let o = Command::new(env!("CARGO_BIN_EXE_gsrel"))
        .args(["classify", "bool", "--format", "structured"])
        .env("GSREL_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let seeded = |seed: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_gsrel"))
            .args(["classify", "q+", "--variant", "Mi", "--format", "structured"])
            .env("GSREL_SEED", seed)
            .output()
            .unwrap();
        stdout(&o)
    };
    assert_eq!(seeded("3"), seeded("3"));
    assert_eq!(seeded("0"), stdout(&gsrel(&["classify", "q+", "--variant", "Mi", "--format", "structured"])));
}
