//! Command-line front end for the gsrel law checkers.
//!
//! [`run`] takes the argument vector and returns the exit code together with
//! everything that would be printed, so the binary and the tests share one
//! code path. Exit codes: 0 when every check passed, 1 on a refutation or an
//! oracle disagreement, 2 on usage, parse and configuration errors.

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use gsrel::diagram::{check_term_equality, evaluate_term, parse_file, print_term, Interpretation, Term};
use gsrel::semiring::{check_semiring_laws, classify_semiring, load_semiring, load_semiring_unverified};
use gsrel::taxonomy::{
    classify_kleisli, classify_monad, default_catalog, inconsistencies, reproducer, run_theorem_suite, CheckConfig,
    Mutation,
};
use gsrel::{wrel, LawReport, Semiring, Variant};

mod table;

use table::Table;

#[derive(Parser, Debug)]
#[command(name = "gsrel", version, about = "Law checks for semiring-weighted relations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the semiring axioms and report structural properties.
    CheckSemiring {
        /// Builtin name (bool, nat, q+, gf(p), fuzzy-max-min, fuzzy-max-times) or a table file.
        semiring: String,
        #[command(flatten)]
        common: Common,
    },
    /// Classify a weight-map monad and its Kleisli category.
    Classify {
        semiring: String,
        #[arg(long, default_value = "M")]
        variant: Variant,
        /// Write reproducer term and interpretation files for each refuted flag.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a term under an interpretation and print the relation.
    Eval {
        /// Term file, or the term text itself.
        term: String,
        /// Interpretation file.
        interp: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether two terms denote the same relation.
    Eq {
        lhs: String,
        rhs: String,
        interp: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run the theorem suite over a catalog of semirings.
    Taxonomy {
        /// Comma-separated semiring specs; defaults to the builtin catalog.
        #[arg(long, value_delimiter = ',')]
        catalog: Vec<String>,
        #[arg(long, hide = true)]
        inject_fault: Option<Fault>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Fault {
    Mu,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Structured,
}

#[derive(Args, Debug)]
struct Common {
    /// Set sizes to range over, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
    sizes: Vec<usize>,
    /// Largest search space enumerated exhaustively.
    #[arg(long, env = "GSREL_BUDGET", default_value_t = gsrel::semiring::DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, env = "GSREL_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Everything one invocation needs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub semiring: Option<String>,
    pub variant: Variant,
    pub sizes: Vec<usize>,
    pub budget: u64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    fn new(semiring: Option<&str>, variant: Variant, c: &Common) -> Self {
        RunConfig {
            semiring: semiring.map(str::to_string),
            variant,
            sizes: c.sizes.clone(),
            budget: c.budget,
            seed: c.seed,
            out: c.out.clone(),
            format: c.format,
        }
    }

    fn check_config(&self) -> CheckConfig {
        CheckConfig { sizes: self.sizes.clone(), budget: self.budget, seed: self.seed, ..CheckConfig::default() }
    }
}

/// Result of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: msg.into() }
    }
}

/// A failure that maps to exit code 2.
struct Usage(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.into())
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome::usage(text),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(o) => o,
        Err(Usage(e)) => Outcome::usage(format!("error: {e:#}\n")),
    }
}

fn dispatch(cmd: Command) -> Result<Outcome, Usage> {
    match cmd {
        Command::CheckSemiring { semiring, common } => {
            cmd_check_semiring(&RunConfig::new(Some(&semiring), Variant::M, &common))
        }
        Command::Classify { semiring, variant, witness_dir, common } => {
            cmd_classify(&RunConfig::new(Some(&semiring), variant, &common), witness_dir.as_deref())
        }
        Command::Eval { term, interp, common } => cmd_eval(&term, &interp, &RunConfig::new(None, Variant::M, &common)),
        Command::Eq { lhs, rhs, interp, common } => {
            cmd_eq(&lhs, &rhs, &interp, &RunConfig::new(None, Variant::M, &common))
        }
        Command::Taxonomy { catalog, inject_fault, common } => {
            let mutation = inject_fault.map(|Fault::Mu| Mutation::MuSumForProduct);
            cmd_taxonomy(&catalog, mutation, &RunConfig::new(None, Variant::M, &common))
        }
    }
}

fn structured(reports: &[LawReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

/// Sends `text` to `--out` or standard output.
fn emit(cfg: &RunConfig, code: i32, text: String) -> Result<Outcome, Usage> {
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
            Ok(Outcome { code, ..Outcome::default() })
        }
        None => Ok(Outcome { code, stdout: text, stderr: String::new() }),
    }
}

fn report_table(reports: &[LawReport]) -> String {
    let mut t = Table::new(&["semiring", "variant", "law", "status", "checks", "witness"]);
    for r in reports {
        let mut status = r.status.to_string();
        if r.is_inconsistency() {
            status.push_str(" !");
        }
        t.row(vec![
            r.semiring.clone().unwrap_or_default(),
            r.variant.clone().unwrap_or_default(),
            r.law.clone(),
            status,
            r.checks_performed.to_string(),
            r.witness.join("; "),
        ]);
    }
    t.render()
}

fn cmd_check_semiring(cfg: &RunConfig) -> Result<Outcome, Usage> {
    let spec = cfg.semiring.as_deref().unwrap_or_default();
    let sr = load_semiring_unverified(spec)?;
    if cfg.budget == 0 {
        return Err(Usage(anyhow!("the budget must be positive")));
    }
    let mut reports: Vec<LawReport> = check_semiring_laws(&sr, cfg.budget);
    let failed = reports.iter().any(|r| !r.holds());
    let class = classify_semiring(&sr, cfg.budget);
    let code = i32::from(failed);
    let text = match cfg.format {
        Format::Structured => {
            reports.extend(class.reports.iter().cloned());
            structured(&reports)
        }
        Format::Human => {
            let mut s = report_table(&reports);
            let flags = [
                ("commutative", class.commutative, "semiring.mul_comm"),
                ("mult_idempotent", class.mult_idempotent, "semiring.mul_idempotent"),
                ("absorptive", class.absorptive, "semiring.absorptive"),
                ("distributive_lattice", class.distributive_lattice, "semiring.distributive_lattice"),
                ("semifield", class.semifield, "semiring.semifield"),
            ];
            s.push('\n');
            for (name, value, law) in flags {
                let _ = write!(s, "{name}: {value}");
                if let Some(r) = class.reports.iter().find(|r| r.law == law && !r.witness.is_empty()) {
                    let _ = write!(s, " (witness {})", r.witness.join(", "));
                }
                s.push('\n');
            }
            s
        }
    };
    emit(cfg, code, text)
}

fn cmd_classify(cfg: &RunConfig, witness_dir: Option<&Path>) -> Result<Outcome, Usage> {
    let sr = load_semiring(cfg.semiring.as_deref().unwrap_or_default())?;
    let check = cfg.check_config();
    let mc = classify_monad(&sr, cfg.variant, &check)?;
    let kc = classify_kleisli(&sr, cfg.variant, &check)?;
    let mut reports = mc.reports();
    reports.extend(kc.reports());
    let code = i32::from(!inconsistencies(&reports).is_empty());

    let mut reproduce = Vec::new();
    if let Some(dir) = witness_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        for (name, flag) in kc.flags() {
            let Some(f) = flag.witness.as_ref().filter(|_| !flag.value) else { continue };
            let Some(r) = reproducer(name, &sr, f) else { continue };
            let lhs = dir.join(format!("{name}.lhs.term"));
            let rhs = dir.join(format!("{name}.rhs.term"));
            let interp = dir.join(format!("{name}.interp.json"));
            std::fs::write(&lhs, format!("{}\n", print_term(&r.lhs)))?;
            std::fs::write(&rhs, format!("{}\n", print_term(&r.rhs)))?;
            std::fs::write(&interp, r.interpretation.to_json())?;
            reproduce.push(format!("gsrel eq {} {} {}", lhs.display(), rhs.display(), interp.display()));
        }
    }

    let text = match cfg.format {
        Format::Structured => structured(&reports),
        Format::Human => {
            let mut s = format!("{} over {}\n\nmonad\n", cfg.variant, sr.name());
            let mut t = Table::new(&["flag", "value", "pointwise", "diagram", "agreement"]);
            for (name, f) in mc.flags() {
                t.row(vec![
                    name.into(),
                    f.value.to_string(),
                    f.pointwise.status.to_string(),
                    f.diagram.status.to_string(),
                    f.agreement.status.to_string(),
                ]);
            }
            s.push_str(&t.render());
            let _ = writeln!(s, "\nkleisli ({} arrows)", kc.arrows_checked);
            let mut t = Table::new(&["flag", "value", "status", "witness"]);
            for (name, f) in kc.flags() {
                t.row(vec![name.into(), f.value.to_string(), f.report.status.to_string(), f.report.witness.join("; ")]);
            }
            s.push_str(&t.render());
            let bad: Vec<&LawReport> = inconsistencies(&reports);
            if !bad.is_empty() {
                s.push_str("\ninconsistencies\n");
                s.push_str(&report_table(&bad.into_iter().cloned().collect::<Vec<_>>()));
            }
            if !reproduce.is_empty() {
                s.push_str("\nreproduce with\n");
                for line in &reproduce {
                    let _ = writeln!(s, "  {line}");
                }
            }
            s
        }
    };
    emit(cfg, code, text)
}

/// Reads a term file, or takes `arg` as the term itself when no such file
/// exists.
fn load_term(arg: &str) -> Result<Term, Usage> {
    let path = Path::new(arg);
    let (text, origin) = if path.is_file() {
        (std::fs::read_to_string(path).with_context(|| format!("cannot read {arg}"))?, arg.to_string())
    } else {
        (arg.to_string(), "<term>".to_string())
    };
    let file = parse_file(&text).map_err(|e| anyhow!("{origin}: {e}"))?;
    Ok(file.main)
}

fn load_interp(path: &Path) -> Result<Interpretation, Usage> {
    Ok(Interpretation::load(path).map_err(|e| anyhow!("{}: {e}", path.display()))?)
}

fn cmd_eval(term: &str, interp: &Path, cfg: &RunConfig) -> Result<Outcome, Usage> {
    let t = load_term(term)?;
    let i = load_interp(interp)?;
    let rel = evaluate_term(&t, &i)?;
    let text = match cfg.format {
        Format::Structured => format!("{}\n", wrel::to_json(&i.semiring, &rel)),
        Format::Human => format!("{}\n", rel.render(&i.semiring)),
    };
    emit(cfg, 0, text)
}

fn cmd_eq(lhs: &str, rhs: &str, interp: &Path, cfg: &RunConfig) -> Result<Outcome, Usage> {
    let (a, b) = (load_term(lhs)?, load_term(rhs)?);
    let i = load_interp(interp)?;
    let report = check_term_equality(&a, &b, &i)?;
    let code = i32::from(!report.holds());
    let text = match cfg.format {
        Format::Structured => structured(std::slice::from_ref(&report)),
        Format::Human if report.holds() => format!("{}: equal\n", report.law),
        Format::Human => format!("{}: differ at {}\n", report.law, report.witness.join("; ")),
    };
    emit(cfg, code, text)
}

fn cmd_taxonomy(catalog: &[String], mutation: Option<Mutation>, cfg: &RunConfig) -> Result<Outcome, Usage> {
    let semirings: Vec<Semiring> = if catalog.is_empty() {
        default_catalog()
    } else {
        catalog.iter().map(|s| load_semiring(s)).collect::<Result<_, _>>()?
    };
    let check = CheckConfig { mutation, ..cfg.check_config() };
    let reports = run_theorem_suite(&semirings, &check)?;
    let bad = inconsistencies(&reports).len();
    let text = match cfg.format {
        Format::Structured => structured(&reports),
        Format::Human => {
            let mut s = report_table(&reports);
            let findings = reports.iter().filter(|r| !r.holds() && !r.gate).count();
            let _ = writeln!(
                s,
                "\n{} reports, {} inconsistencies, {} findings on sub-variants that are not closed or flags that are false",
                reports.len(),
                bad,
                findings
            );
            s
        }
    };
    emit(cfg, i32::from(bad > 0), text)
}
