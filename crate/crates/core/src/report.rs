//! Law-check outcomes.

use serde::{Deserialize, Serialize};
use std::fmt;

/// How a law check ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Every input in the (finite) search space was checked.
    ExhaustivePass,
    /// No violation among `checks_performed` sampled inputs. Never a proof.
    SampledPass,
    /// A violating input was found; see `witness`.
    Counterexample,
    /// The check could not be decided with the available oracles.
    Undetermined,
    /// The hypothesis of the law does not hold, so it was not evaluated.
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::ExhaustivePass => "exhaustive-pass",
            Status::SampledPass => "sampled-pass",
            Status::Counterexample => "counterexample",
            Status::Undetermined => "undetermined",
            Status::Skipped => "skipped",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one law check.
///
/// `gate` marks entries whose counterexample counts as an inconsistency of
/// the implementation (as opposed to an instance-level finding, such as a
/// sub-monad that is not closed over a given semiring).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub variant: Option<String>,
    pub semiring: Option<String>,
    pub status: Status,
    pub witness: Vec<String>,
    pub checks_performed: u64,
    pub gate: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl LawReport {
    pub fn new(law: impl Into<String>, status: Status, checks_performed: u64) -> Self {
        LawReport {
            law: law.into(),
            variant: None,
            semiring: None,
            status,
            witness: Vec::new(),
            checks_performed,
            gate: true,
            note: None,
        }
    }

    pub fn counterexample(law: impl Into<String>, witness: Vec<String>, checks: u64) -> Self {
        let mut r = LawReport::new(law, Status::Counterexample, checks);
        r.witness = witness;
        r
    }

    pub fn skipped(law: impl Into<String>, note: impl Into<String>) -> Self {
        LawReport::new(law, Status::Skipped, 0).with_note(note)
    }

    pub fn with_semiring(mut self, name: impl Into<String>) -> Self {
        self.semiring = Some(name.into());
        self
    }

    pub fn with_variant(mut self, name: impl Into<String>) -> Self {
        self.variant = Some(name.into());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_gate(mut self, gate: bool) -> Self {
        self.gate = gate;
        self
    }

    /// No counterexample was found (passes and skips both count).
    pub fn holds(&self) -> bool {
        self.status != Status::Counterexample
    }

    pub fn passed(&self) -> bool {
        matches!(self.status, Status::ExhaustivePass | Status::SampledPass)
    }

    /// A gating counterexample.
    pub fn is_inconsistency(&self) -> bool {
        self.gate && self.status == Status::Counterexample
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({} checks)", self.law, self.status, self.checks_performed)?;
        if !self.witness.is_empty() {
            write!(f, " witness [{}]", self.witness.join(", "))?;
        }
        Ok(())
    }
}

/// Checks `eval` on every case and stops at the first violation.
///
/// `eval` returns `Err(witness)` for a violating case. When `exhaustive` is
/// set the cases are the whole search space and a clean run is reported as an
/// exhaustive pass.
pub fn check_cases<T, I, F>(law: &str, cases: I, exhaustive: bool, mut eval: F) -> LawReport
where
    I: IntoIterator<Item = T>,
    F: FnMut(&T) -> Result<(), Vec<String>>,
{
    let mut checks = 0u64;
    for case in cases {
        checks += 1;
        if let Err(witness) = eval(&case) {
            return LawReport::counterexample(law, witness, checks);
        }
    }
    let status = if exhaustive {
        Status::ExhaustivePass
    } else {
        Status::SampledPass
    };
    LawReport::new(law, status, checks)
}

/// Combines sub-reports into one: the first counterexample wins, otherwise the
/// weakest pass status is kept and checks are summed.
pub fn merge(law: &str, parts: &[LawReport]) -> LawReport {
    let checks: u64 = parts.iter().map(|p| p.checks_performed).sum();
    if let Some(bad) = parts.iter().find(|p| p.status == Status::Counterexample) {
        let mut r = LawReport::counterexample(law, bad.witness.clone(), checks);
        r.note = bad.note.clone();
        return r;
    }
    let status = if parts.iter().any(|p| p.status == Status::Undetermined) {
        Status::Undetermined
    } else if parts.iter().all(|p| p.status == Status::ExhaustivePass) {
        Status::ExhaustivePass
    } else if parts.iter().all(|p| p.status == Status::Skipped) {
        Status::Skipped
    } else {
        Status::SampledPass
    };
    LawReport::new(law, status, checks)
}
