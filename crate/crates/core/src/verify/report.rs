use std::fmt;
use std::time::{Duration, Instant};

use crate::complex::{ComplexError, Face};
use crate::construction::ConstructionError;

use super::VerifyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
}

/// Evidence attached to a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    Face(Face),
    Pair(Face, Face),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Face(a) => write!(f, "{a}"),
            Witness::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

/// Why a check failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub witness: Option<Witness>,
    pub detail: String,
}

impl Failure {
    pub fn new(detail: impl Into<String>) -> Self {
        Failure {
            witness: None,
            detail: detail.into(),
        }
    }

    pub fn with_face(detail: impl Into<String>, face: Face) -> Self {
        Failure {
            witness: Some(Witness::Face(face)),
            detail: detail.into(),
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        Failure {
            witness: e.witness().cloned().map(Witness::Face),
            detail: e.to_string(),
        }
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        let witness = match &e {
            ComplexError::NotAFace(f)
            | ComplexError::NotPure(f)
            | ComplexError::LinkNotBallOrSphere(f) => Some(Witness::Face(f.clone())),
            ComplexError::NotPseudomanifold { ridge, .. } => Some(Witness::Face(ridge.clone())),
            _ => None,
        };
        Failure {
            witness,
            detail: e.to_string(),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Construction(c) => c.into(),
            VerifyError::Complex(c) => c.into(),
            other => Failure::new(other.to_string()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckRecord {
    pub claim: String,
    pub status: Status,
    /// Always present on failure, if only as a description.
    pub failure: Option<Failure>,
    pub elapsed: Duration,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.failure.as_ref().and_then(|f| f.witness.as_ref())
    }
}

/// Runs `body` and records its outcome and wall time under `claim`.
pub fn run_check(
    claim: impl Into<String>,
    body: impl FnOnce() -> Result<(), Failure>,
) -> CheckRecord {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (status, failure) = match outcome {
        Ok(()) => (Status::Pass, None),
        Err(f) => (Status::Fail, Some(f)),
    };
    CheckRecord {
        claim: claim.into(),
        status,
        failure,
        elapsed,
    }
}

/// Ordered list of check outcomes.
#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.checks.push(record);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn check(&mut self, claim: impl Into<String>, body: impl FnOnce() -> Result<(), Failure>) {
        self.push(run_check(claim, body));
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn total_elapsed(&self) -> Duration {
        self.checks.iter().map(|c| c.elapsed).sum()
    }

    /// The first failure, turned into a single failure for an enclosing check.
    pub fn first_failure(&self) -> Option<Failure> {
        self.failures().next().map(|c| {
            let inner = c.failure.clone().unwrap_or_else(|| Failure::new(""));
            Failure {
                witness: inner.witness,
                detail: format!("{}: {}", c.claim, inner.detail),
            }
        })
    }

    /// Passes iff every check passed.
    pub fn as_outcome(&self) -> Result<(), Failure> {
        self.first_failure().map_or(Ok(()), Err)
    }
}

/// One line per check: `PASS claim` or `FAIL claim: detail [witness]`.
impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.failure {
                None => writeln!(f, "PASS {}", c.claim)?,
                Some(fail) => {
                    write!(f, "FAIL {}: {}", c.claim, fail.detail)?;
                    if let Some(w) = &fail.witness {
                        write!(f, " [witness {w}]")?;
                    }
                    writeln!(f)?;
                }
            }
        }
        let failed = self.failures().count();
        writeln!(
            f,
            "{} checks, {} passed, {} failed",
            self.len(),
            self.len() - failed,
            failed
        )
    }
}
