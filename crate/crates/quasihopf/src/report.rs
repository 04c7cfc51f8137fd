//! Structured outcome of an identity check.

use std::fmt;
use std::time::{Duration, Instant};

use qtwist_core::TensorElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of one named check. The status is `Fail` exactly when a residual
/// (the first nonzero term of some `lhs − rhs`) is present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    /// Stable machine-readable tag of the identity family being checked.
    pub anchor: String,
    pub status: Status,
    pub residual: Option<String>,
    pub elapsed: Duration,
}

impl Report {
    pub fn new(name: &str, anchor: &str, residual: Option<String>, elapsed: Duration) -> Self {
        let status = if residual.is_some() { Status::Fail } else { Status::Pass };
        Self { name: name.to_string(), anchor: anchor.to_string(), status, residual, elapsed }
    }

    /// Runs `check` and times it; `check` returns the first residual, if any.
    pub fn timed(name: &str, anchor: &str, check: impl FnOnce() -> Option<String>) -> Self {
        let start = Instant::now();
        let residual = check();
        Self::new(name, anchor, residual, start.elapsed())
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// `Ok` when `lhs = rhs`, otherwise the first term of `lhs − rhs` labelled
/// with the identity it witnesses.
pub fn expect_equal(label: &str, lhs: &TensorElement, rhs: &TensorElement) -> Result<(), String> {
    match lhs.sub(rhs).first_term() {
        None => Ok(()),
        Some(t) => Err(format!("{label}: {t}")),
    }
}
