//! Pass/fail results with a witness explaining failures.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    NotEvaluated,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotEvaluated => "not evaluated",
        })
    }
}

/// Outcome of one named condition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Check {
    pub status: Status,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass() -> Self {
        Check {
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        Check {
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn not_evaluated(reason: impl Into<String>) -> Self {
        Check {
            status: Status::NotEvaluated,
            witness: Some(reason.into()),
        }
    }

    /// Passes unless `failure` carries a witness.
    pub fn from_failure(failure: Option<String>) -> Self {
        match failure {
            None => Self::pass(),
            Some(w) => Self::fail(w),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
