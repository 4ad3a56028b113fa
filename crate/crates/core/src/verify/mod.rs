//! Oracles deciding whether a truncated matrix is the prefix of a graded twisting map, and
//! classification against the table of families.

mod classify;
mod conditions;
mod fundamental;
mod gamma;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Scalar;
use crate::bandmatrix::BandError;
use crate::families::FamilyError;

pub use classify::{classify, rescale, Classification, FamilyTag};
pub use conditions::check_mtilde;
pub use fundamental::{check_fundamental, fundamental_cap};
pub use gamma::{check_gamma_axioms, gamma_table, GammaTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("window of {available} rows is too small for {check}: need {needed}")]
    WindowExhausted { check: &'static str, needed: usize, available: usize },
    #[error("prefix matches no family: {reason} (row {row})")]
    Inconsistent { row: usize, reason: String },
    #[error("gamma table has no entry for r = {r}, i = {i}")]
    OutOfTable { r: usize, i: usize },
    #[error(transparent)]
    Band(#[from] BandError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// First offending entry. `k` is the identity index (the exponent, or `r` for the gamma maps).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub lhs: Scalar,
    pub rhs: Scalar,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail(Failure),
    WindowLimited,
}

/// Verdict of one check, possibly composed of per-condition sub-reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub check: String,
    /// Deepest index verified without failure.
    pub checked_depth: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub requested: Option<usize>,
    #[serde(flatten)]
    pub status: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conditions: Vec<VerifyReport>,
}

impl VerifyReport {
    #[must_use]
    pub fn leaf(check: &str, checked_depth: usize, status: Status) -> Self {
        VerifyReport { check: check.into(), checked_depth, requested: None, status, conditions: Vec::new() }
    }

    /// Merges sub-reports: the first failure wins, then any window limit.
    #[must_use]
    pub fn combine(check: &str, conditions: Vec<VerifyReport>) -> Self {
        let status = conditions
            .iter()
            .find_map(|c| matches!(c.status, Status::Fail(_)).then(|| c.status.clone()))
            .or_else(|| conditions.iter().any(|c| c.status == Status::WindowLimited).then_some(Status::WindowLimited))
            .unwrap_or(Status::Pass);
        let checked_depth = conditions.iter().map(|c| c.checked_depth).min().unwrap_or(0);
        VerifyReport { check: check.into(), checked_depth, requested: None, status, conditions }
    }

    #[must_use]
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    #[must_use]
    pub fn failure(&self) -> Option<&Failure> {
        match &self.status {
            Status::Fail(f) => Some(f),
            _ => None,
        }
    }

    /// 0 pass, 2 fail, 3 window-limited.
    #[must_use]
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail(_) => 2,
            Status::WindowLimited => 3,
        }
    }

    /// One line per report, indented by nesting.
    #[must_use]
    pub fn summary(&self) -> String {
        let mut out = String::new();
        self.summarize(0, &mut out);
        out
    }

    fn summarize(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        let verdict = match &self.status {
            Status::Pass => "pass".to_string(),
            Status::WindowLimited => "window-limited".to_string(),
            Status::Fail(f) => {
                let extra = f.detail.as_deref().map(|d| format!(", {d}")).unwrap_or_default();
                format!("FAIL at k={} ({}, {}): lhs {} != rhs {}{extra}", f.k, f.i, f.j, f.lhs, f.rhs)
            }
        };
        let req = self.requested.map(|r| format!(" of {r}")).unwrap_or_default();
        out.push_str(&format!("{pad}{}: {verdict}, checked depth {}{req}\n", self.check, self.checked_depth));
        for c in &self.conditions {
            c.summarize(depth + 1, out);
        }
    }
}
