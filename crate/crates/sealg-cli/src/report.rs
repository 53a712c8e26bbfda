//! The report envelope shared by all commands.

use serde::Serialize;
use serde_json::Value;

/// Process exit codes.
pub mod exit {
    /// Certified result, or a check that ran to completion.
    pub const OK: u8 = 0;
    /// Usage or computation error.
    pub const ERROR: u8 = 1;
    /// Stable but not certified.
    pub const STABLE: u8 = 2;
    /// No conclusion at the configured scale.
    pub const INCONCLUSIVE: u8 = 3;
}

/// One checked statement with its outcome.
#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub claim: String,
    pub status: String,
    pub data: Value,
}

impl Claim {
    pub fn new(claim: &str, status: impl Into<String>, data: Value) -> Self {
        Claim { claim: claim.to_string(), status: status.into(), data }
    }
}

/// The full report of one command.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub claims: Vec<Claim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Value>,
}

/// A finished command: report, human summary and exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub summary: Vec<String>,
    pub exit_code: u8,
}

/// `"pass"` or `"fail"`.
pub fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}
