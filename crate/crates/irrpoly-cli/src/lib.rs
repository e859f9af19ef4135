//! Std-side companion to `irrpoly-core`: JSON input parsing, output
//! rendering, randomized verification suites, and command dispatch.

use std::fmt;

pub mod harness;
pub mod io;
pub mod report;
pub mod run;

/// Errors surfaced to the command line, split by exit status: malformed
/// input exits 2, domain failures (unbounded, empty, oversized, infeasible)
/// exit 1.
#[derive(Debug)]
pub enum CliError {
    Malformed(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    /// One-line machine-parsable error record.
    pub fn record(&self) -> String {
        let (kind, msg) = match self {
            CliError::Malformed(m) => ("malformed", m),
            CliError::Domain(m) => ("domain", m),
        };
        serde_json::json!({ "error": kind, "message": msg }).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Malformed(m) => write!(f, "malformed input: {m}"),
            CliError::Domain(m) => write!(f, "domain error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<irrpoly_core::Error> for CliError {
    fn from(e: irrpoly_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

pub fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Malformed(msg.into())
}
