//! Library behind the `ordlab` binary: curve configuration, cached parallel
//! scans, CSV/JSON reports and oracle drivers.
//!
//! Exit codes: 0 success, 1 usage, 2 invalid input, 3 internal invariant
//! violation.

pub mod cache;
pub mod config;
pub mod oracle;
pub mod report;
pub mod scan;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Io(String),
    #[error("invariant violation at p = {p}: {message}")]
    Invariant { p: u64, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Invalid(_) | CliError::Io(_) => 2,
            CliError::Invariant { .. } => 3,
        }
    }
}
