//! Error type shared across the crate, with stable exit-code classes for the CLI.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum FarmError {
    /// A precondition or invariant on the inputs was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A file could not be parsed. `row` is the 1-based line in the file
    /// when the failure is tied to a specific record.
    #[error("parse error in {file}{}: {message}", row.map(|r| format!(" at line {r}")).unwrap_or_default())]
    Parse {
        file: String,
        row: Option<u64>,
        message: String,
    },

    /// A computation has no defined result (e.g. no defined local
    /// coefficients to aggregate).
    #[error("undefined result: {0}")]
    UndefinedResult(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl FarmError {
    /// Process exit code class: 2 invalid input, 3 parse error, 4 i/o error.
    pub fn exit_code(&self) -> i32 {
        match self {
            FarmError::InvalidInput(_) | FarmError::UndefinedResult(_) => 2,
            FarmError::Parse { .. } => 3,
            FarmError::Io(_) => 4,
        }
    }

    /// Short machine-parseable class name used in one-line stderr summaries.
    pub fn class(&self) -> &'static str {
        match self {
            FarmError::InvalidInput(_) => "invalid-input",
            FarmError::Parse { .. } => "parse",
            FarmError::UndefinedResult(_) => "undefined-result",
            FarmError::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, FarmError>;

pub(crate) fn invalid(msg: impl Into<String>) -> FarmError {
    FarmError::InvalidInput(msg.into())
}
