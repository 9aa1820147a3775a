use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A distribution, kernel or channel failed a structural check.
    #[error("validation failed: {0}")]
    Validation(String),

    /// Caller-supplied arguments are inconsistent (bad axes, dimension mismatch, out of range).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// The operation's precondition does not hold for this input (wrong channel class, degradedness, ...).
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The requested grid or enumeration exceeds the configured budget.
    #[error("{what} needs {required} evaluations, over the limit of {limit}")]
    Capacity {
        what: String,
        required: u128,
        limit: u128,
    },

    /// A channel or config file could not be parsed.
    #[error("parse error in field `{field}`: {message}")]
    Parse { field: String, message: String },

    /// A computed quantity violated a mathematical bound beyond the floating-point guard.
    #[error("numerical error: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
