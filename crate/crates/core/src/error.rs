//! Error type shared by every layer of the crate.

use thiserror::Error;

/// Failure modes of the library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Input polynomial or form is zero where a nonzero one is required.
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// The two components of a 1-form share a common factor.
    #[error("non-saturated form: common factor {0}")]
    NonSaturated(String),
    /// A mathematical precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The requested case is outside what the implementation handles.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A family parameter is outside its admissible range.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// Exact division was requested but a remainder is left.
    #[error("inexact division: {0}")]
    InexactDivision(String),
    /// An iterative numeric routine failed to converge.
    #[error("numeric failure: {what} (residuals {residuals:?})")]
    Numeric { what: String, residuals: Vec<f64> },
    /// Sample point too close to the discriminant of a web.
    #[error("near discriminant: slope gap {gap:e}")]
    NearDiscriminant { gap: f64 },
    /// Not enough reliable curvature samples within the sampling budget.
    #[error("sampling failure: {found} reliable samples out of {wanted}")]
    Sampling { found: usize, wanted: usize },
    /// Syntax or lexical error in textual input.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// Inconsistent command line usage.
    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    /// Process exit code associated with the error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Usage(_) => 1,
            Error::Numeric { .. } | Error::NearDiscriminant { .. } | Error::Sampling { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
