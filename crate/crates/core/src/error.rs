use thiserror::Error;

/// Errors raised by trunclab computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("base must be at least 2, got {0}")]
    BaseTooSmall(u64),

    #[error("{what} = {value} exceeds the configured ceiling {limit}")]
    CeilingExceeded {
        what: &'static str,
        value: String,
        limit: String,
    },

    #[error("{0} is beyond the trial-division factoring range")]
    FactorTooLarge(String),

    #[error("polynomial degree {degree} exceeds the factoring ceiling {limit}")]
    DegreeTooLarge { degree: usize, limit: usize },

    #[error("bad range: {0}")]
    BadRange(String),

    #[error("operands live over different fields")]
    FieldMismatch,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("base polynomial must have degree at least 1")]
    BaseDegreeZero,

    #[error("operation is undefined for the zero polynomial")]
    ZeroInput,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("model probability {index} = {value} lies outside (0, 1)")]
    DegenerateProbability { index: usize, value: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn ceiling(what: &'static str, value: impl ToString, limit: impl ToString) -> Self {
        Error::CeilingExceeded {
            what,
            value: value.to_string(),
            limit: limit.to_string(),
        }
    }

    /// True for errors caused by a resource ceiling rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::CeilingExceeded { .. } | Error::FactorTooLarge(_) | Error::DegreeTooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
