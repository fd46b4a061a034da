use thiserror::Error;

/// Coarse failure category; the CLI maps these onto its exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Input data is malformed or violates an identity it must satisfy.
    Validation,
    /// A computation could not be completed or certified.
    Computation,
    /// The input lies on a branch this engine does not implement.
    Unsupported,
}

#[derive(Debug, Error)]
pub enum Error {
    /// A named validation rule failed. `rule` is stable and machine-readable;
    /// `location` is a JSON-pointer-like path into the input document.
    #[error("validation rule `{rule}` failed at {location}: {detail}")]
    Validation {
        rule: &'static str,
        location: String,
        detail: String,
    },

    #[error("syntax error: {0}")]
    Syntax(String),

    /// Missing key or wrong value type in a field-data document.
    #[error("schema error at {location}: {detail}")]
    Schema { location: String, detail: String },

    #[error("element is not integral")]
    NotIntegral,

    #[error("element is not primitive: its characteristic polynomial has repeated roots")]
    NonPrimitive,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("resultant vanishes identically: {0}")]
    ZeroResultant(String),

    #[error("precision ceiling exceeded: {0}")]
    Precision(String),

    #[error("unsupported branch: {0}")]
    Unsupported(String),

    /// A quantity that must be exact (integer, perfect square, ...) was not.
    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn validation(
        rule: &'static str,
        location: impl Into<String>,
        detail: impl Into<String>,
    ) -> Self {
        Error::Validation {
            rule,
            location: location.into(),
            detail: detail.into(),
        }
    }

    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Validation { .. }
            | Error::Syntax(_)
            | Error::Schema { .. }
            | Error::NotIntegral
            | Error::Io { .. } => ErrorCategory::Validation,
            Error::Unsupported(_) => ErrorCategory::Unsupported,
            Error::NonPrimitive
            | Error::Degenerate(_)
            | Error::ZeroResultant(_)
            | Error::Precision(_)
            | Error::Inconsistent(_) => ErrorCategory::Computation,
        }
    }

    /// The validation rule name, if this is a validation failure.
    pub fn rule(&self) -> Option<&'static str> {
        match self {
            Error::Validation { rule, .. } => Some(rule),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
