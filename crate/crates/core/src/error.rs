use thiserror::Error;

/// Errors raised by the workbench.
///
/// Check outcomes (a ring failing associativity, a map failing Leibniz) are not
/// errors; they come back as [`crate::Verdict`] values. Errors are reserved for
/// malformed input, unsupported requests, and refused enumerations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input at `{path}`: {reason}")]
    Malformed { path: String, reason: String },

    #[error("operands belong to different rings")]
    MixedRings,

    #[error("modulus {0} is not prime; this operation needs a field")]
    UnsupportedModulus(u32),

    #[error("enumeration of {needed} items exceeds budget {budget} ({what})")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u64,
    },

    #[error("grading is not multiplicative: {0}")]
    InvalidGrading(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn malformed(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Malformed {
            path: path.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
