use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("enumeration needs {needed} states but the cap is {cap}")]
    CapExceeded { needed: u128, cap: u64 },

    #[error("inexact polynomial division: {0}")]
    InexactDivision(String),

    #[error("non-integral or negative result: {0}")]
    NonIntegralResult(String),

    #[error("stabilizer list is not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("unsupported group {0}: only SU(2) has an explicit stable splitting")]
    UnsupportedGroup(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid value for `{field}`: {message}")]
    Validation { field: String, message: String },
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Validation { .. } | Error::UnsupportedGroup(_) => 2,
            Error::CapExceeded { .. } => 3,
            Error::InexactDivision(_)
            | Error::NonIntegralResult(_)
            | Error::NotASubgroup(_)
            | Error::Internal(_) => 4,
        }
    }
}
