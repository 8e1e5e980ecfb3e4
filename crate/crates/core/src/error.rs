use thiserror::Error;

/// Crate-wide error type. The variants map onto the CLI exit codes:
/// validation errors exit with 2, budget errors with 3, and internal
/// criteria disagreements with 4.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid input: malformed polynomial, bad digits, violated precondition.
    #[error("validation: {0}")]
    Validation(String),

    /// A size or time budget would be exceeded.
    #[error("budget: {0}")]
    Budget(String),

    /// Two independent criteria that must agree did not. This indicates a bug,
    /// not an input property, and is never recovered from.
    #[error("criteria disagreement: {0}")]
    Disagreement(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }

    pub fn disagreement(msg: impl Into<String>) -> Self {
        Error::Disagreement(msg.into())
    }

    /// CLI exit code associated with this error kind.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) => 2,
            Error::Budget(_) => 3,
            Error::Disagreement(_) => 4,
        }
    }
}
