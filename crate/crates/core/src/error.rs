use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    Degree { expected: usize, found: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("condition violated: {0}")]
    Condition(String),
    #[error("not in the expected subspace: {0}")]
    Subspace(String),
    #[error("not closed under bracket")]
    NotClosed,
    #[error("value leaves the exact backend: {0}")]
    Irrational(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than by the library.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Inconsistent(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
