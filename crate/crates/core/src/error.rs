use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("inhomogeneous polynomial: {0}")]
    Inhomogeneous(String),

    #[error("objects live over different rings: {0}")]
    RingMismatch(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("target vector is not in the column span")]
    NotInSpan,

    #[error("not in image: {0}")]
    NotInImage(String),

    #[error("twist mismatch: {0}")]
    TwistMismatch(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("cache error: {0}")]
    Cache(String),
}

impl Error {
    /// Internal assertion failures that indicate a bookkeeping or exactness bug
    /// rather than bad user input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NotInImage(_) | Error::TwistMismatch(_) | Error::NotInSpan | Error::Shape(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
