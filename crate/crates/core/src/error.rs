use thiserror::Error;

/// Errors shared by every verification module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The input is well formed but not covered by the stored tables.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A check was asked for parameters outside the domain where its argument applies.
    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("factorization incomplete: unfactored cofactor {0}")]
    IncompleteFactorization(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => { $crate::error::Error::InvalidArgument(format!($($arg)*)) };
}

macro_rules! unsupported {
    ($($arg:tt)*) => { $crate::error::Error::Unsupported(format!($($arg)*)) };
}

macro_rules! not_applicable {
    ($($arg:tt)*) => { $crate::error::Error::NotApplicable(format!($($arg)*)) };
}

pub(crate) use invalid;
pub(crate) use not_applicable;
pub(crate) use unsupported;
