use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or mismatched arguments (wrong arity, out-of-range index, ...).
    #[error("argument error: {0}")]
    Argument(String),
    /// Input outside the domain on which an operation is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// A mathematical hypothesis of a statement is not met.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// An internal consistency check failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! arg_err {
    ($($t:tt)*) => { $crate::error::Error::Argument(format!($($t)*)) };
}
pub(crate) use arg_err;
