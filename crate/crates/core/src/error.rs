use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("enumeration of {what} exceeds the size cap of {limit}")]
    SizeCap { what: &'static str, limit: usize },

    #[error("invalid rank function: {0}")]
    InvalidRankFunction(String),

    #[error("not a discrete polymatroid: {0}")]
    NotAPolymatroid(String),

    #[error("input violates the symmetric exchange property; not a valid base set: {0}")]
    InvalidBaseSet(String),

    #[error("{0} out of range")]
    OutOfRange(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("inconsistent Hilbert data: {0}")]
    Inconsistent(String),
}
