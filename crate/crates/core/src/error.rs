use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("entry {0} appears more than once")]
    DuplicateEntry(i64),
    #[error("entry {0} lies outside 1..=n^2")]
    OutOfRange(i64),
    #[error("expected {expected} entries, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("grid size must be at least 1")]
    EmptyGrid,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    /// A division that must be exact left a remainder. Always an
    /// implementation bug, never rounded away.
    #[error("non-integral result in {0}")]
    NonIntegralResult(&'static str),
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("grid is not a permutation of 1..=n^2")]
    NotPermutation,
    #[error("exhaustive search refused for n = {0} (supported: 1..=3)")]
    TooLarge(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
