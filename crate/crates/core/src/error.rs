use crate::quantum_numbers::HalfInt;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot parse `{0}` as an integer or half-integer")]
    ParseHalfInt(String),
    #[error("angular momentum must be nonnegative, got j = {0}")]
    NegativeJ(HalfInt),
    #[error("invalid quantum numbers: j = {j}, m = {m}")]
    InvalidState { j: HalfInt, m: HalfInt },
    #[error("j = {0} must be an integer here")]
    NonIntegerJ(HalfInt),
    #[error("ln({n}!) requested but the factorial table holds only {capacity} entries")]
    FactorialCapacity { n: usize, capacity: usize },
    #[error("2j = {twice_j} exceeds the configured maximum 2j = {max_twice_j}")]
    CapacityExceeded { twice_j: i32, max_twice_j: i32 },
    #[error("non-finite value for {0}")]
    NonFinite(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported projection m = {m} for j = {j} (expected 0 or j)")]
    UnsupportedM { j: HalfInt, m: HalfInt },
    #[error("a distribution needs at least two entries, got {0}")]
    TooFewEntries(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
