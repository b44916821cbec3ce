use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(i64),
    #[error("{a} is not invertible modulo {q}")]
    NotInvertible { a: i64, q: i64 },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("({r}, {s}) is not a pair of adjacent denominators in the Farey sequence of order {k}")]
    NotAdjacent { k: u64, r: u64, s: u64 },
    #[error("index {index} out of range {lo}..={hi}")]
    OutOfRange { index: u64, lo: u64, hi: u64 },
    #[error("empty interval")]
    EmptyInterval,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("identity failed: {0}")]
    IdentityFailed(String),
}
