use thiserror::Error;

/// Errors raised by the library. Degenerate continued-fraction values
/// (zero, infinite, negative) are results, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("{0} is not a positive rational")]
    NotPositive(String),
    #[error("{0} is not greater than 1")]
    NotGreaterThanOne(String),
    #[error("L({p},{q}) is not a lens space: need p > q >= 1 with gcd(p, q) = 1")]
    InvalidLensSpace { p: String, q: String },
    #[error("blow-down at position {index} needs entry 1, found {found}")]
    NotBlowDownable { index: usize, found: i64 },
    #[error("tuple of length {len} is too short for this move")]
    TupleTooShort { len: usize },
    #[error("index {index} out of range for tuple of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("length {k} outside the supported range 1..={max}")]
    LengthOutOfRange { k: usize, max: usize },
    #[error("Fibonacci index must be at least 1, got {0}")]
    FibonacciIndex(u64),
    #[error("extremal identity failed for L({p},{q}) with tuple {tuple}: {detail}")]
    ExtremalIdentity {
        p: String,
        q: String,
        tuple: String,
        detail: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
