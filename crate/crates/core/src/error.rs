use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coefficient length {m} is smaller than signal length {n}")]
    TooFewCoefficients { n: usize, m: usize },
    #[error("odd padding: M - N = {excess} cannot split evenly")]
    OddPadding { excess: usize },
    #[error("signal length must be at least 1")]
    EmptySignal,
    #[error("eigen tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },
    #[error("no hiding capacity")]
    NoCapacity,
    #[error("no hiding capacity at this tolerance")]
    NoCapacityAtTolerance,
    #[error("code length {k} exceeds hiding capacity {capacity}")]
    CapacityExceeded { k: usize, capacity: usize },
    #[error("code length must be at least 1")]
    EmptyCode,
    #[error("{name} must be positive, got {value}")]
    NotPositive { name: &'static str, value: f64 },
    #[error("no embedded energy")]
    NoEmbeddedEnergy,
    #[error("zero signal coefficients")]
    ZeroSignal,
    #[error("zero hidden code")]
    ZeroCode,
    #[error("invalid chirp: {0}")]
    InvalidChirp(&'static str),
}
