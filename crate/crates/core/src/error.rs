use thiserror::Error;

/// Errors raised by the exact algebra engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("polynomial is not homogeneous (found degrees {0} and {1})")]
    NotHomogeneous(u32, u32),
    #[error("too many variables: {0} (limit {limit})", limit = crate::poly::MAX_VARS)]
    TooManyVariables(usize),
    #[error("degree {0} exceeds limit {limit}", limit = crate::poly::MAX_DEGREE)]
    DegreeTooLarge(u32),
    #[error("degree {t} out of range 0..={d}")]
    DegreeOutOfRange { t: u32, d: u32 },
    #[error("expected a form of degree {expected}, got degree {got}")]
    WrongDegree { expected: u32, got: u32 },
    #[error("expected a form in {expected} variables, got {got}")]
    WrongVariableCount { expected: usize, got: usize },
    #[error("the zero polynomial has no apolar algebra")]
    ZeroPolynomial,
    #[error("all exponents are zero")]
    AllZero,
    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),
    #[error("points {0} and {1} coincide projectively")]
    DuplicatePoints(usize, usize),
    #[error("a projective point or linear form needs a nonzero coordinate")]
    ZeroVector,
    #[error("invalid mode set {modes:?} for a tensor of order {order}")]
    InvalidModeSet { modes: Vec<usize>, order: usize },
    #[error("wrong tensor shape {got:?}, expected {expected:?}")]
    WrongShape {
        expected: Vec<usize>,
        got: Vec<usize>,
    },
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
