use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("the zero vector does not define a projective point or line")]
    ZeroVector,
    #[error("points coincide; no unique line through them")]
    IdenticalPoints,
    #[error("lines coincide; no unique intersection point")]
    IdenticalLines,
    #[error("configuration has no points")]
    EmptyConfiguration,
    #[error("points {first} and {second} of the configuration coincide")]
    DuplicatePoint { first: usize, second: usize },
    #[error("length mismatch: expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("form of degree {degree} needs {expected} coefficients, found {found}")]
    DegreeMismatch {
        degree: usize,
        expected: usize,
        found: usize,
    },
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("prime {prime} too small: must exceed {threshold}")]
    PrimeTooSmall { prime: u64, threshold: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no generic realization of {what} after {attempts} attempts")]
    Genericity { what: String, attempts: usize },
    #[error("Bezout reduction did not terminate within {0} rounds")]
    RoundCapExceeded(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
