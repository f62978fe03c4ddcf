use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("generator index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("empty word has no rotations")]
    EmptyWord,
    #[error("potential is zero")]
    ZeroPotential,
    #[error("potential is not cyclically invariant: word {0} and its rotation {1} carry different coefficients")]
    NotCyclicallyInvariant(String, String),
    #[error("degree window violation: {0}")]
    DegreeWindow(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("relations must be homogeneous for this operation")]
    NotHomogeneous,
    #[error("degree {degree} outside reliable range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("brute-force guard exceeded: {0} words at degree {1} (limit {2})")]
    GuardExceeded(usize, usize, usize),
    #[error("series table too short: {got} coefficients, need at least {need}")]
    TableTooShort { got: usize, need: usize },
    #[error("wrong series kind: expected {expected}, got {got}")]
    WrongSeriesKind { expected: String, got: String },
    #[error("random sampling requires a prime field")]
    NeedPrimeField,
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
