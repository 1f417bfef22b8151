use thiserror::Error;

/// Errors raised by the library.
///
/// The CLI maps these onto process exit codes with [`Error::exit_code`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ord of zero")]
    OrdOfZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("polynomial {0} is not irreducible")]
    NotIrreducible(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degenerate map: resultant is zero")]
    DegenerateMap,
    #[error("map degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("incompatible quadratic fields Q(sqrt {0}) and Q(sqrt {1})")]
    FieldMismatch(i64, i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("insufficient depth: need N = {required} (bound {bound:e} exceeds tolerance {tol:e})")]
    InsufficientDepth { required: usize, bound: f64, tol: f64 },
    #[error("p-adic precision exhausted at p = {0}")]
    PrecisionExhausted(u64),
    #[error("depth too large: exact integers exceed {0} bits")]
    DepthTooLarge(u64),
    #[error("point lies on the support of the divisor")]
    OnSupport,
    #[error("not effective: {0}")]
    NotEffective(String),
    #[error("root finder failed to converge for {0}")]
    RootFinder(String),
    #[error("exceptional seed: backward orbit is finite")]
    ExceptionalSeed,
    #[error("empty point cloud")]
    EmptyCloud,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Exit code convention shared with the CLI: 2 invalid input, 3 degenerate
    /// map, 4 non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DegenerateMap => 3,
            Error::InsufficientDepth { .. }
            | Error::PrecisionExhausted(_)
            | Error::RootFinder(_)
            | Error::DepthTooLarge(_) => 4,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
