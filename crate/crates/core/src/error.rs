use thiserror::Error;

/// Violations of the constraints on `(N, a)` cover parameters.
///
/// Each variant carries a stable numeric code (see [`ParamError::code`]) that
/// the command-line front end reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("cover degree N = {n} must be at least 2")]
    DegreeTooSmall { n: u32 },
    #[error("branching exponent a{index} = {value} is outside 0 < a < {n}")]
    ExponentOutOfRange { index: usize, value: i64, n: u32 },
    #[error("gcd(N, a1, a2, a3, a4) = {gcd}, expected 1")]
    NotCoprime { gcd: u32 },
    #[error("a1 + a2 + a3 + a4 = {sum} is not divisible by N = {n}")]
    SumNotDivisible { sum: i64, n: u32 },
}

impl ParamError {
    pub fn code(&self) -> &'static str {
        match self {
            ParamError::DegreeTooSmall { .. } => "E_DEGREE",
            ParamError::ExponentOutOfRange { .. } => "E_RANGE",
            ParamError::NotCoprime { .. } => "E_GCD",
            ParamError::SumNotDivisible { .. } => "E_SUM",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("cover {0} is not orientable: the pulled-back quadratic differential has no square root")]
    NotOrientable(String),
    #[error("index sets must be non-empty and of equal size (got {left} and {right})")]
    IndexSizeMismatch { left: usize, right: usize },
    #[error("index {index} appears more than once")]
    DuplicateIndex { index: usize },
    #[error("index {index} is outside 1..={genus}")]
    IndexOutOfRange { index: usize, genus: usize },
    #[error("invalid exponent list: {0}")]
    InvalidExponents(String),
    #[error("invalid origami: {0}")]
    InvalidOrigami(String),
    #[error("origami has no deck transformation")]
    MissingDeck,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid estimator arguments: {0}")]
    InvalidEstimator(String),
}

impl Error {
    /// Stable code for reporting; parameter errors keep their own codes.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Params(p) => p.code(),
            Error::NotOrientable(_) => "E_ORIENT",
            Error::IndexSizeMismatch { .. } | Error::DuplicateIndex { .. } | Error::IndexOutOfRange { .. } => "E_INDEX",
            Error::InvalidExponents(_) => "E_EXPONENTS",
            Error::InvalidOrigami(_) => "E_ORIGAMI",
            Error::MissingDeck => "E_DECK",
            Error::Parse(_) => "E_PARSE",
            Error::InvalidEstimator(_) => "E_ESTIMATOR",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
