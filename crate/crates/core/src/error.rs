use thiserror::Error;

/// Failures raised by the arithmetic, linear algebra and change-of-ordering engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("valuation unknown: value is zero at the available precision")]
    UnknownValuation,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("ideal is not zero-dimensional: {0}")]
    NotZeroDimensional(String),
    #[error("basis is not reduced: {0}")]
    NotReduced(String),
    #[error("leading monomial ideal is not semi-stable for variable {0}")]
    NotSemiStable(usize),
    #[error("ideal is not in shape position: minimal polynomial has degree {found} < {expected}")]
    NotShapePosition { found: usize, expected: usize },
    #[error("degree bound {0} too small: staircase not stabilised")]
    BoundTooSmall(u32),
    #[error("degree {degree} exceeds quotient dimension {delta} with monomials still queued")]
    InternalDegreeOverflow { degree: u32, delta: usize },
    #[error("could not sample a unimodular matrix after {0} attempts")]
    SamplingFailed(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn precision(msg: impl Into<String>) -> Self {
        Error::PrecisionExhausted(msg.into())
    }
}
