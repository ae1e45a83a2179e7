use thiserror::Error;

/// Errors raised by the algebra layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field parameters too large: {0}")]
    ParamsTooLarge(String),

    #[error("element belongs to a different field context")]
    CtxMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("source degree {src} does not divide target degree {dst}")]
    DegreeNotDivisible { src: usize, dst: usize },

    #[error("polynomials share a common factor of positive degree: {witness}")]
    NotCoprime { witness: String },

    #[error("need at least {need} polynomials, got {got}")]
    TooFewPolynomials { got: usize, need: usize },

    #[error("every polynomial in the system is zero")]
    AllZeroSystem,

    #[error("resultant undefined: both inputs are constant in the main variable")]
    BothConstant,

    #[error("predicted size {predicted} exceeds cap {cap}")]
    SizeCapExceeded { predicted: u128, cap: u128 },

    #[error("random combination kept degrading the gcd after {attempts} draws (seeds {seeds:?})")]
    RetryExhausted { attempts: usize, seeds: Vec<u64> },

    #[error("the marked point must be nonzero")]
    ZeroPoint,

    #[error("the operator polynomial must be non-constant")]
    ConstantOperator,

    #[error("exact division left a nonzero remainder")]
    InexactDivision,

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
