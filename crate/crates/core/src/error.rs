use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error: {msg}")]
pub struct ParseError {
    pub msg: String,
}

impl ParseError {
    pub fn new(msg: impl Into<String>) -> Self {
        ParseError { msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("unassigned variable {0}")]
    Unassigned(String),
    #[error("scalars with incompatible moduli")]
    IncompatibleModuli,
    #[error("polynomial has degree 0 in {0}")]
    DegreeZero(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("bad assignment: {0}")]
    Arity(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("mode depth {0} not allowed in this sector")]
    SectorRule(String),
    #[error("h(0) does not act on the twisted sector")]
    ZeroModeTwisted,
    #[error("sector mismatch")]
    SectorMismatch,
    #[error("theta is only defined on M(1) and the twisted sector")]
    ThetaOnLambda,
    #[error("vector is not in the span of the given generators (degree {0})")]
    NotInSpan(String),
    #[error("vector is not homogeneous")]
    NonHomogeneous,
    #[error("mode index {0} is not addressable for these momenta")]
    IllIndexedMode(String),
    #[error("truncation cutoff exceeded: {0}")]
    CutoffExceeded(String),
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("phase classes cannot be merged: {0}")]
    PhaseClasses(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
