use thiserror::Error;

/// Errors raised by the algebra, the pipeline and the data loaders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at q = {0}")]
    PoleAtPoint(String),
    #[error("argument must have zero constant term")]
    PositiveValuationRequired,
    #[error("argument must have constant term exactly 1")]
    UnitConstantRequired,
    #[error("linear coefficient is not invertible")]
    LinearTermNotInvertible,
    #[error("series is not in Lambda_* (needs zero constant and linear rank terms, nonzero quadratic)")]
    NotInLambdaStar,
    #[error("series is not homogeneous of degree {0}")]
    NotHomogeneous(u32),
    #[error("requested degree {requested} exceeds reliable bound {bound}")]
    BeyondBound { requested: u32, bound: u32 },
    #[error("argument is not in the first filtration step (found weight {0})")]
    FiltrationViolation(i64),
    #[error("critical-point system is singular at m = {0}")]
    SingularSystem(u32),
    #[error("(g, n) = ({g}, {n}) is unstable")]
    UnstableInput { g: u32, n: u32 },
    #[error("no vertex weight for (g, n) = ({g}, {n})")]
    MissingWeight { g: u32, n: u32 },
    #[error("oracle supports n <= {max}, got {n}")]
    OracleScopeExceeded { n: u32, max: u32 },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("missing entry for n = {n}, rho = {rho:?}")]
    MissingEntry { n: u32, rho: Vec<u32> },
    #[error("stability violation: genus {g} with n = {n}")]
    StabilityViolation { g: u32, n: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("coefficient is not a polynomial in q: {0}")]
    NotPolynomial(String),
}

pub type Result<T> = std::result::Result<T, Error>;
