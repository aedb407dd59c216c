use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polytope is unbounded")]
    UnboundedInput,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polytope is empty")]
    EmptyPolytope,
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("affine piece {0} is active only on a measure-zero set")]
    DegeneratePiece(usize),
    #[error("divisor is not Q-Cartier on cone {0}")]
    NotQCartier(usize),
    #[error("fan is not complete")]
    NonCompleteFan,
    #[error("fan is not smooth at cone {0}")]
    NonSmoothAmbient(usize),
    #[error("ray lies outside the given cone")]
    RayOutsideCone,
    #[error("ideal has no generators")]
    EmptyIdeal,
    #[error("no nef decomposition with multiplier up to {0}")]
    NoNefDecomposition(u64),
    #[error("function is not convex: {0}")]
    NotConvex(String),
    #[error("ceiling {ceiling} is below max f = {max}")]
    CeilingTooLow { ceiling: String, max: String },
    #[error("L^r - E is not relatively semi-ample")]
    NotSemiAmple,
    #[error("flag levels are not nested at level {0}")]
    NestingViolation(usize),
    #[error("flag ideal (t^N) gives a trivial test configuration")]
    TrivialFlag,
    #[error("slopes or values are not integral; use r = {required_r}")]
    NonIntegralSlopes { required_r: u64 },
    #[error("{series} is not polynomial: mismatch at k = {k}")]
    NotPolynomial { series: &'static str, k: u64 },
    #[error("not enough samples: need {need}, got {got}")]
    InsufficientSamples { need: usize, got: usize },
    #[error("component data is unavailable for this route")]
    MissingComponents,
    #[error("minimum norm vanishes; configuration is trivial")]
    TrivialConfiguration,
    #[error("divisor is not torus invariant")]
    NotInvariant,
    #[error("divisor is not in the linear system |2T|")]
    NotInLinearSystem,
    #[error("no exceptional rays")]
    NoExceptionalRays,
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
