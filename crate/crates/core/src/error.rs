use thiserror::Error;

use crate::scalar::Complex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value")]
    NonFinite,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("function has a pole at {at}")]
    PoleAtNode { at: Complex },

    #[error("function has no derivative rule: {0}")]
    Unsupported(String),

    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,

    #[error("interpolation nodes {a} and {b} are closer than the separation tolerance")]
    NodesTooClose { a: Complex, b: Complex },

    #[error("node {at} appears in both node sets")]
    NodeCollision { at: Complex },

    #[error("interpolation problem has no conditions")]
    EmptySpec,

    #[error("{n} interpolation conditions exceed the limit of {max}")]
    TooManyConditions { n: usize, max: usize },

    #[error("interpolation residual {residual:e} exceeds {limit:e}")]
    IllConditioned { residual: f64, limit: f64 },

    #[error("new interpolation condition does not determine the correction coefficient")]
    DegenerateCondition,

    #[error("invalid interpolation condition: {0}")]
    InvalidCondition(String),

    #[error("expected real input, found {at}")]
    NonRealInput { at: Complex },

    #[error("root finder did not converge in {iters} iterations")]
    NoConvergence { iters: usize },

    #[error("multiplicities sum to {found}, expected {expected}")]
    InconsistentMultiplicities { expected: usize, found: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square")]
    NotSquare,

    #[error("dimension {n} exceeds the supported maximum {max}")]
    TooLarge { n: usize, max: usize },

    #[error("function has a pole at eigenvalue {lambda}")]
    PoleAtEigenvalue { lambda: Complex },

    #[error("matrix is singular (eigenvalue {lambda})")]
    SingularMatrix { lambda: Complex },

    #[error("resolvent identity residual {residual:e} exceeds {limit:e}")]
    IdentityCheckFailed { residual: f64, limit: f64 },

    #[error("index {index} out of range for {len} eigenvalues")]
    InvalidIndex { index: usize, len: usize },

    #[error("numerical rank {found} of generalized eigenspace, expected {expected}")]
    RankMismatch { expected: usize, found: usize },

    #[error("cycles of generalized eigenvectors are not independent")]
    DependentCycles,

    #[error("Jordan reconstruction residual {residual:e} exceeds {limit:e}")]
    VerificationFailed { residual: f64, limit: f64 },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonFinite => "NonFinite",
            Error::Parse(_) => "Parse",
            Error::PoleAtNode { .. } => "PoleAtNode",
            Error::Unsupported(_) => "Unsupported",
            Error::DivisionByZeroPolynomial => "DivisionByZeroPolynomial",
            Error::NodesTooClose { .. } => "NodesTooClose",
            Error::NodeCollision { .. } => "NodeCollision",
            Error::EmptySpec => "EmptySpec",
            Error::TooManyConditions { .. } => "TooManyConditions",
            Error::IllConditioned { .. } => "IllConditioned",
            Error::DegenerateCondition => "DegenerateCondition",
            Error::InvalidCondition(_) => "InvalidCondition",
            Error::NonRealInput { .. } => "NonRealInput",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::InconsistentMultiplicities { .. } => "InconsistentMultiplicities",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotSquare => "NotSquare",
            Error::TooLarge { .. } => "TooLarge",
            Error::PoleAtEigenvalue { .. } => "PoleAtEigenvalue",
            Error::SingularMatrix { .. } => "SingularMatrix",
            Error::IdentityCheckFailed { .. } => "IdentityCheckFailed",
            Error::InvalidIndex { .. } => "InvalidIndex",
            Error::RankMismatch { .. } => "RankMismatch",
            Error::DependentCycles => "DependentCycles",
            Error::VerificationFailed { .. } => "VerificationFailed",
        }
    }
}
