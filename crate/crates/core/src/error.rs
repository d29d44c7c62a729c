use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |M - M^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {0} is not supported (need d >= 2)")]
    BadDimension(usize),

    #[error("function undefined at eigenvalue {eigenvalue:e}")]
    DomainError { eigenvalue: f64 },

    #[error("not a probability vector: {0}")]
    BadProbabilityVector(String),

    #[error("population {index} = {value:e} outside [0, 1]")]
    OutOfRange { index: usize, value: f64 },

    #[error("trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semi-definite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("principal submatrix ({j}, {k}) violates |rho_jk|^2 <= rho_jj rho_kk by {excess:e}")]
    SubmatrixViolation { j: usize, k: usize, excess: f64 },

    #[error("rank {rank} invalid for dimension {dim}")]
    BadRank { rank: usize, dim: usize },

    #[error("parameter {name} = {value} out of range")]
    ParamOutOfRange { name: &'static str, value: f64 },

    #[error("unknown or unsupported measure: {0}")]
    UnknownMeasure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
