//! Numerical tolerances shared by validation, measures and verification.

/// Hermiticity, trace and positivity checks on candidate states.
pub const VALIDATION: f64 = 1e-10;

/// Identities that hold in exact arithmetic and involve no iteration.
pub const EXACT: f64 = 1e-10;

/// Comparisons involving quantities computed through the eigensolver.
pub const ITERATIVE: f64 = 1e-8;

/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are treated as zero by spectral functions.
pub const EIGEN_CLAMP: f64 = 1e-10;

/// Eigenvalues of a density matrix below this are round-off and are taken
/// as zero by its square root.
pub const SPECTRAL_NOISE: f64 = 1e-14;

/// Off-diagonal Frobenius norm at which the Jacobi sweeps stop.
pub const JACOBI_CONVERGENCE: f64 = 1e-12;

/// Tolerance record threaded through campaigns and CLI runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub validation: f64,
    pub exact: f64,
    pub iterative: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            validation: VALIDATION,
            exact: EXACT,
            iterative: ITERATIVE,
        }
    }
}
