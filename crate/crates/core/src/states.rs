//! Validated density matrices and the state families used by the campaigns.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix, EigenSystem};
use crate::rng::PortableRng;
use crate::tolerance;

/// Hermitian, unit-trace, positive semi-definite matrix. The spectrum is kept
/// alongside so that spectral functions of the state are computed once.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    eigen: EigenSystem,
}

impl DensityMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn eigen(&self) -> &EigenSystem {
        &self.eigen
    }

    /// Diagonal entries `rho_jj`.
    pub fn populations(&self) -> Vec<f64> {
        self.matrix.diagonal()
    }

    /// `sqrt(rho)` from the cached spectrum. Eigenvalues below
    /// [`tolerance::SPECTRAL_NOISE`] (including clamped negatives) count as zero.
    pub fn sqrt(&self) -> ComplexMatrix {
        self.eigen.compose(|x| {
            if x < tolerance::SPECTRAL_NOISE {
                0.0
            } else {
                x.sqrt()
            }
        })
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Number of eigenvalues above the validation tolerance.
    pub fn numerical_rank(&self) -> usize {
        self.eigen
            .eigenvalues
            .iter()
            .filter(|&&x| x > tolerance::VALIDATION)
            .count()
    }

    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        validate(&self.matrix.permuted(perm))
    }
}

/// Checks every defining property of a density matrix and wraps it.
pub fn validate(m: &ComplexMatrix) -> Result<DensityMatrix> {
    m.require_hermitian()?;
    let trace = m.trace().re;
    if (trace - 1.0).abs() > tolerance::VALIDATION {
        return Err(Error::TraceNotOne { trace });
    }
    let eigen = hermitian_eig(m)?;
    let min_eigenvalue = eigen.min_eigenvalue();
    if min_eigenvalue < -tolerance::VALIDATION {
        return Err(Error::NotPositive { min_eigenvalue });
    }
    let d = m.dim();
    for j in 0..d {
        for k in j + 1..d {
            let excess = m[(j, k)].norm_sqr() - m[(j, j)].re * m[(k, k)].re;
            if excess > tolerance::VALIDATION {
                return Err(Error::SubmatrixViolation { j, k, excess });
            }
        }
    }
    Ok(DensityMatrix {
        matrix: m.clone(),
        eigen,
    })
}

/// Ginibre-induced random state `G G^dagger / Tr(G G^dagger)` with `G` a
/// `d x rank` matrix of standard complex Gaussians, drawn row by row.
pub fn random_state(dim: usize, rank: usize, rng: &mut PortableRng) -> Result<DensityMatrix> {
    validate(&random_state_matrix(dim, rank, rng)?)
}

pub(crate) fn random_state_matrix(
    dim: usize,
    rank: usize,
    rng: &mut PortableRng,
) -> Result<ComplexMatrix> {
    if dim < 2 {
        return Err(Error::BadDimension(dim));
    }
    if rank == 0 || rank > dim {
        return Err(Error::BadRank { rank, dim });
    }
    let g: Vec<Complex64> = (0..dim * rank).map(|_| rng.complex_normal()).collect();
    let mut m = ComplexMatrix::from_fn(dim, |i, j| {
        (0..rank)
            .map(|c| g[i * rank + c] * g[j * rank + c].conj())
            .sum()
    })?;
    let norm = m.trace().re;
    m = m.scale(1.0 / norm);
    for i in 0..dim {
        m[(i, i)].im = 0.0;
    }
    Ok(m)
}

/// `(1 - w) I/4 + w |psi><psi|` with `|psi> = sqrt(a)|0> + sqrt(1 - a)|1>`.
pub fn werner_ququart(w: f64, a: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::ParamOutOfRange { name: "w", value: w });
    }
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::ParamOutOfRange { name: "a", value: a });
    }
    let psi = [
        Complex64::new(a.sqrt(), 0.0),
        Complex64::new((1.0 - a).sqrt(), 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    ];
    let mixed = ComplexMatrix::identity(4)?.scale((1.0 - w) / 4.0);
    let pure = ComplexMatrix::outer(&psi)?.scale(w);
    validate(&(&mixed + &pure))
}

pub fn maximally_mixed(dim: usize) -> Result<DensityMatrix> {
    validate(&ComplexMatrix::identity(dim)?.scale(1.0 / dim as f64))
}

/// `|j><j|`.
pub fn basis_state(dim: usize, j: usize) -> Result<DensityMatrix> {
    if j >= dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: j,
        });
    }
    let mut m = ComplexMatrix::zeros(dim)?;
    m[(j, j)] = Complex64::new(1.0, 0.0);
    validate(&m)
}

/// Normalizes `amplitudes` and returns the projector onto it.
pub fn pure_state(amplitudes: &[Complex64]) -> Result<DensityMatrix> {
    let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let psi: Vec<Complex64> = amplitudes.iter().map(|z| z / norm).collect();
    validate(&ComplexMatrix::outer(&psi)?)
}

/// Equal-weight superposition `sum_j e^{i phi_j} |j> / sqrt(d)`.
pub fn uniform_superposition(phases: &[f64]) -> Result<DensityMatrix> {
    let amps: Vec<Complex64> = phases.iter().map(|&p| Complex64::from_polar(1.0, p)).collect();
    pure_state(&amps)
}

/// `omega xi + (1 - omega) eta`.
pub fn mixture(omega: f64, xi: &DensityMatrix, eta: &DensityMatrix) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&omega) {
        return Err(Error::ParamOutOfRange {
            name: "omega",
            value: omega,
        });
    }
    if xi.dim() != eta.dim() {
        return Err(Error::DimensionMismatch {
            expected: xi.dim(),
            found: eta.dim(),
        });
    }
    validate(&(&xi.matrix.scale(omega) + &eta.matrix.scale(1.0 - omega)))
}

/// Probability vector describing a state diagonal in the reference basis.
#[derive(Debug, Clone, PartialEq)]
pub struct IncoherentState {
    populations: Vec<f64>,
}

impl IncoherentState {
    pub fn new(populations: Vec<f64>) -> Result<Self> {
        if populations.len() < 2 {
            return Err(Error::BadDimension(populations.len()));
        }
        let sum: f64 = populations.iter().sum();
        if let Some((index, &value)) = populations
            .iter()
            .enumerate()
            .find(|(_, p)| !(-tolerance::VALIDATION..=1.0 + tolerance::VALIDATION).contains(*p))
        {
            return Err(Error::OutOfRange { index, value });
        }
        if (sum - 1.0).abs() > tolerance::VALIDATION {
            return Err(Error::TraceNotOne { trace: sum });
        }
        Ok(Self { populations })
    }

    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_diag(&self.populations).expect("dim >= 2")
    }
}

/// Closest incoherent state in Hilbert-Schmidt distance: the diagonal of `rho`.
pub fn closest_incoherent(rho: &DensityMatrix) -> IncoherentState {
    IncoherentState {
        populations: rho.populations(),
    }
}

/// Diagonal of `sqrt(rho)`. Not normalized: its sum is `Tr sqrt(rho) >= 1`.
pub fn sqrt_diag(rho: &DensityMatrix) -> Vec<f64> {
    rho.sqrt().diagonal()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::spectral_apply;

    #[test]
    fn validate_accepts_and_rejects() {
        assert!(maximally_mixed(4).is_ok());

        let bad = ComplexMatrix::from_real_rows(&[&[0.5, 0.6], &[0.6, 0.5]]).unwrap();
        match validate(&bad) {
            Err(Error::NotPositive { min_eigenvalue }) => {
                assert!((min_eigenvalue + 0.1).abs() < 1e-12)
            }
            other => panic!("{other:?}"),
        }

        let ok = ComplexMatrix::from_real_rows(&[&[0.7, 0.3], &[0.3, 0.3]]).unwrap();
        let rho = validate(&ok).unwrap();
        // eigenvalues (1 +- sqrt(0.16 + 0.36)) / 2
        let disc = (0.16f64 + 0.36).sqrt();
        assert!((rho.eigen().eigenvalues[1] - (1.0 - disc) / 2.0).abs() < 1e-12);

        let trace2 = ComplexMatrix::identity(2).unwrap();
        assert!(matches!(validate(&trace2), Err(Error::TraceNotOne { .. })));

        let nh = ComplexMatrix::from_real_rows(&[&[0.5, 0.1], &[0.0, 0.5]]).unwrap();
        assert!(matches!(validate(&nh), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn random_rank_one_is_pure() {
        let mut rng = PortableRng::new(5);
        for d in 2..=6 {
            let rho = random_state(d, 1, &mut rng).unwrap();
            assert!((rho.purity() - 1.0).abs() < 1e-10);
            assert_eq!(rho.numerical_rank(), 1);
        }
    }

    #[test]
    fn random_state_is_deterministic() {
        let a = random_state(5, 5, &mut PortableRng::new(99)).unwrap();
        let b = random_state(5, 5, &mut PortableRng::new(99)).unwrap();
        assert_eq!(a.matrix(), b.matrix());
    }

    #[test]
    fn random_state_rank_errors() {
        let mut rng = PortableRng::new(1);
        assert!(matches!(random_state(3, 0, &mut rng), Err(Error::BadRank { .. })));
        assert!(matches!(random_state(3, 4, &mut rng), Err(Error::BadRank { .. })));
        assert!(matches!(random_state(1, 1, &mut rng), Err(Error::BadDimension(1))));
    }

    #[test]
    fn werner_family() {
        let rho = werner_ququart(0.0, 0.3).unwrap();
        assert!(rho.matrix().max_abs_diff(&ComplexMatrix::identity(4).unwrap().scale(0.25)) < 1e-16);

        let rho = werner_ququart(1.0, 1.0).unwrap();
        assert!(rho.matrix().max_abs_diff(basis_state(4, 0).unwrap().matrix()) < 1e-16);

        let rho = werner_ququart(1.0, 0.5).unwrap();
        assert!((rho.matrix()[(0, 1)].re - 0.5).abs() < 1e-15);
        let pops = closest_incoherent(&rho).populations().to_vec();
        for (p, e) in pops.iter().zip([0.5, 0.5, 0.0, 0.0]) {
            assert!((p - e).abs() < 1e-15);
        }

        assert!(matches!(werner_ququart(1.5, 0.5), Err(Error::ParamOutOfRange { name: "w", .. })));
        assert!(matches!(werner_ququart(0.5, -0.1), Err(Error::ParamOutOfRange { name: "a", .. })));
    }

    #[test]
    fn closest_incoherent_fixed_points() {
        let rho = validate(&ComplexMatrix::from_diag(&[0.1, 0.6, 0.3]).unwrap()).unwrap();
        assert_eq!(closest_incoherent(&rho).populations(), &[0.1, 0.6, 0.3]);
        let mm = maximally_mixed(5).unwrap();
        assert!(closest_incoherent(&mm).populations().iter().all(|&p| (p - 0.2).abs() < 1e-16));
    }

    #[test]
    fn sqrt_diag_examples() {
        let mm = maximally_mixed(4).unwrap();
        assert!(sqrt_diag(&mm).iter().all(|&x| (x - 0.5).abs() < 1e-15));

        let pure = pure_state(&[
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.48),
            Complex64::new(0.64, 0.0),
        ])
        .unwrap();
        let s = sqrt_diag(&pure);
        for (x, p) in s.iter().zip(pure.populations()) {
            assert!((x - p).abs() < 1e-10);
        }

        let rho = werner_ququart(0.5, 0.5).unwrap();
        let oracle = spectral_apply(rho.matrix(), f64::sqrt).unwrap().diagonal();
        let s = sqrt_diag(&rho);
        for ((x, o), p) in s.iter().zip(&oracle).zip(rho.populations()) {
            assert!((x - o).abs() < 1e-12);
            assert!(*x >= p - 1e-10);
        }
    }

    #[test]
    fn incoherent_state_checks() {
        assert!(IncoherentState::new(vec![0.5, 0.5]).is_ok());
        assert!(IncoherentState::new(vec![0.7, 0.7]).is_err());
        assert!(IncoherentState::new(vec![1.2, -0.2]).is_err());
    }

    #[test]
    fn mixture_is_valid() {
        let a = basis_state(3, 0).unwrap();
        let b = basis_state(3, 2).unwrap();
        let m = mixture(0.25, &a, &b).unwrap();
        assert_eq!(m.populations(), vec![0.25, 0.0, 0.75]);
        assert!(mixture(1.5, &a, &b).is_err());
    }
}
