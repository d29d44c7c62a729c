use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tolerance;

const MAX_SWEEPS: usize = 100;

/// Spectrum of a Hermitian matrix: eigenvalues in descending order and the
/// matching orthonormal eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn vector(&self, m: usize) -> Vec<Complex64> {
        (0..self.dim()).map(|i| self.eigenvectors[(i, m)]).collect()
    }

    /// `sum_m f(lambda_m) |v_m><v_m|`.
    pub fn compose(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::blank(n);
        for (m, &lambda) in self.eigenvalues.iter().enumerate() {
            let w = f(lambda);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vi = self.eigenvectors[(i, m)] * w;
                for j in 0..n {
                    out[(i, j)] += vi * self.eigenvectors[(j, m)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.compose(|x| x)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<EigenSystem> {
    m.require_hermitian()?;
    let n = m.dim();
    // Work on the exactly Hermitian part.
    let mut a = ComplexMatrix::from_fn(n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)].conj()))?;
    for i in 0..n {
        a[(i, i)].im = 0.0;
    }
    let mut v = ComplexMatrix::identity(n)?;
    let scale = a.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < tolerance::JACOBI_CONVERGENCE * scale {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(y, y)].re.total_cmp(&a[(x, x)].re));
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, col| v[(i, order[col])])?;
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Annihilates `a[p][q]` with `J = D R`, where `D` removes the phase of the
/// pivot and `R` is the real symmetric Jacobi rotation. `a <- J^dagger a J`,
/// `v <- v J`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let n = a.dim();
    let phase = apq / r; // e^{i phi}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on the (p, q) block.
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * jqp;
        a[(k, q)] = akp * s + akq * jqq;

        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * jqp;
        v[(k, q)] = vkp * s + vkq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * jqp.conj();
        a[(q, k)] = apk * s + aqk * jqq.conj();
    }

    a[(p, p)] = Complex64::new(app - t * r, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * r, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
}

/// Applies `f` to the spectrum of a Hermitian matrix: `sum_m f(lambda_m) |v_m><v_m|`.
///
/// Eigenvalues in `[-1e-10, 0)` are clamped to zero first. A non-finite
/// `f(lambda)` is reported as [`Error::DomainError`].
pub fn spectral_apply(m: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    let mut eig = hermitian_eig(m)?;
    clamp_spectrum(&mut eig.eigenvalues);
    for &lambda in &eig.eigenvalues {
        if !f(lambda).is_finite() {
            return Err(Error::DomainError { eigenvalue: lambda });
        }
    }
    Ok(eig.compose(f))
}

pub(crate) fn clamp_spectrum(values: &mut [f64]) {
    for x in values.iter_mut() {
        if *x < 0.0 && *x >= -tolerance::EIGEN_CLAMP {
            *x = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn check_system(m: &ComplexMatrix, eig: &EigenSystem) {
        assert!(eig.reconstruct().max_abs_diff(m) < 1e-10);
        let n = m.dim();
        for a in 0..n {
            for b in 0..n {
                let dot: Complex64 = (0..n)
                    .map(|i| eig.eigenvectors[(i, a)].conj() * eig.eigenvectors[(i, b)])
                    .sum();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((dot - expect).norm() < 1e-10);
            }
        }
        assert!(eig.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn identity_spectrum() {
        let m = ComplexMatrix::identity(3).unwrap();
        let eig = hermitian_eig(&m).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 1.0, 1.0]);
        check_system(&m, &eig);
    }

    #[test]
    fn diagonal_spectrum_keeps_standard_basis() {
        let m = ComplexMatrix::from_diag(&[-1.0, 2.0]).unwrap();
        let eig = hermitian_eig(&m).unwrap();
        assert_eq!(eig.eigenvalues, vec![2.0, -1.0]);
        assert_eq!(eig.vector(0), vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(eig.vector(1), vec![c(1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn pauli_spectra() {
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let y = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
        ])
        .unwrap();
        for m in [x, y] {
            let eig = hermitian_eig(&m).unwrap();
            assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-14);
            assert!((eig.eigenvalues[1] + 1.0).abs() < 1e-14);
            check_system(&m, &eig);
        }
    }

    #[test]
    fn complex_hermitian_3x3() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(1.0, -1.0), c(0.0, 0.5)],
            vec![c(1.0, 1.0), c(-1.0, 0.0), c(0.25, 0.0)],
            vec![c(0.0, -0.5), c(0.25, 0.0), c(0.5, 0.0)],
        ])
        .unwrap();
        let eig = hermitian_eig(&m).unwrap();
        check_system(&m, &eig);
        let trace: f64 = eig.eigenvalues.iter().sum();
        assert!((trace - 1.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn sqrt_of_diagonal() {
        let m = ComplexMatrix::from_diag(&[4.0, 9.0]).unwrap();
        let r = spectral_apply(&m, f64::sqrt).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::from_diag(&[2.0, 3.0]).unwrap()) < 1e-14);
    }

    #[test]
    fn sqrt_of_projector_is_itself() {
        let s = 1.0 / 3f64.sqrt();
        let p = ComplexMatrix::outer(&[c(s, 0.0), c(0.0, s), c(-s, 0.0)]).unwrap();
        let r = spectral_apply(&p, f64::sqrt).unwrap();
        assert!(r.max_abs_diff(&p) < 1e-10);
    }

    #[test]
    fn entropy_kernel_on_uniform_spectrum() {
        let m = ComplexMatrix::from_diag(&[0.5, 0.5]).unwrap();
        let r = spectral_apply(&m, super::super::neg_x_ln_x).unwrap();
        let half_ln2 = 0.5 * std::f64::consts::LN_2;
        assert!(r.max_abs_diff(&ComplexMatrix::from_diag(&[half_ln2, half_ln2]).unwrap()) < 1e-15);
        assert!((r.trace().re - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn clamping_and_domain_errors() {
        let tiny = ComplexMatrix::from_diag(&[1.0, -5e-11]).unwrap();
        let r = spectral_apply(&tiny, f64::sqrt).unwrap();
        assert_eq!(r[(1, 1)], c(0.0, 0.0));

        let neg = ComplexMatrix::from_diag(&[1.0, -1e-3]).unwrap();
        assert_eq!(
            spectral_apply(&neg, f64::sqrt),
            Err(Error::DomainError { eigenvalue: -1e-3 })
        );
    }
}
