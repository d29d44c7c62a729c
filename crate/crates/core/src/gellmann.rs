//! Generalized Gell-Mann basis of `C^{d x d}` relative to the computational basis.
//!
//! Generators are ordered as: identity, diagonal `Gamma_j` for `j = 1..d-1`,
//! then for each pair `k < l` (lexicographic) the symmetric `Gamma^s_{k,l}`
//! followed by the antisymmetric `Gamma^a_{k,l}`. All non-identity generators
//! have Hilbert-Schmidt norm squared 2; the identity has `d`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hs_inner, ComplexMatrix};
use crate::tolerance;

#[derive(Debug, Clone)]
pub struct GellMannBasis {
    dim: usize,
    identity: ComplexMatrix,
    diagonal: Vec<ComplexMatrix>,
    pairs: Vec<(usize, usize)>,
    symmetric: Vec<ComplexMatrix>,
    antisymmetric: Vec<ComplexMatrix>,
}

/// Kind of a basis element, with 0-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Identity,
    Diagonal(usize),
    Symmetric(usize, usize),
    Antisymmetric(usize, usize),
}

impl GellMannBasis {
    pub fn new(dim: usize) -> Result<Self> {
        build_basis(dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn identity(&self) -> &ComplexMatrix {
        &self.identity
    }

    /// `Gamma_j` for `j = 1..d-1`, stored at index `j - 1`.
    pub fn diagonal(&self) -> &[ComplexMatrix] {
        &self.diagonal
    }

    /// Index pairs `(k, l)`, `k < l`, 0-based, in storage order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn symmetric(&self) -> &[ComplexMatrix] {
        &self.symmetric
    }

    pub fn antisymmetric(&self) -> &[ComplexMatrix] {
        &self.antisymmetric
    }

    pub fn len(&self) -> usize {
        1 + self.diagonal.len() + self.symmetric.len() + self.antisymmetric.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All `d^2` generators in canonical order.
    pub fn generators(&self) -> Vec<(Generator, &ComplexMatrix)> {
        let mut out = Vec::with_capacity(self.len());
        out.push((Generator::Identity, &self.identity));
        for (j, g) in self.diagonal.iter().enumerate() {
            out.push((Generator::Diagonal(j + 1), g));
        }
        for (idx, &(k, l)) in self.pairs.iter().enumerate() {
            out.push((Generator::Symmetric(k, l), &self.symmetric[idx]));
            out.push((Generator::Antisymmetric(k, l), &self.antisymmetric[idx]));
        }
        out
    }
}

pub fn build_basis(dim: usize) -> Result<GellMannBasis> {
    let identity = ComplexMatrix::identity(dim)?;

    let diagonal = (1..dim)
        .map(|j| {
            let norm = (2.0 / (j * (j + 1)) as f64).sqrt();
            let mut entries = vec![0.0; dim];
            for e in entries.iter_mut().take(j) {
                *e = norm;
            }
            entries[j] = -(j as f64) * norm;
            ComplexMatrix::from_diag(&entries)
        })
        .collect::<Result<Vec<_>>>()?;

    let pairs: Vec<(usize, usize)> = (0..dim)
        .flat_map(|k| (k + 1..dim).map(move |l| (k, l)))
        .collect();

    let mut symmetric = Vec::with_capacity(pairs.len());
    let mut antisymmetric = Vec::with_capacity(pairs.len());
    for &(k, l) in &pairs {
        let mut s = ComplexMatrix::zeros(dim)?;
        s[(k, l)] = Complex64::new(1.0, 0.0);
        s[(l, k)] = Complex64::new(1.0, 0.0);
        symmetric.push(s);

        let mut a = ComplexMatrix::zeros(dim)?;
        a[(k, l)] = Complex64::new(0.0, -1.0);
        a[(l, k)] = Complex64::new(0.0, 1.0);
        antisymmetric.push(a);
    }

    Ok(GellMannBasis {
        dim,
        identity,
        diagonal,
        pairs,
        symmetric,
        antisymmetric,
    })
}

/// Expansion coefficients `<Gamma|X>` of a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GmComponents {
    pub dim: usize,
    /// `Tr(X)`.
    pub trace_part: f64,
    /// `<Gamma_j|X>`, `j = 1..d-1`.
    pub diag_coeffs: Vec<f64>,
    /// `<Gamma^s_{k,l}|X>` in pair order.
    pub sym_coeffs: Vec<f64>,
    /// `<Gamma^a_{k,l}|X>` in pair order.
    pub antisym_coeffs: Vec<f64>,
}

impl GmComponents {
    /// `(1/2) sum_{k<l, tau} <Gamma^tau_{k,l}|X>^2`.
    pub fn off_diagonal_weight(&self) -> f64 {
        0.5 * self
            .sym_coeffs
            .iter()
            .chain(&self.antisym_coeffs)
            .map(|c| c * c)
            .sum::<f64>()
    }

    /// `(1/2) sum_j <Gamma_j|X>^2`.
    pub fn diagonal_weight(&self) -> f64 {
        0.5 * self.diag_coeffs.iter().map(|c| c * c).sum::<f64>()
    }

    /// Same components with the off-diagonal part removed.
    pub fn diagonal_part(&self) -> Self {
        Self {
            sym_coeffs: vec![0.0; self.sym_coeffs.len()],
            antisym_coeffs: vec![0.0; self.antisym_coeffs.len()],
            ..self.clone()
        }
    }
}

pub fn decompose(x: &ComplexMatrix, basis: &GellMannBasis) -> Result<GmComponents> {
    if x.dim() != basis.dim {
        return Err(Error::DimensionMismatch {
            expected: basis.dim,
            found: x.dim(),
        });
    }
    x.require_hermitian()?;
    let coeff = |g: &ComplexMatrix| hs_inner(g, x).map(|z| z.re);
    Ok(GmComponents {
        dim: basis.dim,
        trace_part: x.trace().re,
        diag_coeffs: basis.diagonal.iter().map(coeff).collect::<Result<_>>()?,
        sym_coeffs: basis.symmetric.iter().map(coeff).collect::<Result<_>>()?,
        antisym_coeffs: basis.antisymmetric.iter().map(coeff).collect::<Result<_>>()?,
    })
}

/// `X = Tr(X)/d I + (1/2) sum_j c_j Gamma_j + (1/2) sum_{k<l,tau} c^tau_{kl} Gamma^tau_{kl}`.
pub fn reconstruct(c: &GmComponents, basis: &GellMannBasis) -> Result<ComplexMatrix> {
    let d = basis.dim;
    let pairs = basis.pairs.len();
    if c.dim != d
        || c.diag_coeffs.len() != d - 1
        || c.sym_coeffs.len() != pairs
        || c.antisym_coeffs.len() != pairs
    {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: c.dim,
        });
    }
    let mut x = basis.identity.scale(c.trace_part / d as f64);
    let terms = basis
        .diagonal
        .iter()
        .zip(&c.diag_coeffs)
        .chain(basis.symmetric.iter().zip(&c.sym_coeffs))
        .chain(basis.antisymmetric.iter().zip(&c.antisym_coeffs));
    for (g, &coef) in terms {
        if coef != 0.0 {
            x = &x + &g.scale(0.5 * coef);
        }
    }
    Ok(x)
}

fn check_probabilities(pops: &[f64]) -> Result<()> {
    if pops.len() < 2 {
        return Err(Error::BadDimension(pops.len()));
    }
    if let Some((i, p)) = pops
        .iter()
        .enumerate()
        .find(|(_, &p)| !p.is_finite() || p < -tolerance::VALIDATION)
    {
        return Err(Error::BadProbabilityVector(format!(
            "entry {i} = {p} is negative"
        )));
    }
    let sum: f64 = pops.iter().sum();
    if (sum - 1.0).abs() > tolerance::VALIDATION {
        return Err(Error::BadProbabilityVector(format!("sum is {sum}")));
    }
    Ok(())
}

/// Diagonal Bloch components `<Gamma_j|rho>` of a state with the given populations.
///
/// Uses the closed form
/// `<Gamma_k|rho> = sqrt(2/(k(k+1))) (1 - sum_{m>k+1} p_m - (k+1) p_{k+1})`
/// (1-based), obtained by eliminating `sum_{m<=k} p_m` with the unit trace.
pub fn bloch_from_populations(pops: &[f64]) -> Result<Vec<f64>> {
    check_probabilities(pops)?;
    let d = pops.len();
    let mut tail = 0.0; // sum of p_m for m > k + 1 (1-based)
    let mut out = vec![0.0; d - 1];
    for k in (1..d).rev() {
        let next = pops[k]; // p_{k+1}
        let norm = (2.0 / (k * (k + 1)) as f64).sqrt();
        out[k - 1] = norm * (1.0 - tail - (k + 1) as f64 * next);
        tail += next;
    }
    Ok(out)
}

/// Inverse of [`bloch_from_populations`]:
/// `p_m = 1/d - sqrt((m-1)/(2m)) b_{m-1} + sum_{j=m}^{d-1} b_j / sqrt(2 j (j+1))`.
///
/// Populations within `1e-10` of `[0, 1]` are clamped.
pub fn populations_from_bloch(diag_coeffs: &[f64]) -> Result<Vec<f64>> {
    let d = diag_coeffs.len() + 1;
    if d < 2 {
        return Err(Error::BadDimension(d));
    }
    let b = |j: usize| diag_coeffs[j - 1];
    let mut pops = Vec::with_capacity(d);
    // suffix[m] = sum_{j=m}^{d-1} b_j / sqrt(2 j (j+1))
    let mut suffix = vec![0.0; d + 1];
    for j in (1..d).rev() {
        suffix[j] = suffix[j + 1] + b(j) / ((2 * j * (j + 1)) as f64).sqrt();
    }
    for (m, tail) in suffix.iter().enumerate().take(d + 1).skip(1) {
        let mut p = 1.0 / d as f64 + tail;
        if m >= 2 {
            p -= ((m - 1) as f64 / (2 * m) as f64).sqrt() * b(m - 1);
        }
        if !(-tolerance::VALIDATION..=1.0 + tolerance::VALIDATION).contains(&p) {
            return Err(Error::OutOfRange {
                index: m - 1,
                value: p,
            });
        }
        pops.push(p.clamp(0.0, 1.0));
    }
    Ok(pops)
}
