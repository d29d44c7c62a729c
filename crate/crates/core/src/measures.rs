//! Coherence, predictability and entropy quantifiers, plus the upper bounds
//! that tie them together.
//!
//! Measures with more than one closed form expose each form through a
//! variant enum. The forms are algebraically equal; their numerical agreement
//! is checked by the test suites rather than assumed.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gellmann::{decompose, GellMannBasis};
use crate::linalg::{hermitian_eig, neg_x_ln_x, ComplexMatrix};
use crate::states::DensityMatrix;
use crate::tolerance;

/// `1 - Tr(x^2)`. No normalization is applied, so non-unit-trace inputs are allowed.
pub fn linear_entropy(x: &ComplexMatrix) -> Result<f64> {
    x.require_hermitian()?;
    Ok(1.0 - x.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>())
}

/// Linear entropy of `diag(values)`.
pub fn linear_entropy_diag(values: &[f64]) -> f64 {
    1.0 - values.iter().map(|x| x * x).sum::<f64>()
}

/// `-sum lambda ln lambda` over the spectrum of `x`, with `0 ln 0 = 0`.
pub fn von_neumann_entropy(x: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eig(x)?;
    von_neumann_entropy_diag(&eig.eigenvalues)
}

/// Von Neumann entropy of `diag(values)`; entries in `[-1e-10, 0)` count as zero.
pub fn von_neumann_entropy_diag(values: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    for &x in values {
        if x < -tolerance::EIGEN_CLAMP {
            return Err(Error::NotPositive { min_eigenvalue: x });
        }
        total += neg_x_ln_x(x.max(0.0));
    }
    Ok(total)
}

/// Largest linear entropy of a `d`-level state, `(d - 1)/d`.
pub fn max_linear_entropy(d: usize) -> f64 {
    (d - 1) as f64 / d as f64
}

/// Largest von Neumann entropy of a `d`-level state, `ln d`.
pub fn max_von_neumann_entropy(d: usize) -> f64 {
    (d as f64).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HsVariant {
    /// `sum_{j != k} |rho_jk|^2`.
    Element,
    /// `(1/2) sum_{k<l,tau} <Gamma^tau_{kl}|rho>^2`.
    Basis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WyVariant {
    /// `-(1/2) sum_j Tr([sqrt(rho), |j><j|]^2)` by explicit matrix products.
    Commutator,
    /// `sum_{j != k} |sqrt(rho)_jk|^2`.
    SqrtOffDiag,
    /// `1 - sum_j sqrt(rho)_jj^2`.
    DiagonalSum,
    /// `(1/2) sum_{k<l,tau} <Gamma^tau_{kl}|sqrt(rho)>^2`.
    Basis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredictabilityForm {
    /// Closed form in the populations.
    Closed,
    /// `S_max - S(closest incoherent state)`.
    EntropyGap,
}

/// Hilbert-Schmidt coherence.
pub fn c_hs(rho: &DensityMatrix, variant: HsVariant) -> Result<f64> {
    match variant {
        HsVariant::Element => Ok(off_diagonal_sq_sum(rho.matrix())),
        HsVariant::Basis => c_hs_basis(rho, &GellMannBasis::new(rho.dim())?),
    }
}

/// Basis form of the Hilbert-Schmidt coherence with a prebuilt basis.
pub fn c_hs_basis(rho: &DensityMatrix, basis: &GellMannBasis) -> Result<f64> {
    Ok(decompose(rho.matrix(), basis)?.off_diagonal_weight())
}

fn off_diagonal_sq_sum(m: &ComplexMatrix) -> f64 {
    let d = m.dim();
    let mut sum = 0.0;
    for j in 0..d {
        for k in 0..d {
            if j != k {
                sum += m[(j, k)].norm_sqr();
            }
        }
    }
    sum
}

/// Wigner-Yanase coherence.
pub fn c_wy(rho: &DensityMatrix, variant: WyVariant) -> Result<f64> {
    c_wy_from_sqrt(&rho.sqrt(), variant)
}

/// Wigner-Yanase coherence from a precomputed `sqrt(rho)`.
pub fn c_wy_from_sqrt(sqrt_rho: &ComplexMatrix, variant: WyVariant) -> Result<f64> {
    let d = sqrt_rho.dim();
    Ok(match variant {
        WyVariant::SqrtOffDiag => off_diagonal_sq_sum(sqrt_rho),
        WyVariant::DiagonalSum => linear_entropy_diag(&sqrt_rho.diagonal()),
        WyVariant::Basis => {
            decompose(sqrt_rho, &GellMannBasis::new(d)?)?.off_diagonal_weight()
        }
        WyVariant::Commutator => {
            let mut total = 0.0;
            for j in 0..d {
                let mut projector = ComplexMatrix::zeros(d)?;
                projector[(j, j)] = Complex64::new(1.0, 0.0);
                let comm = &(sqrt_rho * &projector) - &(&projector * sqrt_rho);
                total += (&comm * &comm).trace().re;
            }
            -0.5 * total
        }
    })
}

/// l1-norm coherence `sum_{j != k} |rho_jk|`.
pub fn c_l1(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let d = m.dim();
    let mut sum = 0.0;
    for j in 0..d {
        for k in 0..d {
            if j != k {
                sum += m[(j, k)].norm();
            }
        }
    }
    sum
}

fn pair_product_sum(x: &[f64]) -> f64 {
    let mut s = 0.0;
    for m in 0..x.len() {
        for n in m + 1..x.len() {
            s += x[m] * x[n];
        }
    }
    s
}

fn clamp_pops(pops: &[f64]) -> Vec<f64> {
    pops.iter().map(|p| p.max(0.0)).collect()
}

/// `(d - 1)/d - 2 sum_{m<n} p_m p_n`.
pub fn p_hs_linear_pops(pops: &[f64]) -> f64 {
    max_linear_entropy(pops.len()) - 2.0 * pair_product_sum(pops)
}

/// `ln d + sum_n p_n ln p_n`.
pub fn p_hs_vn_pops(pops: &[f64]) -> f64 {
    max_von_neumann_entropy(pops.len()) - clamp_pops(pops).into_iter().map(neg_x_ln_x).sum::<f64>()
}

/// `d - 1 - 2 sum_{j<k} sqrt(p_j p_k)`.
pub fn p_l1_pops(pops: &[f64]) -> f64 {
    let roots: Vec<f64> = clamp_pops(pops).into_iter().map(f64::sqrt).collect();
    (pops.len() - 1) as f64 - 2.0 * pair_product_sum(&roots)
}

pub fn p_hs_linear(rho: &DensityMatrix, form: PredictabilityForm) -> f64 {
    let pops = rho.populations();
    match form {
        PredictabilityForm::Closed => p_hs_linear_pops(&pops),
        PredictabilityForm::EntropyGap => {
            max_linear_entropy(pops.len()) - linear_entropy_diag(&pops)
        }
    }
}

pub fn p_hs_vn(rho: &DensityMatrix, form: PredictabilityForm) -> Result<f64> {
    let pops = rho.populations();
    match form {
        PredictabilityForm::Closed => Ok(p_hs_vn_pops(&pops)),
        PredictabilityForm::EntropyGap => {
            Ok(max_von_neumann_entropy(pops.len()) - von_neumann_entropy_diag(&pops)?)
        }
    }
}

pub fn p_l1(rho: &DensityMatrix) -> f64 {
    p_l1_pops(&rho.populations())
}

/// Upper bounds on the Wigner-Yanase coherence built from the diagonal of `sqrt(rho)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WyBounds {
    /// `S_l(D) + Tr(D)^2 - 1`.
    pub upsilon: f64,
    /// `S_vn(D) + Tr(D) (Tr(D) - 1)`.
    pub omega: f64,
}

pub fn wy_bounds(rho: &DensityMatrix) -> Result<WyBounds> {
    wy_bounds_from_sqrt_diag(&rho.sqrt().diagonal())
}

/// Bounds from the unnormalized diagonal `D` of `sqrt(rho)`.
pub fn wy_bounds_from_sqrt_diag(diag: &[f64]) -> Result<WyBounds> {
    let trace: f64 = diag.iter().sum();
    Ok(WyBounds {
        upsilon: linear_entropy_diag(diag) + trace * trace - 1.0,
        omega: von_neumann_entropy_diag(diag)? + trace * (trace - 1.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PopulationBound {
    /// `2 sum_{m<n} rho_mm rho_nn`, bounds the Hilbert-Schmidt coherence.
    Hs,
    /// `2 sum_{m<n} sqrt(rho)_mm sqrt(rho)_nn`, bounds the Wigner-Yanase coherence.
    Wy,
}

pub fn population_bound(rho: &DensityMatrix, which: PopulationBound) -> f64 {
    match which {
        PopulationBound::Hs => 2.0 * pair_product_sum(&rho.populations()),
        PopulationBound::Wy => 2.0 * pair_product_sum(&rho.sqrt().diagonal()),
    }
}

/// Population bound from an arbitrary diagonal.
pub fn population_bound_from_diag(diag: &[f64]) -> f64 {
    2.0 * pair_product_sum(diag)
}

/// Identifier for the six wave/particle quantifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    Chs,
    Cwy,
    Cl1,
    PhsLinear,
    PhsVn,
    Pl1,
}

impl Measure {
    pub const WAVE: [Measure; 3] = [Measure::Chs, Measure::Cwy, Measure::Cl1];
    pub const PARTICLE: [Measure; 3] = [Measure::PhsLinear, Measure::PhsVn, Measure::Pl1];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Chs => "c_hs",
            Measure::Cwy => "c_wy",
            Measure::Cl1 => "c_l1",
            Measure::PhsLinear => "p_hs_l",
            Measure::PhsVn => "p_hs_vn",
            Measure::Pl1 => "p_l1",
        }
    }

    pub fn is_wave(self) -> bool {
        Self::WAVE.contains(&self)
    }

    /// Maximum over `d`-level states.
    pub fn max_value(self, d: usize) -> f64 {
        match self {
            Measure::Chs | Measure::Cwy | Measure::PhsLinear => max_linear_entropy(d),
            Measure::PhsVn => max_von_neumann_entropy(d),
            Measure::Cl1 | Measure::Pl1 => (d - 1) as f64,
        }
    }

    /// Evaluates the measure with its default formula.
    pub fn evaluate(self, rho: &DensityMatrix) -> Result<f64> {
        match self {
            Measure::Chs => c_hs(rho, HsVariant::Element),
            Measure::Cwy => c_wy(rho, WyVariant::DiagonalSum),
            Measure::Cl1 => Ok(c_l1(rho)),
            Measure::PhsLinear => Ok(p_hs_linear(rho, PredictabilityForm::Closed)),
            Measure::PhsVn => p_hs_vn(rho, PredictabilityForm::Closed),
            Measure::Pl1 => Ok(p_l1(rho)),
        }
    }

    /// Predictabilities depend on the populations alone.
    pub fn from_populations(self, pops: &[f64]) -> Result<f64> {
        match self {
            Measure::PhsLinear => Ok(p_hs_linear_pops(pops)),
            Measure::PhsVn => Ok(p_hs_vn_pops(pops)),
            Measure::Pl1 => Ok(p_l1_pops(pops)),
            wave => Err(Error::UnknownMeasure(format!(
                "{} is not a predictability",
                wave.name()
            ))),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Self::WAVE, Self::PARTICLE]
            .concat()
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownMeasure(s.to_string()))
    }
}

/// A named scalar together with the formula that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureValue {
    pub name: &'static str,
    pub value: f64,
    pub formula_variant: &'static str,
}

impl MeasureValue {
    pub fn new(name: &'static str, value: f64, formula_variant: &'static str) -> Self {
        debug_assert!(value.is_finite(), "{name} is not finite");
        Self {
            name,
            value,
            formula_variant,
        }
    }
}
