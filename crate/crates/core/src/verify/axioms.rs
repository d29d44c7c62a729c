//! Randomized spot checks of the defining criteria of predictability (P1-P6)
//! and wave quantifiers (W1-W6). These are numerical smoke tests over random
//! states, not proofs.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::measures::Measure;
use crate::rng::PortableRng;
use crate::states::{basis_state, mixture, random_state, uniform_superposition, validate, DensityMatrix};
use crate::tolerance;

/// Step used by the continuity checks.
const LIPSCHITZ_STEP: f64 = 1e-6;
const PERMUTATIONS_PER_STATE: usize = 20;
const EPSILONS: [f64; 2] = [1e-3, 1e-4];
/// Population differences at or below this count as ties in P5.
const TIE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    W1,
    W2,
    W3,
    W4,
    W5,
    W6,
}

impl Axiom {
    pub const PARTICLE: [Axiom; 6] = [Axiom::P1, Axiom::P2, Axiom::P3, Axiom::P4, Axiom::P5, Axiom::P6];
    pub const WAVE: [Axiom; 6] = [Axiom::W1, Axiom::W2, Axiom::W3, Axiom::W4, Axiom::W5, Axiom::W6];

    pub fn id(self) -> &'static str {
        match self {
            Axiom::P1 => "P1",
            Axiom::P2 => "P2",
            Axiom::P3 => "P3",
            Axiom::P4 => "P4",
            Axiom::P5 => "P5",
            Axiom::P6 => "P6",
            Axiom::W1 => "W1",
            Axiom::W2 => "W2",
            Axiom::W3 => "W3",
            Axiom::W4 => "W4",
            Axiom::W5 => "W5",
            Axiom::W6 => "W6",
        }
    }

    fn code(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Tally of one axiom check for one measure. `worst_slack` is the smallest
/// signed margin seen; a trial violates when it drops below `-tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub measure: Measure,
    pub axiom: Axiom,
    pub dim: usize,
    /// Trials that were actually checked.
    pub trials: usize,
    /// Trials whose perturbation was not applicable (ties, invalid states).
    pub skipped: usize,
    pub violations: usize,
    pub worst_slack: f64,
    pub tolerance: f64,
    pub parameters: String,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    /// Combines two partial reports of the same check. Order does not matter.
    pub fn merge(mut self, other: &AxiomReport) -> AxiomReport {
        self.trials += other.trials;
        self.skipped += other.skipped;
        self.violations += other.violations;
        self.worst_slack = self.worst_slack.min(other.worst_slack);
        self
    }
}

#[derive(Debug, Clone, Copy)]
struct Tally {
    checked: usize,
    skipped: usize,
    violations: usize,
    worst: f64,
}

impl Tally {
    fn empty() -> Self {
        Tally {
            checked: 0,
            skipped: 0,
            violations: 0,
            worst: f64::INFINITY,
        }
    }

    fn merge(self, o: Tally) -> Tally {
        Tally {
            checked: self.checked + o.checked,
            skipped: self.skipped + o.skipped,
            violations: self.violations + o.violations,
            worst: self.worst.min(o.worst),
        }
    }
}

/// `None` means the trial was skipped.
type Trial = Option<f64>;

fn measure_code(m: Measure) -> u64 {
    m as u64 + 1
}

/// Random state of random rank, or full rank when `full` is set.
fn any_state(d: usize, rng: &mut PortableRng, full: bool) -> Result<DensityMatrix> {
    let rank = if full { d } else { 1 + rng.below(d) };
    random_state(d, rank, rng)
}

fn random_phases(d: usize, rng: &mut PortableRng) -> Vec<f64> {
    (0..d).map(|_| std::f64::consts::TAU * rng.uniform()).collect()
}

fn run_trials(
    measure: Measure,
    axiom: Axiom,
    d: usize,
    trials: usize,
    seed: u64,
    tol: f64,
    trial: impl Fn(&mut PortableRng) -> Result<Trial> + Sync,
) -> Result<Tally> {
    let stream_base = (axiom.code() << 56) | (measure_code(measure) << 48) | ((d as u64) << 32);
    (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = PortableRng::with_stream(seed, stream_base | t);
            Ok(match trial(&mut rng)? {
                None => Tally {
                    skipped: 1,
                    ..Tally::empty()
                },
                Some(slack) => Tally {
                    checked: 1,
                    skipped: 0,
                    violations: usize::from(slack.is_nan() || slack < -tol),
                    worst: slack,
                },
            })
        })
        .try_reduce(Tally::empty, |a, b| Ok(a.merge(b)))
}

fn report(measure: Measure, axiom: Axiom, d: usize, tol: f64, parameters: String, t: Tally) -> AxiomReport {
    AxiomReport {
        measure,
        axiom,
        dim: d,
        trials: t.checked,
        skipped: t.skipped,
        violations: t.violations,
        worst_slack: t.worst,
        tolerance: tol,
        parameters,
    }
}

fn check_dim(d: usize, trials: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::BadDimension(d));
    }
    if trials == 0 {
        return Err(Error::ParamOutOfRange {
            name: "trials",
            value: 0.0,
        });
    }
    Ok(())
}

/// Continuity smoke test: `|M(rho) - M(rho')| <= 10 d ||rho - rho'||_HS` for
/// `rho' = (1 - t) rho + t sigma`.
fn lipschitz_trial(measure: Measure, d: usize, rng: &mut PortableRng) -> Result<Trial> {
    let rho = any_state(d, rng, true)?;
    let sigma = any_state(d, rng, false)?;
    let moved = mixture(1.0 - LIPSCHITZ_STEP, &rho, &sigma)?;
    let dist = (rho.matrix() - moved.matrix()).frobenius_norm();
    let change = (measure.evaluate(&rho)? - measure.evaluate(&moved)?).abs();
    Ok(Some(10.0 * d as f64 * dist - change))
}

fn permutation_trial(measure: Measure, d: usize, rng: &mut PortableRng) -> Result<Trial> {
    let rho = any_state(d, rng, false)?;
    let base = measure.evaluate(&rho)?;
    let mut slack = f64::INFINITY;
    for _ in 0..PERMUTATIONS_PER_STATE {
        let perm = rng.permutation(d);
        let value = measure.evaluate(&rho.permuted(&perm)?)?;
        slack = slack.min(-(value - base).abs());
    }
    Ok(Some(slack))
}

/// Convexity: `M(w xi + (1 - w) eta) <= w M(xi) + (1 - w) M(eta)`.
fn convexity_trial(measure: Measure, d: usize, rng: &mut PortableRng) -> Result<Trial> {
    let xi = any_state(d, rng, false)?;
    let eta = any_state(d, rng, false)?;
    let w = rng.uniform();
    let mixed = mixture(w, &xi, &eta)?;
    let rhs = w * measure.evaluate(&xi)? + (1.0 - w) * measure.evaluate(&eta)?;
    Ok(Some(rhs - measure.evaluate(&mixed)?))
}

/// Runs P1-P6 for a predictability measure.
pub fn axiom_suite_predictability(
    measure: Measure,
    d: usize,
    trials: usize,
    seed: u64,
) -> Result<Vec<AxiomReport>> {
    if measure.is_wave() {
        return Err(Error::UnknownMeasure(format!("{measure} is not a predictability")));
    }
    check_dim(d, trials)?;
    let max = measure.max_value(d);
    let mut out = Vec::with_capacity(6);
    for axiom in Axiom::PARTICLE {
        let (tol, params, tally) = match axiom {
            Axiom::P1 => (
                0.0,
                format!("t={LIPSCHITZ_STEP:e};K={}", 10 * d),
                run_trials(measure, axiom, d, trials, seed, 0.0, |rng| lipschitz_trial(measure, d, rng))?,
            ),
            Axiom::P2 => (
                1e-12,
                format!("permutations={PERMUTATIONS_PER_STATE}"),
                run_trials(measure, axiom, d, trials, seed, 1e-12, |rng| permutation_trial(measure, d, rng))?,
            ),
            Axiom::P3 => (
                1e-12,
                "basis_state=max;random<=max".to_string(),
                run_trials(measure, axiom, d, trials, seed, 1e-12, |rng| {
                    let j = rng.below(d);
                    let at_basis = measure.evaluate(&basis_state(d, j)?)?;
                    let rho = any_state(d, rng, false)?;
                    Ok(Some((-(at_basis - max).abs()).min(max - measure.evaluate(&rho)?)))
                })?,
            ),
            Axiom::P4 => (
                1e-12,
                "uniform_populations=0;random>=0".to_string(),
                run_trials(measure, axiom, d, trials, seed, 1e-12, |rng| {
                    let at_uniform = measure.evaluate(&uniform_superposition(&random_phases(d, rng))?)?;
                    let rho = any_state(d, rng, false)?;
                    Ok(Some((-at_uniform.abs()).min(measure.evaluate(&rho)?)))
                })?,
            ),
            Axiom::P5 => (
                1e-12,
                format!("eps={:e},{:e};ties_skipped", EPSILONS[0], EPSILONS[1]),
                run_trials(measure, axiom, d, trials, seed, 1e-12, |rng| {
                    let rho = any_state(d, rng, false)?;
                    let pops = rho.populations();
                    let a = rng.below(d);
                    let b = (a + 1 + rng.below(d - 1)) % d;
                    let (j, k) = if pops[a] >= pops[b] { (a, b) } else { (b, a) };
                    let gap = pops[j] - pops[k];
                    if gap <= TIE {
                        return Ok(None);
                    }
                    let base = measure.from_populations(&pops)?;
                    let mut slack = f64::INFINITY;
                    let mut used = false;
                    for eps in EPSILONS.into_iter().filter(|&e| e <= gap) {
                        let mut shifted = pops.clone();
                        shifted[j] -= eps;
                        shifted[k] += eps;
                        slack = slack.min(base - measure.from_populations(&shifted)?);
                        used = true;
                    }
                    Ok(used.then_some(slack))
                })?,
            ),
            Axiom::P6 => (
                1e-10,
                "omega~U[0,1]".to_string(),
                run_trials(measure, axiom, d, trials, seed, 1e-10, |rng| convexity_trial(measure, d, rng))?,
            ),
            _ => unreachable!(),
        };
        out.push(report(measure, axiom, d, tol, params, tally));
    }
    Ok(out)
}

/// `rho` with `rho_jk` and `rho_kj` scaled by `1 - eps`, if still a state.
fn shrink_coherence(rho: &DensityMatrix, j: usize, k: usize, eps: f64) -> Option<DensityMatrix> {
    let mut m = rho.matrix().clone();
    m[(j, k)] *= 1.0 - eps;
    m[(k, j)] *= 1.0 - eps;
    validate(&m).ok()
}

/// Wigner-Yanase coherence after scaling row `j` of `sqrt(rho)` by `1 - eps`,
/// computed as the off-diagonal weight of the scaled matrix.
fn wy_row_scaled(sqrt_rho: &ComplexMatrix, j: usize, eps: f64) -> f64 {
    let d = sqrt_rho.dim();
    let mut total = 0.0;
    for a in 0..d {
        let factor = if a == j { 1.0 - eps } else { 1.0 };
        for b in 0..d {
            if a != b {
                total += (sqrt_rho[(a, b)] * Complex64::new(factor, 0.0)).norm_sqr();
            }
        }
    }
    total
}

fn off_diagonal_weight(m: &ComplexMatrix) -> f64 {
    wy_row_scaled(m, usize::MAX, 0.0)
}

/// Runs W1-W6 for a wave measure.
pub fn axiom_suite_wave(measure: Measure, d: usize, trials: usize, seed: u64) -> Result<Vec<AxiomReport>> {
    if !measure.is_wave() {
        return Err(Error::UnknownMeasure(format!("{measure} is not a wave quantifier")));
    }
    check_dim(d, trials)?;
    let max = measure.max_value(d);
    let spectral = if measure == Measure::Cwy {
        tolerance::ITERATIVE
    } else {
        tolerance::EXACT
    };
    let mut out = Vec::with_capacity(6);
    for axiom in Axiom::WAVE {
        let (tol, params, tally) = match axiom {
            Axiom::W1 => (
                0.0,
                format!("t={LIPSCHITZ_STEP:e};K={}", 10 * d),
                run_trials(measure, axiom, d, trials, seed, 0.0, |rng| lipschitz_trial(measure, d, rng))?,
            ),
            Axiom::W2 => (
                spectral,
                format!("permutations={PERMUTATIONS_PER_STATE}"),
                run_trials(measure, axiom, d, trials, seed, spectral, |rng| permutation_trial(measure, d, rng))?,
            ),
            Axiom::W3 => (
                spectral,
                "basis_state=0;random>=0".to_string(),
                run_trials(measure, axiom, d, trials, seed, spectral, |rng| {
                    let j = rng.below(d);
                    let at_basis = measure.evaluate(&basis_state(d, j)?)?;
                    let rho = any_state(d, rng, false)?;
                    Ok(Some((-at_basis.abs()).min(measure.evaluate(&rho)?)))
                })?,
            ),
            Axiom::W4 => (
                spectral,
                "uniform_superposition=max;random<=max".to_string(),
                run_trials(measure, axiom, d, trials, seed, spectral, |rng| {
                    let at_uniform = measure.evaluate(&uniform_superposition(&random_phases(d, rng))?)?;
                    let rho = any_state(d, rng, false)?;
                    Ok(Some((-(at_uniform - max).abs()).min(max - measure.evaluate(&rho)?)))
                })?,
            ),
            Axiom::W5 => {
                let tol = tolerance::EXACT;
                let params = if measure == Measure::Cwy {
                    format!("eps={:e},{:e};sqrt_row_scaled", EPSILONS[0], EPSILONS[1])
                } else {
                    format!("eps={:e},{:e};offdiag_shrink", EPSILONS[0], EPSILONS[1])
                };
                let tally = run_trials(measure, axiom, d, trials, seed, tol, |rng| {
                    let rho = any_state(d, rng, true)?;
                    let j = rng.below(d);
                    let k = (j + 1 + rng.below(d - 1)) % d;
                    let mut slack = f64::INFINITY;
                    let mut used = false;
                    if measure == Measure::Cwy {
                        let s = rho.sqrt();
                        let base = off_diagonal_weight(&s);
                        for eps in EPSILONS {
                            slack = slack.min(base - wy_row_scaled(&s, j, eps));
                            used = true;
                        }
                    } else {
                        let base = measure.evaluate(&rho)?;
                        for eps in EPSILONS {
                            if let Some(shrunk) = shrink_coherence(&rho, j, k, eps) {
                                slack = slack.min(base - measure.evaluate(&shrunk)?);
                                used = true;
                            }
                        }
                    }
                    Ok(used.then_some(slack))
                })?;
                (tol, params, tally)
            }
            Axiom::W6 => (
                spectral,
                "omega~U[0,1]".to_string(),
                run_trials(measure, axiom, d, trials, seed, spectral, |rng| convexity_trial(measure, d, rng))?,
            ),
            _ => unreachable!(),
        };
        out.push(report(measure, axiom, d, tol, params, tally));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_reject_wrong_kind() {
        assert!(matches!(
            axiom_suite_predictability(Measure::Chs, 3, 10, 1),
            Err(Error::UnknownMeasure(_))
        ));
        assert!(matches!(
            axiom_suite_wave(Measure::Pl1, 3, 10, 1),
            Err(Error::UnknownMeasure(_))
        ));
        assert!(axiom_suite_wave(Measure::Chs, 1, 10, 1).is_err());
    }

    #[test]
    fn small_suites_pass() {
        for m in Measure::PARTICLE {
            for r in axiom_suite_predictability(m, 3, 40, 5).unwrap() {
                assert!(r.passed(), "{r:?}");
                assert_eq!(r.trials + r.skipped, 40);
            }
        }
        for m in Measure::WAVE {
            for r in axiom_suite_wave(m, 3, 40, 5).unwrap() {
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = axiom_suite_wave(Measure::Cwy, 4, 30, 11).unwrap();
        let b = axiom_suite_wave(Measure::Cwy, 4, 30, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn merge_is_commutative() {
        let r = |t, v, w| AxiomReport {
            measure: Measure::Chs,
            axiom: Axiom::W2,
            dim: 3,
            trials: t,
            skipped: 1,
            violations: v,
            worst_slack: w,
            tolerance: 1e-10,
            parameters: String::new(),
        };
        let (x, y) = (r(5, 0, -1e-13), r(7, 1, -1e-3));
        assert_eq!(x.clone().merge(&y), y.clone().merge(&x));
        assert_eq!(x.merge(&y).trials, 12);
    }

    #[test]
    fn wy_row_scaling_never_raises_coherence() {
        let mut rng = PortableRng::new(4);
        for _ in 0..100 {
            let rho = random_state(4, 4, &mut rng).unwrap();
            let s = rho.sqrt();
            let base = off_diagonal_weight(&s);
            for j in 0..4 {
                assert!(wy_row_scaled(&s, j, 1e-3) <= base + 1e-10);
            }
        }
    }
}
