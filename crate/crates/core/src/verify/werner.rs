use super::record::{evaluate_with, TradeoffRecord};
use crate::error::{Error, Result};
use crate::states::werner_ququart;
use crate::tolerance::Tolerances;

/// One point `(w, a)` of a Werner-family sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct WernerRow {
    pub w: f64,
    pub a: f64,
    pub record: TradeoffRecord,
}

/// `steps` evenly spaced points on `[0, 1]`, endpoints included.
pub fn a_grid(steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::ParamOutOfRange {
            name: "a_steps",
            value: steps as f64,
        });
    }
    let last = (steps - 1) as f64;
    Ok((0..steps).map(|i| i as f64 / last).collect())
}

/// Evaluates the Werner ququart on the grid `w_values x a_values`, `w`-major.
pub fn werner_sweep(w_values: &[f64], a_values: &[f64]) -> Result<Vec<WernerRow>> {
    werner_sweep_with(w_values, a_values, &Tolerances::default())
}

pub fn werner_sweep_with(
    w_values: &[f64],
    a_values: &[f64],
    tol: &Tolerances,
) -> Result<Vec<WernerRow>> {
    let mut rows = Vec::with_capacity(w_values.len() * a_values.len());
    for &w in w_values {
        for &a in a_values {
            let rho = werner_ququart(w, a)?;
            rows.push(WernerRow {
                w,
                a,
                record: evaluate_with(&rho, tol)?,
            });
        }
    }
    Ok(rows)
}
