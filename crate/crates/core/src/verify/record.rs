use std::fmt;

use crate::error::Result;
use crate::measures::{
    c_l1, c_wy_from_sqrt, linear_entropy_diag, max_linear_entropy, max_von_neumann_entropy,
    p_hs_linear_pops, p_hs_vn_pops, p_l1_pops, population_bound_from_diag,
    von_neumann_entropy_diag, wy_bounds_from_sqrt_diag, MeasureValue, WyVariant,
};
use crate::states::DensityMatrix;
use crate::tolerance::Tolerances;

/// Inequalities checked on every evaluated state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Inequality {
    /// `C_hs <= S_l(iota)`.
    TohsLinear,
    /// `S_l(iota) <= S_vn(iota)`.
    TohsVn,
    /// `C_wy <= Upsilon`.
    Heub,
    /// `Upsilon <= Omega`.
    Heub2,
    /// `C_hs <= 2 sum_{m<n} rho_mm rho_nn`.
    PopulationHs,
    /// `C_wy <= 2 sum_{m<n} sqrt(rho)_mm sqrt(rho)_nn`.
    PopulationWy,
    /// `C_wy + P_hs^l <= (d - 1)/d`.
    ComplementarityWyLinear,
    /// `C_wy + P_hs^vn <= ln d`.
    ComplementarityWyVn,
    /// `C_l1 + P_l1 <= d - 1`.
    ComplementarityL1,
}

impl Inequality {
    pub const ALL: [Inequality; 9] = [
        Inequality::TohsLinear,
        Inequality::TohsVn,
        Inequality::Heub,
        Inequality::Heub2,
        Inequality::PopulationHs,
        Inequality::PopulationWy,
        Inequality::ComplementarityWyLinear,
        Inequality::ComplementarityWyVn,
        Inequality::ComplementarityL1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Inequality::TohsLinear => "tohs_l",
            Inequality::TohsVn => "tohs_vn",
            Inequality::Heub => "heub",
            Inequality::Heub2 => "heub2",
            Inequality::PopulationHs => "tocp",
            Inequality::PopulationWy => "tocp_wy",
            Inequality::ComplementarityWyLinear => "cpwy_l",
            Inequality::ComplementarityWyVn => "cpwy_vn",
            Inequality::ComplementarityL1 => "cpl1",
        }
    }

    /// Whether the two sides pass through the eigensolver.
    pub fn is_iterative(self) -> bool {
        matches!(
            self,
            Inequality::Heub
                | Inequality::Heub2
                | Inequality::PopulationWy
                | Inequality::ComplementarityWyLinear
                | Inequality::ComplementarityWyVn
        )
    }

    pub fn tolerance(self, tol: &Tolerances) -> f64 {
        if self.is_iterative() {
            tol.iterative
        } else {
            tol.exact
        }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one inequality on one state. `slack = bound - lhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    pub inequality: Inequality,
    pub slack: f64,
    pub tolerance: f64,
}

impl Verdict {
    pub fn pass(&self) -> bool {
        self.slack >= -self.tolerance
    }
}

/// Every measure, bound and verdict for a single state.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffRecord {
    pub dim: usize,
    pub sample_id: u64,
    pub seed: u64,
    pub rank: usize,
    pub c_hs: f64,
    pub c_wy: f64,
    pub c_l1: f64,
    pub s_l_iota: f64,
    pub s_vn_iota: f64,
    pub upsilon: f64,
    pub omega: f64,
    pub p_hs_l: f64,
    pub p_hs_vn: f64,
    pub p_l1: f64,
    pub bound_pop_hs: f64,
    pub bound_pop_wy: f64,
    pub verdicts: Vec<Verdict>,
}

impl TradeoffRecord {
    pub fn pass_all(&self) -> bool {
        self.verdicts.iter().all(Verdict::pass)
    }

    pub fn verdict(&self, which: Inequality) -> &Verdict {
        self.verdicts
            .iter()
            .find(|v| v.inequality == which)
            .expect("every inequality is evaluated")
    }

    pub fn slack(&self, which: Inequality) -> f64 {
        self.verdict(which).slack
    }

    pub fn measures(&self) -> Vec<MeasureValue> {
        vec![
            MeasureValue::new("c_hs", self.c_hs, "element"),
            MeasureValue::new("c_wy", self.c_wy, "sqrt_diagonal"),
            MeasureValue::new("c_l1", self.c_l1, "element"),
            MeasureValue::new("s_l_iota", self.s_l_iota, "diagonal"),
            MeasureValue::new("s_vn_iota", self.s_vn_iota, "diagonal"),
            MeasureValue::new("upsilon", self.upsilon, "sqrt_diagonal"),
            MeasureValue::new("omega", self.omega, "sqrt_diagonal"),
            MeasureValue::new("p_hs_l", self.p_hs_l, "closed"),
            MeasureValue::new("p_hs_vn", self.p_hs_vn, "closed"),
            MeasureValue::new("p_l1", self.p_l1, "closed"),
            MeasureValue::new("bound_pop_hs", self.bound_pop_hs, "populations"),
            MeasureValue::new("bound_pop_wy", self.bound_pop_wy, "sqrt_diagonal"),
        ]
    }

    pub fn chs_plus_phs_l(&self) -> f64 {
        self.c_hs + self.p_hs_l
    }

    pub fn chs_plus_phs_vn(&self) -> f64 {
        self.c_hs + self.p_hs_vn
    }

    pub fn cwy_plus_phs_l(&self) -> f64 {
        self.c_wy + self.p_hs_l
    }

    pub fn cwy_plus_phs_vn(&self) -> f64 {
        self.c_wy + self.p_hs_vn
    }

    pub fn cl1_plus_pl1(&self) -> f64 {
        self.c_l1 + self.p_l1
    }
}

/// Evaluates all measures and inequalities with default tolerances.
pub fn evaluate(rho: &DensityMatrix) -> Result<TradeoffRecord> {
    evaluate_with(rho, &Tolerances::default())
}

pub fn evaluate_with(rho: &DensityMatrix, tol: &Tolerances) -> Result<TradeoffRecord> {
    let d = rho.dim();
    let pops = rho.populations();
    let sqrt_rho = rho.sqrt();
    let sqrt_diag = sqrt_rho.diagonal();

    let m = rho.matrix();
    let mut c_hs = 0.0;
    for j in 0..d {
        for k in 0..d {
            if j != k {
                c_hs += m[(j, k)].norm_sqr();
            }
        }
    }
    let c_wy = c_wy_from_sqrt(&sqrt_rho, WyVariant::DiagonalSum)?;
    let c_l1 = c_l1(rho);
    let s_l_iota = linear_entropy_diag(&pops);
    let s_vn_iota = von_neumann_entropy_diag(&pops)?;
    let bounds = wy_bounds_from_sqrt_diag(&sqrt_diag)?;
    let p_hs_l = p_hs_linear_pops(&pops);
    let p_hs_vn = p_hs_vn_pops(&pops);
    let p_l1 = p_l1_pops(&pops);
    let bound_pop_hs = population_bound_from_diag(&pops);
    let bound_pop_wy = population_bound_from_diag(&sqrt_diag);

    let slack = |which: Inequality| -> f64 {
        match which {
            Inequality::TohsLinear => s_l_iota - c_hs,
            Inequality::TohsVn => s_vn_iota - s_l_iota,
            Inequality::Heub => bounds.upsilon - c_wy,
            Inequality::Heub2 => bounds.omega - bounds.upsilon,
            Inequality::PopulationHs => bound_pop_hs - c_hs,
            Inequality::PopulationWy => bound_pop_wy - c_wy,
            Inequality::ComplementarityWyLinear => max_linear_entropy(d) - (c_wy + p_hs_l),
            Inequality::ComplementarityWyVn => max_von_neumann_entropy(d) - (c_wy + p_hs_vn),
            Inequality::ComplementarityL1 => (d - 1) as f64 - (c_l1 + p_l1),
        }
    };
    let verdicts = Inequality::ALL
        .iter()
        .map(|&inequality| Verdict {
            inequality,
            slack: slack(inequality),
            tolerance: inequality.tolerance(tol),
        })
        .collect();

    Ok(TradeoffRecord {
        dim: d,
        sample_id: 0,
        seed: 0,
        rank: rho.numerical_rank(),
        c_hs,
        c_wy,
        c_l1,
        s_l_iota,
        s_vn_iota,
        upsilon: bounds.upsilon,
        omega: bounds.omega,
        p_hs_l,
        p_hs_vn,
        p_l1,
        bound_pop_hs,
        bound_pop_wy,
        verdicts,
    })
}
