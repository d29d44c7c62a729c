//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.
//!
//! Where a value is derived rather than read off the library, it is
//! recomputed here from matrix entries or with nalgebra's eigensolver.

use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::Instant;

use nalgebra::DMatrix;

use qduality::cli::{self, Command, RunConfig};
use qduality::gellmann::{bloch_from_populations, GellMannBasis};
use qduality::measures::{c_hs, c_wy, HsVariant, Measure, WyVariant};
use qduality::rng::PortableRng;
use qduality::states::{random_state, DensityMatrix};
use qduality::verify::{
    a_grid, axiom_suite_predictability, axiom_suite_wave, campaign, werner_sweep, Axiom,
    CampaignConfig, CampaignResult, Inequality, RankSpec,
};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

const LN4: f64 = std::f64::consts::LN_2 * 2.0;

fn hs_campaign() -> &'static (CampaignResult, f64) {
    static CELL: OnceLock<(CampaignResult, f64)> = OnceLock::new();
    CELL.get_or_init(|| {
        let start = Instant::now();
        let res = campaign(&CampaignConfig::default()).expect("campaign runs");
        (res, start.elapsed().as_secs_f64())
    })
}

fn wy_campaign() -> &'static CampaignResult {
    static CELL: OnceLock<CampaignResult> = OnceLock::new();
    CELL.get_or_init(|| {
        campaign(&CampaignConfig {
            samples: 5000,
            seed: 2,
            ..Default::default()
        })
        .expect("campaign runs")
    })
}

/// Regenerates sample `id` of a campaign exactly as the engine draws it.
fn campaign_state(seed: u64, d: usize, rank: usize, id: u64) -> DensityMatrix {
    random_state(d, rank, &mut PortableRng::for_sample(seed, d, id)).unwrap()
}

fn entry_oracle(rho: &DensityMatrix) -> (f64, f64, f64) {
    let m = rho.matrix();
    let d = m.dim();
    let mut c = 0.0;
    for j in 0..d {
        for k in 0..d {
            if j != k {
                c += m[(j, k)].norm_sqr();
            }
        }
    }
    let p: Vec<f64> = (0..d).map(|j| m[(j, j)].re).collect();
    let s_l = 1.0 - p.iter().map(|x| x * x).sum::<f64>();
    let s_vn = -p.iter().filter(|&&x| x > 0.0).map(|x| x * x.ln()).sum::<f64>();
    (c, s_l, s_vn)
}

/// Diagonal of `sqrt(rho)` from nalgebra's Hermitian eigensolver.
fn nalgebra_sqrt_diag(rho: &DensityMatrix) -> Vec<f64> {
    let m = rho.matrix();
    let d = m.dim();
    let a = DMatrix::<nalgebra::Complex<f64>>::from_fn(d, d, |i, j| {
        nalgebra::Complex::new(m[(i, j)].re, m[(i, j)].im)
    });
    let eig = a.symmetric_eigen();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|k| eig.eigenvalues[k].max(0.0).sqrt() * eig.eigenvectors[(i, k)].norm_sqr())
                .sum()
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let (res, secs) = hs_campaign();
    let mut worst: f64 = f64::INFINITY;
    let mut mismatch: f64 = 0.0;
    for r in &res.records {
        let rho = campaign_state(1, r.dim, r.dim, r.sample_id);
        let (c, s_l, s_vn) = entry_oracle(&rho);
        mismatch = mismatch
            .max((c - r.c_hs).abs())
            .max((s_l - r.s_l_iota).abs())
            .max((s_vn - r.s_vn_iota).abs());
        worst = worst.min(s_l - c).min(s_vn - s_l);
    }
    let pass = res.records.len() == 7000 && worst >= -1e-10 && mismatch < 1e-12 && *secs < 60.0;
    outcome(
        pass,
        format!(
            "7000 states d=2..8, worst slack {worst:.3e}, oracle mismatch {mismatch:.1e}, campaign {secs:.2}s"
        ),
    )
}

fn criterion_2() -> Outcome {
    let res = wy_campaign();
    let mut worst: f64 = f64::INFINITY;
    let mut mismatch: f64 = 0.0;
    for r in &res.records {
        worst = worst.min(r.slack(Inequality::Heub)).min(r.slack(Inequality::Heub2));
        if r.sample_id % 25 == 0 {
            let diag = nalgebra_sqrt_diag(&campaign_state(2, r.dim, r.dim, r.sample_id));
            let t: f64 = diag.iter().sum();
            let sq: f64 = diag.iter().map(|x| x * x).sum();
            let upsilon = (1.0 - sq) + t * t - 1.0;
            let omega = -diag.iter().filter(|&&x| x > 0.0).map(|x| x * x.ln()).sum::<f64>() + t * (t - 1.0);
            let c_wy = 1.0 - sq;
            mismatch = mismatch
                .max((upsilon - r.upsilon).abs())
                .max((omega - r.omega).abs())
                .max((c_wy - r.c_wy).abs());
        }
    }
    let pass = res.records.len() == 35000 && res.summary.violations == 0 && worst >= -1e-8 && mismatch < 1e-8;
    outcome(
        pass,
        format!("35000 states d=2..8, worst slack {worst:.3e}, nalgebra mismatch {mismatch:.1e}"),
    )
}

fn criterion_3() -> Outcome {
    let res = campaign(&CampaignConfig {
        d_min: 2,
        d_max: 2,
        samples: 1000,
        rank: RankSpec::Fixed(1),
        seed: 3,
        ..Default::default()
    })
    .unwrap();
    let mut worst: f64 = 0.0;
    for r in &res.records {
        let rho = campaign_state(3, 2, 1, r.sample_id);
        // pure qubit: |rho_12|^2 = rho_11 rho_22
        let m = rho.matrix();
        let direct = 2.0 * m[(0, 1)].norm_sqr() - 2.0 * m[(0, 0)].re * m[(1, 1)].re;
        worst = worst.max((r.c_hs - r.s_l_iota).abs()).max(direct.abs());
    }
    outcome(
        res.records.len() == 1000 && worst < 1e-10,
        format!("1000 pure qubits, max |C_hs - S_l| {worst:.1e}"),
    )
}

fn criterion_4() -> Outcome {
    let mut worst: f64 = f64::INFINITY;
    for r in &wy_campaign().records {
        worst = worst
            .min(r.slack(Inequality::PopulationHs))
            .min(r.slack(Inequality::PopulationWy));
    }
    let mut closed: f64 = 0.0;
    for d in [2usize, 3] {
        for id in 0..1000 {
            let rho = campaign_state(2, d, d, id);
            let r = wy_campaign()
                .records
                .iter()
                .find(|r| r.dim == d && r.sample_id == id)
                .unwrap();
            let p = rho.populations();
            let s: Vec<f64> = rho.sqrt().diagonal();
            let (hs, wy) = if d == 2 {
                (2.0 * p[0] * p[1], 2.0 * s[0] * s[1])
            } else {
                (
                    2.0 * (p[0] * p[1] + p[0] * p[2] + p[1] * p[2]),
                    2.0 * (s[0] * s[1] + s[0] * s[2] + s[1] * s[2]),
                )
            };
            let b = bloch_from_populations(&p).unwrap();
            let bloch_err = if d == 2 {
                (b[0] - (1.0 - 2.0 * p[1])).abs()
            } else {
                (b[0] - (1.0 - p[2] - 2.0 * p[1]))
                    .abs()
                    .max((b[1] - (1.0 - 3.0 * p[2]) / 3f64.sqrt()).abs())
            };
            closed = closed
                .max((hs - r.bound_pop_hs).abs())
                .max((wy - r.bound_pop_wy).abs())
                .max(bloch_err);
        }
    }
    outcome(
        worst >= -1e-8 && closed < 1e-12,
        format!("worst slack {worst:.3e} over 35000 states, d=2/3 closed-form error {closed:.1e}"),
    )
}

fn criterion_5() -> Outcome {
    let grid = a_grid(101).unwrap();
    let ones = werner_sweep(&[1.0], &grid).unwrap();
    let mut hs_l: f64 = 0.0;
    let mut l1: f64 = 0.0;
    let mut strict = true;
    let mut ends: f64 = 0.0;
    for row in &ones {
        let r = &row.record;
        hs_l = hs_l.max((r.chs_plus_phs_l() - 0.75).abs());
        l1 = l1.max((r.cl1_plus_pl1() - 3.0).abs());
        if row.a == 0.0 || row.a == 1.0 {
            ends = ends.max((r.chs_plus_phs_vn() - LN4).abs());
        } else if r.chs_plus_phs_vn() >= LN4 {
            strict = false;
        }
    }
    let mut zero: f64 = 0.0;
    for row in werner_sweep(&[0.0], &grid).unwrap() {
        let r = &row.record;
        for v in [r.c_hs, r.c_wy, r.c_l1, r.p_hs_l, r.p_hs_vn, r.p_l1] {
            zero = zero.max(v.abs());
        }
    }
    outcome(
        hs_l < 1e-10 && l1 < 1e-10 && strict && ends < 1e-10 && zero < 1e-10,
        format!(
            "w=1: |C+P_l-3/4| {hs_l:.1e}, |Cl1+Pl1-3| {l1:.1e}, C+P_vn<ln4 inside: {strict}, ends {ends:.1e}; w=0 max {zero:.1e}"
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut failed = Vec::new();
    let mut checked = 0;
    let mut heuristic = Vec::new();
    for m in Measure::WAVE.into_iter().chain(Measure::PARTICLE) {
        let reports = if m.is_wave() {
            axiom_suite_wave(m, 4, 1000, 6).unwrap()
        } else {
            axiom_suite_predictability(m, 4, 1000, 6).unwrap()
        };
        for r in reports {
            if matches!(r.axiom, Axiom::P1 | Axiom::W1) {
                heuristic.push(format!("{}/{}={}", m, r.axiom, r.violations));
                continue;
            }
            checked += 1;
            if !r.passed() || r.trials + r.skipped != 1000 {
                failed.push(format!("{}/{} ({} of {})", m, r.axiom, r.violations, r.trials));
            }
        }
    }
    outcome(
        failed.is_empty() && checked == 30,
        format!(
            "{checked} suites at d=4 x 1000 trials, failing: [{}]; continuity smoke tests: [{}]",
            failed.join(" "),
            heuristic.join(" ")
        ),
    )
}

fn random_mixed_rank_states(seed: u64) -> Vec<DensityMatrix> {
    let mut out = Vec::with_capacity(7000);
    for d in 2..=8usize {
        let mut rng = PortableRng::with_stream(seed, d as u64);
        for _ in 0..1000 {
            let rank = 1 + rng.below(d);
            out.push(random_state(d, rank, &mut rng).unwrap());
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let mut hs: f64 = 0.0;
    let mut wy: f64 = 0.0;
    let bases: Vec<GellMannBasis> = (0..=8).map(|d| GellMannBasis::new(d.max(2)).unwrap()).collect();
    for rho in random_mixed_rank_states(7) {
        let element = c_hs(&rho, HsVariant::Element).unwrap();
        let basis = qduality::measures::c_hs_basis(&rho, &bases[rho.dim()]).unwrap();
        hs = hs.max((element - basis).abs());
        let a = c_wy(&rho, WyVariant::Commutator).unwrap();
        let b = c_wy(&rho, WyVariant::SqrtOffDiag).unwrap();
        let c = c_wy(&rho, WyVariant::DiagonalSum).unwrap();
        wy = wy.max((a - b).abs()).max((a - c).abs()).max((b - c).abs());
    }
    outcome(
        hs < 1e-10 && wy < 1e-8,
        format!("7000 states: C_hs forms differ by {hs:.1e}, C_wy forms by {wy:.1e}"),
    )
}

fn criterion_8() -> Outcome {
    let mut worst: f64 = f64::INFINITY;
    let mut n = 0;
    let mut check = |rho: &DensityMatrix| {
        let s = rho.sqrt().diagonal();
        for (sj, pj) in s.iter().zip(rho.populations()) {
            worst = worst.min(sj - pj);
        }
        n += 1;
    };
    for rho in random_mixed_rank_states(8) {
        check(&rho);
    }
    for r in &hs_campaign().0.records {
        check(&campaign_state(1, r.dim, r.dim, r.sample_id));
    }
    outcome(worst >= -1e-10, format!("{n} states, min sqrt(rho)_jj - rho_jj = {worst:.3e}"))
}

fn criterion_9() -> Outcome {
    let summary = &hs_campaign().0.summary;
    let means: Vec<String> = summary
        .per_dim
        .iter()
        .map(|s| format!("{}:{:.4}", s.dim, s.mean_tohs_slack))
        .collect();
    outcome(
        summary.tightness_nondecreasing(0.005),
        format!("mean S_l - C_hs by d [{}]", means.join(" ")),
    )
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: usize, name: &str| {
        let path = dir.path().join(name);
        let cfg = RunConfig {
            command: Command::Campaign,
            seed: 10,
            threads: Some(threads),
            output_path: Some(path.clone()),
            ..RunConfig::default()
        };
        let code = cli::execute(&cfg);
        (code, std::fs::read(path).unwrap())
    };
    let (c1, one) = run(1, "one.csv");
    let (c4, four) = run(4, "four.csv");
    let (c4b, again) = run(4, "again.csv");
    let rows = one.iter().filter(|&&b| b == b'\n').count();
    let pass = c1 == 0 && c4 == 0 && c4b == 0 && one == four && four == again && rows == 7001;
    outcome(
        pass,
        format!("{} bytes, {rows} lines; 1 vs 4 workers identical: {}", one.len(), one == four),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("C_hs <= S_l(iota) <= S_vn(iota), d=2..8 x 1000", criterion_1),
        ("C_wy <= Upsilon <= Omega, d=2..8 x 5000", criterion_2),
        ("pure-qubit tightness C_hs = S_l(iota)", criterion_3),
        ("population bounds and d=2/3 closed forms", criterion_4),
        ("Werner ququart sweeps", criterion_5),
        ("axiom suites W2-W6 / P2-P6 at d=4", criterion_6),
        ("formula cross-validation", criterion_7),
        ("sqrt(rho)_jj >= rho_jj", criterion_8),
        ("tightness trend in d", criterion_9),
        ("byte-identical CSV across worker counts", criterion_10),
    ];
    let mut failures = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        println!(
            "criterion {:>2} {} {title}: {} [{:.1}s]",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
        if !o.pass {
            failures += 1;
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
