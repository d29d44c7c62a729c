use rayon::prelude::*;

use super::record::{evaluate_with, Inequality, TradeoffRecord};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::rng::PortableRng;
use crate::states::{random_state_matrix, validate};
use crate::tolerance::Tolerances;

pub const MAX_CAMPAIGN_DIM: usize = 16;

/// Rank of the Ginibre factor used to draw states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankSpec {
    Full,
    Fixed(usize),
}

impl RankSpec {
    pub fn resolve(self, dim: usize) -> usize {
        match self {
            RankSpec::Full => dim,
            RankSpec::Fixed(r) => r,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub d_min: usize,
    pub d_max: usize,
    pub samples: usize,
    pub rank: RankSpec,
    pub seed: u64,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    pub tolerances: Tolerances,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            d_min: 2,
            d_max: 8,
            samples: 1000,
            rank: RankSpec::Full,
            seed: 1,
            threads: None,
            tolerances: Tolerances::default(),
        }
    }
}

/// A sampled state that failed validation or broke an inequality.
#[derive(Debug, Clone)]
pub struct Violation {
    pub dim: usize,
    pub sample_id: u64,
    pub reason: String,
    pub matrix: ComplexMatrix,
}

struct SampleOutcome {
    record: Option<TradeoffRecord>,
    violation: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimSummary {
    pub dim: usize,
    pub samples: usize,
    /// Pass count per inequality, in [`Inequality::ALL`] order.
    pub passes: Vec<(Inequality, usize)>,
    pub all_pass: usize,
    /// Mean of `S_l(iota) - C_hs` over the dimension's records.
    pub mean_tohs_slack: f64,
}

impl DimSummary {
    pub fn pass_rate(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            self.all_pass as f64 / self.samples as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignSummary {
    pub per_dim: Vec<DimSummary>,
    pub violations: usize,
}

impl CampaignSummary {
    pub fn all_pass(&self) -> bool {
        self.violations == 0 && self.per_dim.iter().all(|s| s.all_pass == s.samples)
    }

    /// True if the mean `S_l(iota) - C_hs` never drops by more than `tol`
    /// between consecutive dimensions.
    pub fn tightness_nondecreasing(&self, tol: f64) -> bool {
        self.per_dim
            .windows(2)
            .all(|w| w[1].mean_tohs_slack >= w[0].mean_tohs_slack - tol)
    }
}

#[derive(Debug, Clone)]
pub struct CampaignResult {
    pub records: Vec<TradeoffRecord>,
    pub summary: CampaignSummary,
    pub violations: Vec<Violation>,
}

impl CampaignConfig {
    pub fn check(&self) -> Result<()> {
        if self.d_min < 2 {
            return Err(Error::BadDimension(self.d_min));
        }
        if self.d_max > MAX_CAMPAIGN_DIM || self.d_max < self.d_min {
            return Err(Error::BadDimension(self.d_max));
        }
        if self.samples == 0 {
            return Err(Error::ParamOutOfRange {
                name: "samples",
                value: 0.0,
            });
        }
        for d in self.d_min..=self.d_max {
            let r = self.rank.resolve(d);
            if r == 0 || r > d {
                return Err(Error::BadRank { rank: r, dim: d });
            }
        }
        Ok(())
    }
}

/// Samples `samples` Ginibre states for every `d` in range and evaluates
/// each one. Sample `i` of dimension `d` draws from its own random stream,
/// so results do not depend on the worker count.
pub fn campaign(config: &CampaignConfig) -> Result<CampaignResult> {
    campaign_with_hook(config, &|_, _, _| {})
}

/// Like [`campaign`], but `hook(d, sample_id, matrix)` may alter each drawn
/// matrix before validation. Used to exercise the failure path.
pub fn campaign_with_hook(
    config: &CampaignConfig,
    hook: &(dyn Fn(usize, u64, &mut ComplexMatrix) + Sync),
) -> Result<CampaignResult> {
    config.check()?;
    let jobs: Vec<(usize, u64)> = (config.d_min..=config.d_max)
        .flat_map(|d| (0..config.samples as u64).map(move |i| (d, i)))
        .collect();

    let run = |&(d, id): &(usize, u64)| -> Result<SampleOutcome> {
        let rank = config.rank.resolve(d);
        let mut rng = PortableRng::for_sample(config.seed, d, id);
        let mut m = random_state_matrix(d, rank, &mut rng)?;
        hook(d, id, &mut m);
        let violation = |reason: String, matrix: ComplexMatrix| Violation {
            dim: d,
            sample_id: id,
            reason,
            matrix,
        };
        let rho = match validate(&m) {
            Ok(rho) => rho,
            Err(e) => {
                return Ok(SampleOutcome {
                    record: None,
                    violation: Some(violation(e.to_string(), m)),
                })
            }
        };
        let mut rec = evaluate_with(&rho, &config.tolerances)?;
        rec.sample_id = id;
        rec.seed = config.seed;
        rec.rank = rank;
        let failed: Vec<String> = rec
            .verdicts
            .iter()
            .filter(|v| !v.pass())
            .map(|v| format!("{} (slack {:e})", v.inequality, v.slack))
            .collect();
        Ok(SampleOutcome {
            record: Some(rec),
            violation: (!failed.is_empty()).then(|| violation(failed.join(", "), m)),
        })
    };

    let outcomes: Vec<Result<SampleOutcome>> = match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(|| jobs.par_iter().map(run).collect()),
        None => jobs.par_iter().map(run).collect(),
    };

    let mut records = Vec::with_capacity(jobs.len());
    let mut violations = Vec::new();
    for outcome in outcomes {
        let outcome = outcome?;
        records.extend(outcome.record);
        violations.extend(outcome.violation);
    }

    let summary = summarize(config, &records, violations.len());
    Ok(CampaignResult {
        records,
        summary,
        violations,
    })
}

fn summarize(config: &CampaignConfig, records: &[TradeoffRecord], violations: usize) -> CampaignSummary {
    let per_dim = (config.d_min..=config.d_max)
        .map(|d| {
            let recs: Vec<&TradeoffRecord> = records.iter().filter(|r| r.dim == d).collect();
            let passes = Inequality::ALL
                .iter()
                .map(|&q| (q, recs.iter().filter(|r| r.verdict(q).pass()).count()))
                .collect();
            let mean = if recs.is_empty() {
                0.0
            } else {
                recs.iter().map(|r| r.slack(Inequality::TohsLinear)).sum::<f64>() / recs.len() as f64
            };
            DimSummary {
                dim: d,
                samples: config.samples,
                passes,
                all_pass: recs.iter().filter(|r| r.pass_all()).count(),
                mean_tohs_slack: mean,
            }
        })
        .collect();
    CampaignSummary {
        per_dim,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seed: u64) -> CampaignConfig {
        CampaignConfig {
            d_min: 2,
            d_max: 4,
            samples: 50,
            seed,
            ..Default::default()
        }
    }

    #[test]
    fn small_campaign_passes() {
        let res = campaign(&small(3)).unwrap();
        assert_eq!(res.records.len(), 150);
        assert!(res.summary.all_pass());
        assert!(res.violations.is_empty());
        let ids: Vec<(usize, u64)> = res.records.iter().map(|r| (r.dim, r.sample_id)).collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let one = campaign(&CampaignConfig { threads: Some(1), ..small(9) }).unwrap();
        let many = campaign(&CampaignConfig { threads: Some(4), ..small(9) }).unwrap();
        assert_eq!(one.records, many.records);
    }

    #[test]
    fn bad_configs() {
        let bad = |c: CampaignConfig| campaign(&c).is_err();
        assert!(bad(CampaignConfig { d_min: 1, ..small(1) }));
        assert!(bad(CampaignConfig { d_max: 17, ..small(1) }));
        assert!(bad(CampaignConfig { samples: 0, ..small(1) }));
        assert!(bad(CampaignConfig { rank: RankSpec::Fixed(3), ..small(1) }));
    }

    #[test]
    fn corrupted_state_is_reported() {
        let res = campaign_with_hook(&small(2), &|d, id, m| {
            if d == 3 && id == 7 {
                // push an off-diagonal past the positivity limit
                m[(0, 1)] += num_complex::Complex64::new(1.0, 0.0);
                m[(1, 0)] += num_complex::Complex64::new(1.0, 0.0);
            }
        })
        .unwrap();
        assert_eq!(res.violations.len(), 1);
        assert_eq!((res.violations[0].dim, res.violations[0].sample_id), (3, 7));
        assert!(!res.summary.all_pass());
        assert_eq!(res.records.len(), 149);
    }
}
