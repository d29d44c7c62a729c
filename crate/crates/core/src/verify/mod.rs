//! Randomized and parametric checks of the trade-off and complementarity
//! inequalities, plus numerical axiom suites for the wave and particle
//! quantifiers.

mod axioms;
mod campaign;
mod record;
mod werner;

pub use axioms::{axiom_suite_predictability, axiom_suite_wave, Axiom, AxiomReport};
pub use campaign::{
    campaign, campaign_with_hook, CampaignConfig, CampaignResult, CampaignSummary, DimSummary,
    RankSpec, Violation, MAX_CAMPAIGN_DIM,
};
pub use record::{evaluate, evaluate_with, Inequality, TradeoffRecord, Verdict};
pub use werner::{a_grid, werner_sweep, werner_sweep_with, WernerRow};
