//! Configuration, seeded test data, estimate suites and scenario runs.

pub mod config;
pub mod data;
pub mod estimates;
pub mod oracle;
pub mod report;
pub mod scenario;
pub mod tolerances;

pub use config::{band_pairs, coupling_l, RunConfig, Scenario};
pub use estimates::{
    verify_all, verify_bilinear_estimate, verify_lemma_properties, verify_semigroup_estimates, verify_zeta_estimates, EstimateId,
    EstimateReport, Verdict,
};
pub use scenario::{continuous_dependence, run_band_sweep, run_scenario, run_sweep, DependenceReport, RunOutcome, SweepSummary};
pub use oracle::{symbol_oracle_sweep, SymbolSweepReport};
