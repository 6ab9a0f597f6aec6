//! Every pass/fail threshold used by the verification harness and the
//! acceptance suite.

/// Closed-form symbol vs matrix exponential, max abs entry error.
pub const SYMBOL_ORACLE: f64 = 1e-10;
/// Minimum number of random samples in the symbol oracle sweep.
pub const SYMBOL_SAMPLES: usize = 10_000;
/// Wall-clock budget of the symbol oracle sweep, seconds.
pub const SYMBOL_RUNTIME_S: f64 = 60.0;

/// Partition-of-unity residual on interior shells.
pub const PARTITION_UNITY: f64 = 1e-12;

/// Relative reconstruction error of the Bony decomposition.
pub const BONY_RECONSTRUCTION: f64 = 1e-10;
/// Random pairs per grid size in the Bony sweep.
pub const BONY_PAIRS: usize = 100;
/// Block and paraproduct leakage.
pub const ORTHOGONALITY: f64 = 1e-12;

/// Pseudo-spectral nonlinear term vs direct convolution.
pub const NONLINEAR_ORACLE: f64 = 1e-11;

/// Divergence of any stored field, relative.
pub const DIVERGENCE: f64 = 1e-10;
/// Conjugate-symmetry defect of real fields.
pub const REALITY: f64 = 1e-12;

/// Target value of `4 K ||y||` in the contraction regime.
pub const CONTRACTION_TARGET: f64 = 0.5;
/// Largest allowed ratio of consecutive Picard distances.
pub const CONTRACTION_RATIO: f64 = 0.5;
/// Slack in `final_norm <= 2 ||y|| (1 + slack)`.
pub const FINAL_NORM_SLACK: f64 = 1e-6;

/// `X_r` distance between the Picard solution and the exponential stepper.
pub const INTEGRATOR_AGREEMENT: f64 = 1e-4;

/// Spread of final norms across the uniformity band.
pub const UNIFORMITY_SPREAD: f64 = 0.15;
/// Minimum number of parameter pairs in the band.
pub const UNIFORMITY_PAIRS: usize = 20;

/// Ratio error of the critical-scaling check.
pub const SCALING_INVARIANCE: f64 = 1e-8;

/// Allowed drift of a measured constant under resolution doubling.
pub const RESOLUTION_DRIFT: f64 = 0.10;
/// Wall-clock budget of all estimate suites, seconds.
pub const SUITE_RUNTIME_S: f64 = 900.0;

/// Relative slack on the continuous-dependence bound.
pub const DEPENDENCE_SLACK: f64 = 1e-3;

/// Duhamel quadrature vs closed-form single-mode integral.
pub const ZETA_CLOSED_FORM: f64 = 1e-8;

/// Picard stopping tolerance (relative to `||y||`).
pub const PICARD_TOL: f64 = 1e-10;
pub const PICARD_MAX_ITER: usize = 80;
