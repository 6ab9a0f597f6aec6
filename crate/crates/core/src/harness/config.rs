//! Run configuration, read from TOML.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::tolerances;
use crate::error::{Error, Result};
use crate::function_spaces::{critical_s, Exponent, NormParams};
use crate::grid::GridSpec;
use crate::solver::{Dynamics, Scheme};
use crate::symbols::{Convention, PhysParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    /// Rotation and stratification.
    #[default]
    Fbcs,
    /// Rotation only: `theta0 = 0`, no buoyancy coupling.
    NsCoriolis,
    /// Additionally `omega = 0` and `alpha = 1/2`, `r = 1`.
    NsCritical,
}

impl std::str::FromStr for Scenario {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fbcs" => Ok(Self::Fbcs),
            "ns_coriolis" | "ns-coriolis" => Ok(Self::NsCoriolis),
            "ns_critical" | "ns-critical" => Ok(Self::NsCritical),
            other => Err(Error::Config(format!("unknown scenario {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GridConfig {
    pub n: usize,
    pub box_length: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { n: 32, box_length: 2.0 * std::f64::consts::PI }
    }
}

impl GridConfig {
    pub fn spec(&self) -> Result<GridSpec> {
        GridSpec::new(self.n, self.box_length)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DataKind {
    #[default]
    Random,
    Homogeneous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmplitudeMode {
    /// Multiply the unit-variance data by `amplitude`.
    Absolute,
    /// Scale so that the measured `4 K ||y||` equals `amplitude`.
    #[default]
    Contraction,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DataConfig {
    pub kind: DataKind,
    /// Largest `|xi|` carrying random coefficients.
    pub band: f64,
    pub amplitude: f64,
    pub amplitude_mode: AmplitudeMode,
    /// Homogeneity degree for homogeneous data; `None` selects the degree
    /// matched to the norm.
    pub degree: Option<f64>,
}

impl Default for DataConfig {
    fn default() -> Self {
        Self {
            kind: DataKind::Random,
            band: 2.0,
            amplitude: tolerances::CONTRACTION_TARGET,
            amplitude_mode: AmplitudeMode::Contraction,
            degree: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TimeConfig {
    pub horizon: f64,
    pub steps: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub scheme: Scheme,
}

impl Default for TimeConfig {
    fn default() -> Self {
        Self { horizon: 1.0, steps: 132, tol: tolerances::PICARD_TOL, max_iter: tolerances::PICARD_MAX_ITER, scheme: Scheme::Etdrk2 }
    }
}

/// Parameter lists for sweeps. Empty `omegas`/`brunts` select `band_pairs`
/// pairs inside `N sqrt(g)/2 <= |omega| <= 2 N sqrt(g)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepConfig {
    pub omegas: Vec<f64>,
    pub brunts: Vec<f64>,
    pub alphas: Vec<f64>,
    pub amplitudes: Vec<f64>,
    pub band_pairs: usize,
    /// `|omega| / (N sqrt g)` values outside the band, checked for scaling with `L`.
    pub outside_ratios: Vec<f64>,
    /// Relative size of the perturbation in the continuous-dependence check.
    pub perturbation: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            omegas: Vec::new(),
            brunts: Vec::new(),
            alphas: Vec::new(),
            amplitudes: Vec::new(),
            band_pairs: tolerances::UNIFORMITY_PAIRS,
            outside_ratios: vec![0.125, 8.0],
            perturbation: 0.05,
        }
    }
}

/// Settings of the estimate suites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EstimateConfig {
    pub coarse_n: usize,
    pub fine_n: usize,
    /// Band of the random data; at most half the coarse dealiasing cutoff.
    pub band: f64,
    /// Random fields or trajectory pairs per parameter point.
    pub samples: usize,
    /// Second Lebesgue index for the time-decay estimate, `q2 <= q`.
    pub q2: f64,
    pub semigroup_horizon: f64,
    pub semigroup_steps: usize,
    pub zeta_horizon: f64,
    pub zeta_steps: usize,
    pub bilinear_horizon: f64,
    pub bilinear_steps: usize,
    /// Parameter pairs used by the bilinear suite.
    pub bilinear_pairs: usize,
}

impl Default for EstimateConfig {
    fn default() -> Self {
        Self {
            coarse_n: 16,
            fine_n: 32,
            band: 2.5,
            samples: 3,
            q2: 1.0,
            semigroup_horizon: 6.0,
            semigroup_steps: 192,
            zeta_horizon: 2.0,
            zeta_steps: 64,
            bilinear_horizon: 1.0,
            bilinear_steps: 16,
            bilinear_pairs: 4,
        }
    }
}

fn default_norm() -> NormParams {
    NormParams::critical(1.0, 2.0, 0.0, Exponent::Finite(2.0))
}

fn default_physics() -> PhysParams {
    PhysParams { nu: 1.0, kappa: 1.0, gravity: 1.0, omega: 1.0, brunt: 1.0, alpha: 1.0 }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub convention: Convention,
    pub grid: GridConfig,
    pub physics: PhysParams,
    pub norm: NormParams,
    pub data: DataConfig,
    pub time: TimeConfig,
    pub sweep: SweepConfig,
    pub estimates: EstimateConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            scenario: Scenario::Fbcs,
            seed: 20240601,
            out_dir: PathBuf::from("fbcs-out"),
            convention: Convention::Corrected,
            grid: GridConfig::default(),
            physics: default_physics(),
            norm: default_norm(),
            data: DataConfig::default(),
            time: TimeConfig::default(),
            sweep: SweepConfig::default(),
            estimates: EstimateConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// Linear dynamics implied by the scenario.
    pub fn dynamics(&self) -> Dynamics {
        match self.scenario {
            Scenario::Fbcs => Dynamics::Fbcs,
            Scenario::NsCoriolis | Scenario::NsCritical => Dynamics::StokesCoriolis,
        }
    }

    /// Applies the scenario's forced settings: the reduced scenarios switch
    /// off the buoyancy coupling; the critical one also sets `omega = 0`,
    /// `alpha = 1/2`, `r = 1` and the critical `s`.
    pub fn normalized(&self) -> Self {
        let mut c = self.clone();
        match c.scenario {
            Scenario::Fbcs => {}
            Scenario::NsCoriolis => {
                c.physics.brunt = 0.0;
            }
            Scenario::NsCritical => {
                c.physics.brunt = 0.0;
                c.physics.omega = 0.0;
                c.physics.alpha = 0.5;
                c.norm.r = Exponent::Finite(1.0);
                c.norm.s = critical_s(0.5, c.norm.q, c.norm.mu);
            }
        }
        c
    }

    pub fn validate(&self) -> Result<()> {
        let c = self.normalized();
        c.grid.spec()?;
        c.norm.validate()?;
        match c.dynamics() {
            Dynamics::Fbcs => {
                c.physics.validate()?;
                c.physics.require_closed_form()?;
            }
            Dynamics::StokesCoriolis => c.physics.validate_common()?,
        }
        if !(c.time.horizon > 0.0) || c.time.steps == 0 || !(c.time.tol > 0.0) || c.time.max_iter == 0 {
            return Err(Error::Config("time settings need horizon > 0, steps >= 1, tol > 0, max_iter >= 1".into()));
        }
        if !(c.data.band > 0.0) || !(c.data.amplitude >= 0.0) {
            return Err(Error::Config("data needs band > 0 and amplitude >= 0".into()));
        }
        if c.sweep.omegas.len() != c.sweep.brunts.len() {
            return Err(Error::Config("sweep.omegas and sweep.brunts must have equal lengths".into()));
        }
        let e = c.estimates;
        if e.fine_n != 2 * e.coarse_n || e.samples == 0 || !(e.q2 >= 1.0 && e.q2 <= c.norm.q) {
            return Err(Error::Config("estimates need fine_n = 2 coarse_n, samples >= 1 and 1 <= q2 <= q".into()));
        }
        Ok(())
    }
}

/// `count` pairs `(omega, brunt)` with `|omega| / (brunt sqrt g)` spread
/// log-uniformly over `[1/2, 2]`, `brunt` cycling over `{1/2, 1, 2, 4}` and
/// alternating signs of `omega`.
pub fn band_pairs(gravity: f64, count: usize) -> Vec<(f64, f64)> {
    const BRUNTS: [f64; 4] = [0.5, 1.0, 2.0, 4.0];
    (0..count)
        .map(|k| {
            let x = if count > 1 { k as f64 / (count - 1) as f64 } else { 0.5 };
            let rho = 2f64.powf(2.0 * x - 1.0);
            let brunt = BRUNTS[k % BRUNTS.len()];
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            (sign * rho * brunt * gravity.sqrt(), brunt)
        })
        .collect()
}

/// `max(2, |omega|/N sqrt g, N sqrt g/|omega|)`.
pub fn coupling_l(omega: f64, brunt: f64, gravity: f64) -> f64 {
    let n = brunt * gravity.sqrt();
    let r = omega.abs() / n;
    2f64.max(r).max(1.0 / r)
}
