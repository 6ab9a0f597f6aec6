//! Picard iteration `v <- y + B(v, v)` for the mild formulation, with
//! distances measured in the finite-horizon `X_r` norm.

use serde::{Deserialize, Serialize};

use super::duhamel::{duhamel_bilinear_with, free_evolution_with, zeta_with};
use super::linear::{Dynamics, LinearOperator};
use super::trajectory::{uniform_times, Trajectory};
use crate::error::{Error, Result};
use crate::field::SpectralField4;
use crate::function_spaces::{block_profile, build_lp_partition, xr_norm_from_profiles, BlockProfile, LPPartition, NormParams};
use crate::grid::GridSpec;
use crate::symbols::{Convention, PhysParams};

/// Divergence threshold for the initial data.
pub const DIVERGENCE_TOL: f64 = 1e-10;

/// Iterates whose distance exceeds this multiple of `||y||` are treated as
/// blow-up.
const BLOWUP_FACTOR: f64 = 1e8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractionReport {
    /// `X_r` norm of the free evolution `y = S(.) v0`.
    pub y_norm: f64,
    /// Largest `||B(v, v)|| / ||v||^2` seen along the iteration.
    pub k_emp: f64,
    /// `X_r` distances of successive iterates.
    pub iterates: Vec<f64>,
    /// Ratios of consecutive distances.
    pub ratios: Vec<f64>,
    pub converged: bool,
    pub final_norm: f64,
    /// `||v - y - B(v, v)|| / ||y||` with a freshly computed `B`.
    pub residual: f64,
    /// Bound on the `L^1(FN^{s + 2 alpha})` part of `y` beyond the horizon.
    pub y_tail_bound: f64,
    pub tol: f64,
}

impl ContractionReport {
    pub fn max_ratio(&self) -> f64 {
        self.ratios.iter().copied().fold(0.0, f64::max)
    }
}

/// Solver context: linear operator, LP blocks and the norm used for
/// distances.
#[derive(Debug, Clone)]
pub struct Solver {
    pub op: LinearOperator,
    pub norm: NormParams,
    pub partition: LPPartition,
}

impl Solver {
    pub fn new(grid: GridSpec, params: PhysParams, dynamics: Dynamics, convention: Convention, norm: NormParams) -> Result<Self> {
        norm.validate()?;
        let op = LinearOperator::new(grid, params, dynamics, convention)?;
        let partition = build_lp_partition(&grid)?;
        Ok(Self { op, norm, partition })
    }

    pub fn grid(&self) -> GridSpec {
        self.op.grid
    }

    pub fn params(&self) -> PhysParams {
        self.op.params
    }

    pub fn profiles(&self, traj: &Trajectory) -> Result<Vec<BlockProfile>> {
        traj.fields.iter().map(|f| block_profile(f, self.norm.q, self.norm.mu, &self.partition)).collect()
    }

    pub fn profile(&self, field: &SpectralField4) -> Result<BlockProfile> {
        block_profile(field, self.norm.q, self.norm.mu, &self.partition)
    }

    /// `||v||_{L^inf(FN^s)} + ||v||_{L^1(FN^{s+2 alpha})}` over the sampled times.
    pub fn xr_norm(&self, traj: &Trajectory) -> Result<f64> {
        xr_norm_from_profiles(&traj.times, &self.profiles(traj)?, self.norm.s, self.op.params.alpha, self.norm.r)
    }

    pub fn free_evolution(&self, v0: &SpectralField4, times: &[f64]) -> Result<Trajectory> {
        Trajectory::new(times.to_vec(), free_evolution_with(&self.op, v0, times)?, self.op.params)
    }

    pub fn bilinear(&self, v: &Trajectory, w: &Trajectory) -> Result<Trajectory> {
        duhamel_bilinear_with(&self.op, v, w)
    }

    pub fn zeta(&self, f: &Trajectory) -> Result<Trajectory> {
        zeta_with(&self.op, f)
    }

    /// Tail of `||y||_{L^1((T, inf); FN^{s + 2 alpha})}` from per-block decay:
    /// `|S(t) w| = e^{-nu t |xi|^{2 alpha}} |w|` on divergence-free data.
    pub fn free_tail_bound(&self, v0: &SpectralField4, horizon: f64) -> Result<f64> {
        let prof = self.profile(v0)?;
        let p = self.op.params;
        let k0 = self.grid().fundamental_wavenumber();
        let terms = prof.js.iter().zip(&prof.values).map(|(&j, &m)| {
            let kmin = (0.75 * 2f64.powi(j)).max(k0);
            let rate = p.nu.min(p.kappa) * kmin.powf(2.0 * p.alpha);
            2f64.powf(j as f64 * (self.norm.s + 2.0 * p.alpha)) * m * (-rate * horizon).exp() / rate
        });
        Ok(self.norm.r.lp_sum(terms))
    }

    pub fn picard_solve(
        &self,
        v0: &SpectralField4,
        horizon: f64,
        steps: usize,
        tol: f64,
        max_iter: usize,
    ) -> Result<(Trajectory, ContractionReport)> {
        self.picard_solve_on(v0, &uniform_times(horizon, steps)?, tol, max_iter)
    }

    pub fn picard_solve_on(&self, v0: &SpectralField4, times: &[f64], tol: f64, max_iter: usize) -> Result<(Trajectory, ContractionReport)> {
        if !(tol > 0.0) || max_iter == 0 {
            return Err(Error::InvalidParameter("need tol > 0 and max_iter >= 1".into()));
        }
        let defect = v0.divergence_defect();
        if defect > DIVERGENCE_TOL {
            return Err(Error::NotDivergenceFree(defect));
        }
        let y = self.free_evolution(v0, times)?;
        let y_norm = self.xr_norm(&y)?;
        let horizon = *times.last().expect("nonempty times");
        let y_tail_bound = self.free_tail_bound(v0, horizon)?;

        let mut v = y.clone();
        let mut v_norm = y_norm;
        let mut k_emp: f64 = 0.0;
        let mut distances = Vec::new();
        let mut converged = false;
        for _ in 0..max_iter {
            let b = self.bilinear(&v, &v)?;
            if v_norm > 0.0 {
                k_emp = k_emp.max(self.xr_norm(&b)? / (v_norm * v_norm));
            }
            let next = y.add_traj(&b)?;
            let d = self.xr_norm(&next.sub(&v)?)?;
            distances.push(d);
            v = next;
            v_norm = self.xr_norm(&v)?;
            if !d.is_finite() || !v_norm.is_finite() || d > BLOWUP_FACTOR * y_norm.max(f64::MIN_POSITIVE) {
                return Err(Error::NonConvergence { distances });
            }
            if d <= tol * y_norm {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NonConvergence { distances });
        }
        let check = self.bilinear(&v, &v)?;
        let resid = self.xr_norm(&v.sub(&y)?.sub(&check)?)?;
        let residual = if y_norm > 0.0 { resid / y_norm } else { resid };
        let ratios = distances.windows(2).map(|w| if w[0] > 0.0 { w[1] / w[0] } else { 0.0 }).collect();
        let report = ContractionReport {
            y_norm,
            k_emp,
            iterates: distances,
            ratios,
            converged,
            final_norm: v_norm,
            residual,
            y_tail_bound,
            tol,
        };
        Ok((v, report))
    }
}

impl Trajectory {
    pub fn add_traj(&self, other: &Trajectory) -> Result<Trajectory> {
        self.axpy(1.0, other)
    }
}

/// Picard solve for the stratified rotating dynamics (corrected closed form)
/// with the norm `norm`.
pub fn picard_solve(
    v0: &SpectralField4,
    params: &PhysParams,
    norm: &NormParams,
    horizon: f64,
    steps: usize,
    tol: f64,
    max_iter: usize,
) -> Result<(Trajectory, ContractionReport)> {
    Solver::new(v0.grid, *params, Dynamics::Fbcs, Convention::Corrected, *norm)?.picard_solve(v0, horizon, steps, tol, max_iter)
}
