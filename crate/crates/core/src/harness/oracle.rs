//! Random sweep of the closed-form semigroup symbol against the dense
//! matrix exponential.

use std::time::Instant;

use nalgebra::Vector4;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::data::rng;
use crate::error::Result;
use crate::symbols::{helmholtz_symbol, matrix_exponential_oracle, semigroup_symbol_with, Convention, PhysParams};

/// Dissipation powers sampled by the sweep.
pub const SWEEP_ALPHAS: [f64; 4] = [0.5, 0.75, 1.0, 1.25];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolSweepReport {
    pub convention: Convention,
    pub samples: usize,
    /// Largest `|S_closed w - S_oracle w|_inf` over unit divergence-free `w`.
    pub max_error: f64,
    /// Sample that produced `max_error`.
    pub worst: Option<SymbolSample>,
    pub seconds: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymbolSample {
    pub xi: [f64; 3],
    pub t: f64,
    pub params: PhysParams,
}

fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

/// Draws `samples` points `(xi, t, omega, brunt, alpha)` and compares the two
/// symbols on a random divergence-free vector at each.
pub fn symbol_oracle_sweep(samples: usize, seed: u64, convention: Convention) -> Result<SymbolSweepReport> {
    let start = Instant::now();
    let mut rng = rng(seed);
    let mut max_error: f64 = 0.0;
    let mut worst = None;
    for _ in 0..samples {
        let mut xi = [0.0; 3];
        while xi.iter().all(|&x| x == 0.0) {
            xi = [rng.gen_range(-8.0..8.0), rng.gen_range(-8.0..8.0), rng.gen_range(-8.0..8.0)];
        }
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let nu = log_uniform(&mut rng, 0.05, 2.0);
        let params = PhysParams {
            nu,
            kappa: nu,
            gravity: log_uniform(&mut rng, 0.25, 4.0),
            omega: sign * log_uniform(&mut rng, 0.05, 20.0),
            brunt: log_uniform(&mut rng, 0.05, 20.0),
            alpha: SWEEP_ALPHAS[rng.gen_range(0..SWEEP_ALPHAS.len())],
        };
        let t = rng.gen_range(0.0..3.0);
        let p = helmholtz_symbol(&xi)?.0;
        let raw = Vector4::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let w = p * raw;
        let w = w / w.amax().max(f64::MIN_POSITIVE);
        let closed = semigroup_symbol_with(&xi, t, &params, convention)?.0 * w;
        let oracle = matrix_exponential_oracle(&xi, t, &params)?.0 * w;
        let err = (closed - oracle).amax();
        if !(err <= max_error) {
            max_error = if err.is_nan() { f64::INFINITY } else { err };
            worst = Some(SymbolSample { xi, t, params });
        }
    }
    Ok(SymbolSweepReport { convention, samples, max_error, worst, seconds: start.elapsed().as_secs_f64() })
}
