//! Duhamel integrals by per-mode trapezoidal quadrature with exact
//! semigroup weights.
//!
//! For nodes `t_0 = 0 < t_1 < ...` and integrand samples `N_i`,
//! `I(t_n) = sum_i w_i S(t_n - t_i) N_i` with trapezoid weights `w_i`.
//! The sum is accumulated by `A_0 = 0`,
//! `A_{n+1} = S(h_{n+1}) (A_n + (h_n + h_{n+1})/2 N_n)` and
//! `I(t_n) = A_n + h_n/2 N_n`, so only one-step propagators are needed.

use std::collections::HashMap;

use super::linear::{Dynamics, LinearOperator, MultiplierTable};
use super::nonlinear::nonlinear_term;
use super::trajectory::Trajectory;
use crate::error::{Error, Result};
use crate::field::SpectralField4;
use crate::symbols::Convention;

/// Step sizes closer than this share a propagator table.
const STEP_MERGE: f64 = 1e-13;

/// One-step propagators keyed by step size. Uniform node sets differ from
/// their nominal spacing by rounding only, so nearby sizes are merged.
pub(crate) struct StepTables<'a> {
    op: &'a LinearOperator,
    tables: HashMap<i64, MultiplierTable>,
}

impl<'a> StepTables<'a> {
    pub(crate) fn new(op: &'a LinearOperator) -> Self {
        Self { op, tables: HashMap::new() }
    }

    pub(crate) fn propagate(&mut self, h: f64, field: &SpectralField4) -> Result<SpectralField4> {
        let key = (h / STEP_MERGE).round() as i64;
        if !self.tables.contains_key(&key) {
            self.tables.insert(key, self.op.semigroup_table(h)?);
        }
        self.tables[&key].apply(field)
    }
}

pub fn duhamel_integral(op: &LinearOperator, times: &[f64], integrand: &[SpectralField4]) -> Result<Vec<SpectralField4>> {
    if times.len() != integrand.len() || times.is_empty() {
        return Err(Error::InvalidParameter("integrand must be sampled at every node".into()));
    }
    let grid = op.grid;
    if integrand.iter().any(|f| f.grid != grid) {
        return Err(Error::GridMismatch);
    }
    let mut tables = StepTables::new(op);
    let mut out = Vec::with_capacity(times.len());
    let mut acc = SpectralField4::zeros(grid);
    acc.real_valued = integrand.iter().all(|f| f.real_valued);
    out.push(acc.clone());
    let mut h_prev = 0.0;
    for n in 0..times.len() - 1 {
        let h = times[n + 1] - times[n];
        let weight = 0.5 * (h_prev + h);
        acc = tables.propagate(h, &acc.axpy(weight, &integrand[n])?)?;
        out.push(acc.axpy(0.5 * h, &integrand[n + 1])?);
        h_prev = h;
    }
    Ok(out)
}

/// `y(t_n) = S(t_n) v0`, advanced node to node.
pub fn free_evolution_with(op: &LinearOperator, v0: &SpectralField4, times: &[f64]) -> Result<Vec<SpectralField4>> {
    if v0.grid != op.grid {
        return Err(Error::GridMismatch);
    }
    let mut tables = StepTables::new(op);
    let mut out = Vec::with_capacity(times.len());
    let mut cur = if times[0] == 0.0 { v0.clone() } else { tables.propagate(times[0], v0)? };
    out.push(cur.clone());
    for w in times.windows(2) {
        cur = tables.propagate(w[1] - w[0], &cur)?;
        out.push(cur.clone());
    }
    Ok(out)
}

/// `B(v, w)(t) = int_0^t S(t - tau) N(v, w)(tau) dtau` on the shared nodes.
pub fn duhamel_bilinear_with(op: &LinearOperator, v: &Trajectory, w: &Trajectory) -> Result<Trajectory> {
    v.same_nodes(w)?;
    let integrand = v
        .fields
        .iter()
        .zip(&w.fields)
        .map(|(a, b)| if std::ptr::eq(a, b) { nonlinear_term(a, a) } else { nonlinear_term(a, b) })
        .collect::<Result<Vec<_>>>()?;
    let fields = duhamel_integral(op, &v.times, &integrand)?;
    Trajectory::new(v.times.clone(), fields, v.params)
}

/// Duhamel bilinear operator for the stratified rotating dynamics with the
/// corrected closed form, using the parameters carried by `v`.
pub fn duhamel_bilinear(v: &Trajectory, w: &Trajectory) -> Result<Trajectory> {
    let op = LinearOperator::new(v.grid(), v.params, Dynamics::Fbcs, Convention::Corrected)?;
    duhamel_bilinear_with(&op, v, w)
}

/// `zeta(f)(t) = int_0^t S(t - tau) P f(tau) dtau`.
pub fn zeta_with(op: &LinearOperator, f: &Trajectory) -> Result<Trajectory> {
    let integrand: Vec<SpectralField4> = f
        .fields
        .iter()
        .map(|x| {
            let mut p = x.clone();
            p.project_divergence_free();
            p
        })
        .collect();
    let fields = duhamel_integral(op, &f.times, &integrand)?;
    Trajectory::new(f.times.clone(), fields, f.params)
}
