//! Exponential integrators for `v' = L v + N(v, v)`, used as an
//! independent cross-check of the Picard solution.

use serde::{Deserialize, Serialize};

use super::linear::{phi_function, LinearOperator, MultiplierTable};
use super::nonlinear::nonlinear_term;
use super::trajectory::Trajectory;
use crate::error::{Error, Result};
use crate::field::SpectralField4;
use crate::symbols::PhysParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// `v + dt S(dt) N(v)` propagated: `S(dt) (v + dt N(v))`.
    Lawson,
    /// `S(dt) v + dt phi1(dt L) N(v)`.
    ExponentialEuler,
    /// Two-stage Cox-Matthews scheme, second order.
    #[default]
    Etdrk2,
}

pub struct ExponentialStepper {
    pub dt: f64,
    pub scheme: Scheme,
    /// Multiplies the nonlinear term; 0 gives the pure linear flow.
    pub nonlinear_scale: f64,
    s: MultiplierTable,
    phi1: MultiplierTable,
    phi2: MultiplierTable,
}

impl ExponentialStepper {
    pub fn new(op: &LinearOperator, dt: f64, scheme: Scheme) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
        }
        Ok(Self {
            dt,
            scheme,
            nonlinear_scale: 1.0,
            s: op.semigroup_table(dt)?,
            phi1: op.function_table(dt, |z| phi_function(1, z)),
            phi2: op.function_table(dt, |z| phi_function(2, z)),
        })
    }

    pub fn with_nonlinear_scale(mut self, eps: f64) -> Self {
        self.nonlinear_scale = eps;
        self
    }

    fn forcing(&self, v: &SpectralField4) -> Result<SpectralField4> {
        if self.nonlinear_scale == 0.0 {
            let mut z = SpectralField4::zeros(v.grid);
            z.real_valued = v.real_valued;
            return Ok(z);
        }
        Ok(nonlinear_term(v, v)?.scaled(self.nonlinear_scale))
    }

    pub fn step(&self, v: &SpectralField4) -> Result<SpectralField4> {
        let h = self.dt;
        let n0 = self.forcing(v)?;
        match self.scheme {
            Scheme::Lawson => self.s.apply(&v.axpy(h, &n0)?),
            Scheme::ExponentialEuler => self.s.apply(v)?.axpy(h, &self.phi1.apply(&n0)?),
            Scheme::Etdrk2 => {
                let a = self.s.apply(v)?.axpy(h, &self.phi1.apply(&n0)?)?;
                let n1 = self.forcing(&a)?;
                a.axpy(h, &self.phi2.apply(&n1.sub(&n0)?)?)
            }
        }
    }

    /// Advance `v0` across `times`, whose spacing must equal `dt`.
    pub fn run(&self, v0: &SpectralField4, times: &[f64], params: PhysParams) -> Result<Trajectory> {
        if times.windows(2).any(|w| ((w[1] - w[0]) - self.dt).abs() > 1e-12 * self.dt.max(1.0)) {
            return Err(Error::InvalidParameter("time nodes must be spaced by the stepper's dt".into()));
        }
        let mut fields = Vec::with_capacity(times.len());
        fields.push(v0.clone());
        for _ in 1..times.len() {
            let next = self.step(fields.last().expect("nonempty"))?;
            fields.push(next);
        }
        Trajectory::new(times.to_vec(), fields, params)
    }
}

/// Append one step of size `dt` to a trajectory in progress.
pub fn step_exponential(traj: &mut Trajectory, op: &LinearOperator, dt: f64, scheme: Scheme) -> Result<()> {
    let stepper = ExponentialStepper::new(op, dt, scheme)?;
    let next = stepper.step(traj.last())?;
    let t = traj.times.last().copied().unwrap_or(0.0) + dt;
    traj.times.push(t);
    traj.fields.push(next);
    Ok(())
}
