//! Per-mode linear operator and functions of it.
//!
//! On divergence-free vectors the generator at a mode acts as the complex
//! number `-a + i w` on the range of `M1` (with `M2` playing the role of
//! `i`) and as `-a3` on the range of `M3`. Any entire function `g` with
//! real Taylor coefficients is therefore
//! `g(hL) = Re g(z) M1 + Im g(z) M2 + g(-h a3) M3` with `z = h(-a + i w)`.
//! `g = exp` reproduces the closed-form semigroup; the `phi` functions
//! drive the exponential integrators.

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::SpectralField4;
use crate::grid::GridSpec;
use crate::symbols::{matrix_m, stokes_coriolis_rotation, xi_prime, Convention, PhysParams};

/// Which linear dynamics propagates the data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dynamics {
    /// Rotation plus stratification, 4x4 closed form.
    #[default]
    Fbcs,
    /// Rotation only: the 3x3 Stokes-Coriolis semigroup on the velocity and
    /// plain diffusion on the fourth component.
    StokesCoriolis,
}

#[derive(Debug, Clone)]
struct ModeOp {
    a: f64,
    a3: f64,
    omega: f64,
    m1: Matrix4<f64>,
    m2: Matrix4<f64>,
    m3: Matrix4<f64>,
}

/// Spectral data of the linear part for every lattice mode of a grid.
#[derive(Debug, Clone)]
pub struct LinearOperator {
    pub grid: GridSpec,
    pub params: PhysParams,
    pub dynamics: Dynamics,
    pub convention: Convention,
    modes: Vec<ModeOp>,
}

impl LinearOperator {
    pub fn new(grid: GridSpec, params: PhysParams, dynamics: Dynamics, convention: Convention) -> Result<Self> {
        match dynamics {
            Dynamics::Fbcs => {
                params.validate()?;
                params.require_closed_form()?;
            }
            Dynamics::StokesCoriolis => params.validate_common()?,
        }
        let mut modes = Vec::with_capacity(grid.len());
        for f in 0..grid.len() {
            let xi = grid.wavevector(f);
            let k = grid.wavenumber_magnitude(f);
            if f == 0 {
                modes.push(ModeOp {
                    a: 0.0,
                    a3: 0.0,
                    omega: 0.0,
                    m1: Matrix4::identity(),
                    m2: Matrix4::zeros(),
                    m3: Matrix4::zeros(),
                });
                continue;
            }
            let lap = k.powf(2.0 * params.alpha);
            let op = match dynamics {
                Dynamics::Fbcs => ModeOp {
                    a: params.nu * lap,
                    a3: params.nu * lap,
                    omega: xi_prime(&xi, &params) / k,
                    m1: matrix_m(1, &xi, &params, convention)?.0,
                    m2: matrix_m(2, &xi, &params, convention)?.0,
                    m3: matrix_m(3, &xi, &params, convention)?.0,
                },
                Dynamics::StokesCoriolis => {
                    let mhat = stokes_coriolis_rotation(&xi)?;
                    let mut m2 = Matrix4::zeros();
                    m2.fixed_view_mut::<3, 3>(0, 0).copy_from(&mhat);
                    let mut m1 = Matrix4::identity();
                    m1[(3, 3)] = 0.0;
                    let mut m3 = Matrix4::zeros();
                    m3[(3, 3)] = 1.0;
                    ModeOp { a: params.nu * lap, a3: params.kappa * lap, omega: params.omega * xi[2] / k, m1, m2, m3 }
                }
            };
            modes.push(op);
        }
        Ok(Self { grid, params, dynamics, convention, modes })
    }

    /// Table of `g(hL)` for every mode.
    pub fn function_table(&self, h: f64, g: impl Fn(Complex64) -> Complex64) -> MultiplierTable {
        let mats = self
            .modes
            .iter()
            .map(|m| {
                let gz = g(Complex64::new(-h * m.a, h * m.omega));
                let g3 = g(Complex64::new(-h * m.a3, 0.0)).re;
                m.m1 * gz.re + m.m2 * gz.im + m.m3 * g3
            })
            .collect();
        MultiplierTable { grid: self.grid, mats }
    }

    pub fn semigroup_table(&self, t: f64) -> Result<MultiplierTable> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::InvalidParameter(format!("time must be nonnegative, got {t}")));
        }
        Ok(self.function_table(t, |z| z.exp()))
    }

    /// Smallest dissipation rate over nonzero modes inside the dealias mask.
    pub fn min_decay_rate(&self) -> f64 {
        (1..self.grid.len())
            .filter(|&f| self.grid.in_dealias_mask(f))
            .map(|f| self.modes[f].a.min(self.modes[f].a3))
            .fold(f64::INFINITY, f64::min)
    }
}

/// One real 4x4 multiplier per lattice mode.
#[derive(Debug, Clone)]
pub struct MultiplierTable {
    pub grid: GridSpec,
    pub mats: Vec<Matrix4<f64>>,
}

impl MultiplierTable {
    pub fn apply(&self, field: &SpectralField4) -> Result<SpectralField4> {
        if field.grid != self.grid {
            return Err(Error::GridMismatch);
        }
        let mut out = SpectralField4::zeros(self.grid);
        out.real_valued = field.real_valued;
        for (f, m) in self.mats.iter().enumerate() {
            let v = field.mode(f);
            if v.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
                continue;
            }
            for r in 0..4 {
                out.comps[r][f] = m[(r, 0)] * v[0] + m[(r, 1)] * v[1] + m[(r, 2)] * v[2] + m[(r, 3)] * v[3];
            }
        }
        Ok(out)
    }
}

/// `phi_k(z) = sum_{m >= 0} z^m / (m + k)!`; `phi_0 = exp`.
pub fn phi_function(k: u32, z: Complex64) -> Complex64 {
    if k == 0 {
        return z.exp();
    }
    if z.norm() < 0.5 {
        let mut term = Complex64::new(1.0, 0.0);
        for i in 1..=k {
            term /= i as f64;
        }
        let mut sum = term;
        for m in 1..30 {
            term = term * z / (m + k) as f64;
            sum += term;
        }
        return sum;
    }
    // phi_k(z) = (phi_{k-1}(z) - 1/(k-1)!) / z
    let mut fact = 1.0;
    let mut val = z.exp();
    for i in 1..=k {
        val = (val - 1.0 / fact) / z;
        fact *= i as f64;
    }
    val
}

/// Multiply every nonzero mode by the closed-form semigroup; the zero mode
/// is left unchanged.
pub fn apply_semigroup(field: &SpectralField4, t: f64, params: &PhysParams) -> Result<SpectralField4> {
    apply_semigroup_with(field, t, params, Dynamics::Fbcs, Convention::Corrected)
}

pub fn apply_semigroup_with(
    field: &SpectralField4,
    t: f64,
    params: &PhysParams,
    dynamics: Dynamics,
    convention: Convention,
) -> Result<SpectralField4> {
    LinearOperator::new(field.grid, *params, dynamics, convention)?.semigroup_table(t)?.apply(field)
}
