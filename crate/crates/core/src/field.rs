//! Spectral fields on a [`GridSpec`] and the physical <-> Fourier transforms.
//!
//! Normalization: a plane wave `e^{i xi0 . x}` sampled on the grid maps to a
//! single unit coefficient at `xi0`, i.e.
//! `c(xi) = n^-3 sum_x f(x) e^{-i xi . x}` and `f(x) = sum_xi c(xi) e^{i xi . x}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft;
use crate::grid::GridSpec;

/// Physical samples of a 4-component field, one vector per lattice point.
pub type Samples4 = [Vec<Complex64>; 4];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn check_len(grid: &GridSpec, got: usize) -> Result<()> {
    if got != grid.len() {
        return Err(Error::ShapeMismatch { expected: grid.len(), got });
    }
    Ok(())
}

fn all_real(v: &[Complex64]) -> bool {
    v.iter().all(|c| c.im == 0.0)
}

/// One complex coefficient per lattice wavenumber.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub grid: GridSpec,
    pub coeffs: Vec<Complex64>,
    pub real_valued: bool,
}

impl ScalarField {
    pub fn zeros(grid: GridSpec) -> Self {
        Self { grid, coeffs: vec![ZERO; grid.len()], real_valued: true }
    }

    pub fn from_coeffs(grid: GridSpec, coeffs: Vec<Complex64>, real_valued: bool) -> Result<Self> {
        check_len(&grid, coeffs.len())?;
        Ok(Self { grid, coeffs, real_valued })
    }

    pub fn from_physical(grid: GridSpec, samples: &[Complex64]) -> Result<Self> {
        check_len(&grid, samples.len())?;
        let mut coeffs = samples.to_vec();
        fft::forward(&mut coeffs, grid.n_per_axis());
        let scale = 1.0 / grid.len() as f64;
        coeffs.iter_mut().for_each(|c| *c *= scale);
        Ok(Self { grid, coeffs, real_valued: all_real(samples) })
    }

    pub fn to_physical(&self) -> Vec<Complex64> {
        let mut out = self.coeffs.clone();
        fft::inverse(&mut out, self.grid.n_per_axis());
        out
    }

    pub fn dealias(&self) -> Self {
        let mut out = self.clone();
        out.dealias_in_place();
        out
    }

    pub fn dealias_in_place(&mut self) {
        for (f, c) in self.coeffs.iter_mut().enumerate() {
            if !self.grid.in_dealias_mask(f) {
                *c = ZERO;
            }
        }
    }

    pub fn scaled(&self, a: f64) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c *= a);
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { grid: self.grid, coeffs, real_valued: self.real_valued && other.real_valued })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scaled(-1.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn l2(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Dealiased pseudo-spectral product. Exact truncated convolution when
    /// both inputs are supported inside the dealias mask.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let a = self.to_physical();
        let b = other.to_physical();
        let prod: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        let mut out = Self::from_physical(self.grid, &prod)?;
        out.real_valued = self.real_valued && other.real_valued;
        out.dealias_in_place();
        Ok(out)
    }

    pub fn conjugate_symmetry_defect(&self) -> f64 {
        conj_defect(&self.grid, &self.coeffs)
    }
}

fn conj_defect(grid: &GridSpec, c: &[Complex64]) -> f64 {
    (0..grid.len())
        .map(|f| (c[f] - c[grid.conjugate_partner(f)].conj()).norm())
        .fold(0.0, f64::max)
}

/// Spectral coefficients of `v = (u1, u2, u3, b)`, stored per component.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField4 {
    pub grid: GridSpec,
    pub comps: [Vec<Complex64>; 4],
    pub real_valued: bool,
}

impl SpectralField4 {
    pub fn zeros(grid: GridSpec) -> Self {
        let z = vec![ZERO; grid.len()];
        Self { grid, comps: [z.clone(), z.clone(), z.clone(), z], real_valued: true }
    }

    pub fn from_components(grid: GridSpec, comps: [Vec<Complex64>; 4], real_valued: bool) -> Result<Self> {
        for c in &comps {
            check_len(&grid, c.len())?;
        }
        Ok(Self { grid, comps, real_valued })
    }

    pub fn from_scalars(u: [&ScalarField; 3], b: &ScalarField) -> Result<Self> {
        let grid = b.grid;
        if u.iter().any(|s| s.grid != grid) {
            return Err(Error::GridMismatch);
        }
        let real = u.iter().all(|s| s.real_valued) && b.real_valued;
        Ok(Self {
            grid,
            comps: [u[0].coeffs.clone(), u[1].coeffs.clone(), u[2].coeffs.clone(), b.coeffs.clone()],
            real_valued: real,
        })
    }

    pub fn component(&self, k: usize) -> ScalarField {
        ScalarField { grid: self.grid, coeffs: self.comps[k].clone(), real_valued: self.real_valued }
    }

    pub fn mode(&self, flat: usize) -> [Complex64; 4] {
        [self.comps[0][flat], self.comps[1][flat], self.comps[2][flat], self.comps[3][flat]]
    }

    pub fn set_mode(&mut self, flat: usize, v: [Complex64; 4]) {
        for k in 0..4 {
            self.comps[k][flat] = v[k];
        }
    }

    /// Euclidean magnitude of the coefficient 4-vector at every mode.
    pub fn magnitudes(&self) -> Vec<f64> {
        (0..self.grid.len())
            .map(|f| self.comps.iter().map(|c| c[f].norm_sqr()).sum::<f64>().sqrt())
            .collect()
    }

    pub fn dealias(&self) -> Self {
        let mut out = self.clone();
        out.dealias_in_place();
        out
    }

    pub fn dealias_in_place(&mut self) {
        for f in 0..self.grid.len() {
            if !self.grid.in_dealias_mask(f) {
                for c in self.comps.iter_mut() {
                    c[f] = ZERO;
                }
            }
        }
    }

    pub fn scaled(&self, a: f64) -> Self {
        let mut out = self.clone();
        for c in out.comps.iter_mut() {
            c.iter_mut().for_each(|z| *z *= a);
        }
        out
    }

    /// `self + a * other`
    pub fn axpy(&self, a: f64, other: &Self) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let mut out = self.clone();
        for (c, o) in out.comps.iter_mut().zip(&other.comps) {
            c.iter_mut().zip(o).for_each(|(x, y)| *x += a * y);
        }
        out.real_valued = self.real_valued && other.real_valued;
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(1.0, other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(-1.0, other)
    }

    pub fn max_abs(&self) -> f64 {
        self.magnitudes().into_iter().fold(0.0, f64::max)
    }

    /// `(sum |c|^2)^(1/2)` over all modes and components.
    pub fn coeff_l2(&self) -> f64 {
        self.comps.iter().flat_map(|c| c.iter()).map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Physical `H^sigma` norm, `(L^3 sum (1 + |xi|^2)^sigma |c|^2)^(1/2)`.
    /// `sigma = 0` is the physical L^2 norm by Parseval.
    pub fn sobolev_norm(&self, sigma: f64) -> f64 {
        let vol = self.grid.box_length().powi(3);
        let mut acc = 0.0;
        for f in 0..self.grid.len() {
            let k = self.grid.wavenumber_magnitude(f);
            let w = (1.0 + k * k).powf(sigma);
            acc += w * self.comps.iter().map(|c| c[f].norm_sqr()).sum::<f64>();
        }
        (vol * acc).sqrt()
    }

    /// `max |xi . (c1, c2, c3)| / max(1, max |xi| |c|)`.
    pub fn divergence_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for f in 0..self.grid.len() {
            let xi = self.grid.wavevector(f);
            let d = xi[0] * self.comps[0][f] + xi[1] * self.comps[1][f] + xi[2] * self.comps[2][f];
            worst = worst.max(d.norm());
            let kmag = (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt();
            let m = self.comps.iter().map(|c| c[f].norm_sqr()).sum::<f64>().sqrt();
            scale = scale.max(kmag * m);
        }
        worst / scale.max(1.0)
    }

    pub fn conjugate_symmetry_defect(&self) -> f64 {
        self.comps.iter().map(|c| conj_defect(&self.grid, c)).fold(0.0, f64::max)
    }

    /// Apply the Leray projection to the velocity part of every mode. The
    /// zero mode and the fourth component are left untouched.
    pub fn project_divergence_free(&mut self) {
        for f in 1..self.grid.len() {
            let xi = self.grid.wavevector(f);
            let k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
            let d = (xi[0] * self.comps[0][f] + xi[1] * self.comps[1][f] + xi[2] * self.comps[2][f]) / k2;
            for a in 0..3 {
                let v = self.comps[a][f] - xi[a] * d;
                self.comps[a][f] = v;
            }
        }
    }
}

/// Physical samples -> spectral coefficients.
pub fn forward_transform(grid: &GridSpec, samples: &Samples4) -> Result<SpectralField4> {
    let mut real = true;
    let mut comps: [Vec<Complex64>; 4] = Default::default();
    for (k, s) in samples.iter().enumerate() {
        let sf = ScalarField::from_physical(*grid, s)?;
        real &= sf.real_valued;
        comps[k] = sf.coeffs;
    }
    Ok(SpectralField4 { grid: *grid, comps, real_valued: real })
}

/// Spectral coefficients -> physical samples.
pub fn inverse_transform(field: &SpectralField4) -> Samples4 {
    let n = field.grid.n_per_axis();
    let mut out: Samples4 = field.comps.clone();
    for c in out.iter_mut() {
        fft::inverse(c, n);
    }
    out
}

pub fn dealias(field: &SpectralField4) -> SpectralField4 {
    field.dealias()
}
