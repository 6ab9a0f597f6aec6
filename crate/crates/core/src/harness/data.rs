//! Seeded random test data.
//!
//! Coefficients are drawn per signed wavenumber in a fixed canonical order
//! over the cube of the band, so the same seed and band give identical data
//! on every grid that resolves the band.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ScalarField, SpectralField4};
use crate::grid::GridSpec;
use crate::solver::Trajectory;
use crate::symbols::PhysParams;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of the `k`-th member of an ensemble.
pub fn member_seed(seed: u64, k: u64) -> u64 {
    seed ^ k.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Signed wavenumbers with `0 < |xi| <= band`, in lexicographic order, with
/// only one representative of each `+-m` pair (the lexicographically
/// positive one).
fn band_modes(k0: f64, band: f64) -> Vec<[i64; 3]> {
    let m = (band / k0).floor() as i64;
    let mut out = Vec::new();
    for a in -m..=m {
        for b in -m..=m {
            for c in -m..=m {
                let idx = [a, b, c];
                if idx <= [0, 0, 0] {
                    continue;
                }
                let mag = k0 * ((a * a + b * b + c * c) as f64).sqrt();
                if mag <= band {
                    out.push(idx);
                }
            }
        }
    }
    out
}

fn check_band(grid: &GridSpec, band: f64) -> Result<()> {
    let k0 = grid.fundamental_wavenumber();
    if !(band >= k0) {
        return Err(Error::InvalidParameter(format!("band {band} is below the fundamental wavenumber {k0}")));
    }
    if band > k0 * grid.dealias_cutoff() as f64 {
        return Err(Error::InvalidParameter(format!("band {band} exceeds the dealiasing cutoff of this grid")));
    }
    Ok(())
}

/// Real, divergence-free random field with unit-variance complex Gaussian
/// coefficients on `0 < |xi| <= band`.
pub fn random_band_limited(grid: &GridSpec, band: f64, seed: u64) -> Result<SpectralField4> {
    check_band(grid, band)?;
    let mut rng = rng(seed);
    let mut field = SpectralField4::zeros(*grid);
    for m in band_modes(grid.fundamental_wavenumber(), band) {
        let v = [gaussian(&mut rng), gaussian(&mut rng), gaussian(&mut rng), gaussian(&mut rng)];
        let f = grid.flat_of_signed(m);
        let g = grid.flat_of_signed([-m[0], -m[1], -m[2]]);
        field.set_mode(f, v);
        field.set_mode(g, v.map(|z| z.conj()));
    }
    field.real_valued = true;
    field.project_divergence_free();
    Ok(field)
}

/// Real random scalar field on `0 < |xi| <= band`.
pub fn random_scalar(grid: &GridSpec, band: f64, seed: u64) -> Result<ScalarField> {
    check_band(grid, band)?;
    let mut rng = rng(seed);
    let mut field = ScalarField::zeros(*grid);
    for m in band_modes(grid.fundamental_wavenumber(), band) {
        let z = gaussian(&mut rng);
        field.coeffs[grid.flat_of_signed(m)] = z;
        field.coeffs[grid.flat_of_signed([-m[0], -m[1], -m[2]])] = z.conj();
    }
    field.real_valued = true;
    Ok(field)
}

/// Random scalar field supported where the LP weight of block `j` is nonzero.
pub fn random_scalar_in_shell(grid: &GridSpec, lo: f64, hi: f64, seed: u64) -> Result<ScalarField> {
    let mut f = random_scalar(grid, hi, seed)?;
    for (i, c) in f.coeffs.iter_mut().enumerate() {
        if grid.wavenumber_magnitude(i) < lo {
            *c = Complex64::new(0.0, 0.0);
        }
    }
    Ok(f)
}

/// How a trajectory's time dependence is built from two random fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeProfile {
    Constant,
    /// `cos(t) a + sin(2t) b`.
    #[default]
    Oscillating,
}

/// Random forcing or test trajectory sampled on `times`.
pub fn random_trajectory(
    grid: &GridSpec,
    band: f64,
    seed: u64,
    times: &[f64],
    profile: TimeProfile,
    params: PhysParams,
) -> Result<Trajectory> {
    let a = random_band_limited(grid, band, member_seed(seed, 0))?;
    let b = random_band_limited(grid, band, member_seed(seed, 1))?;
    let fields = times
        .iter()
        .map(|&t| match profile {
            TimeProfile::Constant => Ok(a.clone()),
            TimeProfile::Oscillating => a.scaled(t.cos()).axpy((2.0 * t).sin(), &b),
        })
        .collect::<Result<Vec<_>>>()?;
    Trajectory::new(times.to_vec(), fields, params)
}

/// Divergence-free real field `profile(|xi|) P(xi) e` on the dealiased
/// lattice, with `e = (1, 1, 1, 1)/2`. The coefficients are scaled by the
/// frequency cell volume so that lattice norms approximate the continuum
/// norms of `profile`.
pub fn continuum_field(grid: &GridSpec, profile: impl Fn(f64) -> f64) -> Result<SpectralField4> {
    let cell = grid.frequency_cell_volume();
    let e = [Complex64::new(0.5, 0.0); 4];
    let mut field = SpectralField4::zeros(*grid);
    for f in 1..grid.len() {
        if !grid.in_dealias_mask(f) {
            continue;
        }
        let w = profile(grid.wavenumber_magnitude(f));
        if w == 0.0 {
            continue;
        }
        let p = crate::symbols::helmholtz_symbol(&grid.wavevector(f))?;
        field.set_mode(f, p.apply(&e.map(|z| z * (w * cell))));
    }
    field.real_valued = true;
    Ok(field)
}

/// Samples of `f` on the lattice `k0 Z^3` inside `|xi| <= radius`, skipping zeros.
pub fn lattice_samples(k0: f64, radius: f64, f: impl Fn([f64; 3]) -> f64) -> Vec<([i64; 3], f64)> {
    let m = (radius / k0).floor() as i64;
    let mut out = Vec::new();
    for a in -m..=m {
        for b in -m..=m {
            for c in -m..=m {
                let xi = [a as f64 * k0, b as f64 * k0, c as f64 * k0];
                if xi.iter().map(|x| x * x).sum::<f64>().sqrt() > radius {
                    continue;
                }
                let v = f(xi);
                if v != 0.0 {
                    out.push(([a, b, c], v));
                }
            }
        }
    }
    out
}
