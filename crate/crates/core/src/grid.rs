//! Periodic box discretization and wavenumber bookkeeping.
//!
//! Lattice points are stored row-major with axis 1 slowest:
//! `flat = (i1 * n + i2) * n + i3`. The same flat index addresses the
//! physical sample at `x = (i1, i2, i3) * spacing` and the Fourier
//! coefficient at `xi = fundamental * (m1, m2, m3)` where `m` is the signed
//! index of `i` (indices `>= n/2` wrap to negative values, so the Nyquist
//! index is `-n/2`).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    n: usize,
    box_length: f64,
}

impl GridSpec {
    pub fn new(n_per_axis: usize, box_length: f64) -> Result<Self> {
        if n_per_axis < 4 {
            return Err(Error::InvalidGrid(format!(
                "n_per_axis must be at least 4, got {n_per_axis}"
            )));
        }
        if !(box_length.is_finite() && box_length > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "box_length must be positive and finite, got {box_length}"
            )));
        }
        Ok(Self { n: n_per_axis, box_length })
    }

    pub fn n_per_axis(&self) -> usize {
        self.n
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    /// Number of lattice points, `n^3`.
    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.box_length / self.n as f64
    }

    pub fn fundamental_wavenumber(&self) -> f64 {
        2.0 * PI / self.box_length
    }

    /// Volume of one frequency-lattice cell, `fundamental^3`.
    pub fn frequency_cell_volume(&self) -> f64 {
        self.fundamental_wavenumber().powi(3)
    }

    /// Largest resolved wavenumber magnitude, attained at the Nyquist corner.
    pub fn max_wavenumber(&self) -> f64 {
        3f64.sqrt() * PI * self.n as f64 / self.box_length
    }

    /// Largest retained |component index| under the 2/3 rule.
    pub fn dealias_cutoff(&self) -> i64 {
        ((self.n - 1) / 3) as i64
    }

    pub fn signed_index(&self, i: usize) -> i64 {
        if i < self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// Inverse of [`signed_index`](Self::signed_index), wrapping modulo `n`.
    pub fn wrap_index(&self, m: i64) -> usize {
        m.rem_euclid(self.n as i64) as usize
    }

    pub fn flat(&self, i: [usize; 3]) -> usize {
        (i[0] * self.n + i[1]) * self.n + i[2]
    }

    pub fn unflat(&self, flat: usize) -> [usize; 3] {
        let n = self.n;
        [flat / (n * n), (flat / n) % n, flat % n]
    }

    pub fn signed_triple(&self, flat: usize) -> [i64; 3] {
        let i = self.unflat(flat);
        [self.signed_index(i[0]), self.signed_index(i[1]), self.signed_index(i[2])]
    }

    /// Flat index of the lattice mode with signed indices `m` (wrapped).
    pub fn flat_of_signed(&self, m: [i64; 3]) -> usize {
        self.flat([self.wrap_index(m[0]), self.wrap_index(m[1]), self.wrap_index(m[2])])
    }

    pub fn wavevector(&self, flat: usize) -> [f64; 3] {
        let k0 = self.fundamental_wavenumber();
        let m = self.signed_triple(flat);
        [k0 * m[0] as f64, k0 * m[1] as f64, k0 * m[2] as f64]
    }

    /// All lattice wavevectors in flat order.
    pub fn wavevectors(&self) -> Vec<[f64; 3]> {
        (0..self.len()).map(|f| self.wavevector(f)).collect()
    }

    pub fn wavenumber_magnitude(&self, flat: usize) -> f64 {
        let k = self.wavevector(flat);
        (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt()
    }

    pub fn in_dealias_mask(&self, flat: usize) -> bool {
        let c = self.dealias_cutoff();
        self.signed_triple(flat).iter().all(|m| m.abs() <= c)
    }

    /// Flat index of `-xi` for the mode at `flat`.
    pub fn conjugate_partner(&self, flat: usize) -> usize {
        let m = self.signed_triple(flat);
        self.flat_of_signed([-m[0], -m[1], -m[2]])
    }

    pub fn position(&self, flat: usize) -> [f64; 3] {
        let h = self.spacing();
        let i = self.unflat(flat);
        [h * i[0] as f64, h * i[1] as f64, h * i[2] as f64]
    }
}

/// Validating constructor.
pub fn make_grid(n_per_axis: usize, box_length: f64) -> Result<GridSpec> {
    GridSpec::new(n_per_axis, box_length)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_sizes() {
        let g = make_grid(8, 2.0 * PI).unwrap();
        assert_eq!(g.len(), 512);
        assert!((g.fundamental_wavenumber() - 1.0).abs() < 1e-15);
        let g = make_grid(4, 1.0).unwrap();
        assert!((g.fundamental_wavenumber() - 2.0 * PI).abs() < 1e-15);
        assert!(make_grid(3, 2.0 * PI).is_err());
        assert!(make_grid(8, 0.0).is_err());
        assert!(make_grid(8, -1.0).is_err());
    }

    #[test]
    fn wavenumber_span() {
        let g = make_grid(16, 3.0).unwrap();
        assert_eq!(g.wavevector(0), [0.0, 0.0, 0.0]);
        let mags: Vec<f64> = (1..g.len()).map(|f| g.wavenumber_magnitude(f)).collect();
        let lo = mags.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = mags.iter().cloned().fold(0.0, f64::max);
        assert!((lo - g.fundamental_wavenumber()).abs() < 1e-12);
        assert!((hi - g.max_wavenumber()).abs() < 1e-12);
    }

    #[test]
    fn dealias_mask_counts() {
        for n in [8usize, 16, 32] {
            let g = make_grid(n, 1.0).unwrap();
            let kept = (0..g.len()).filter(|&f| g.in_dealias_mask(f)).count();
            let side = 2 * (n / 3) + 1;
            assert_eq!(kept, side * side * side);
        }
    }

    #[test]
    fn index_round_trip() {
        let g = make_grid(8, 1.0).unwrap();
        for f in 0..g.len() {
            assert_eq!(g.flat_of_signed(g.signed_triple(f)), f);
            let p = g.conjugate_partner(f);
            assert_eq!(g.conjugate_partner(p), f);
        }
    }
}
