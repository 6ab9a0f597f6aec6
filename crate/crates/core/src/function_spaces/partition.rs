//! Dyadic Littlewood-Paley partition sampled on the frequency lattice.
//!
//! `phi(xi) = chi(|xi|/2) - chi(|xi|)` where `chi` is a smooth nonincreasing
//! step from 1 (at `t <= 3/4`) to 0 (at `t >= 4/3`). Then `phi` is supported
//! in the annulus `3/4 <= |xi| <= 8/3` and the dyadic sum telescopes:
//! `sum_{j=a..=b} phi(2^-j xi) = chi(2^-(b+1)|xi|) - chi(2^-a |xi|)`, which is
//! exactly 1 once the range brackets `|xi|`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::GridSpec;

const INNER: f64 = 0.75;
const OUTER_HALF: f64 = 4.0 / 3.0;

fn psi(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else {
        (-1.0 / u).exp()
    }
}

/// Smooth cutoff: 1 on `[0, 3/4]`, 0 on `[4/3, inf)`.
pub fn chi(t: f64) -> f64 {
    if t <= INNER {
        return 1.0;
    }
    if t >= OUTER_HALF {
        return 0.0;
    }
    let u = (t - INNER) / (OUTER_HALF - INNER);
    let a = psi(u);
    let b = psi(1.0 - u);
    b / (a + b)
}

/// Radial profile of the dyadic bump at `|xi| = t`.
pub fn phi(t: f64) -> f64 {
    (chi(0.5 * t) - chi(t)).max(0.0)
}

/// `phi_j(xi) = phi(2^-j |xi|)`.
pub fn phi_j(j: i32, magnitude: f64) -> f64 {
    phi(magnitude * 2f64.powi(-j))
}

/// Lattice samples of one block: nonzero `(flat index, weight)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub j: i32,
    pub entries: Vec<(usize, f64)>,
}

#[derive(Debug, Clone)]
pub struct LPPartition {
    pub grid: GridSpec,
    pub j_min: i32,
    pub j_max: i32,
    pub blocks: Vec<Block>,
}

/// Dyadic range whose blocks sum to one on every nonzero lattice mode.
pub fn resolved_range(grid: &GridSpec) -> (i32, i32) {
    let k0 = grid.fundamental_wavenumber();
    let kmax = grid.max_wavenumber();
    let j_min = (INNER * k0).log2().floor() as i32;
    let j_max = (kmax / (2.0 * INNER)).log2().ceil() as i32;
    (j_min, j_max)
}

pub fn build_lp_partition(grid: &GridSpec) -> Result<LPPartition> {
    let (j_min, j_max) = resolved_range(grid);
    if j_max - j_min + 1 < 3 {
        return Err(Error::InvalidGrid(format!(
            "only {} dyadic shells resolved, need at least 3",
            j_max - j_min + 1
        )));
    }
    let mags: Vec<f64> = (0..grid.len()).map(|f| grid.wavenumber_magnitude(f)).collect();
    let blocks = (j_min..=j_max)
        .map(|j| {
            let entries = mags
                .iter()
                .enumerate()
                .filter(|(f, _)| *f != 0)
                .filter_map(|(f, &k)| {
                    let w = phi_j(j, k);
                    (w > 0.0).then_some((f, w))
                })
                .collect();
            Block { j, entries }
        })
        .collect();
    Ok(LPPartition { grid: *grid, j_min, j_max, blocks })
}

impl LPPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block(&self, j: i32) -> Option<&Block> {
        if j < self.j_min || j > self.j_max {
            return None;
        }
        Some(&self.blocks[(j - self.j_min) as usize])
    }

    /// `Delta_j` applied to a coefficient array.
    pub fn apply_block(&self, j: i32, coeffs: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); coeffs.len()];
        if let Some(b) = self.block(j) {
            for &(f, w) in &b.entries {
                out[f] = coeffs[f] * w;
            }
        }
        out
    }

    /// Dense `phi_j` samples in flat order.
    pub fn dense_block(&self, j: i32) -> Vec<f64> {
        let mut out = vec![0.0; self.grid.len()];
        if let Some(b) = self.block(j) {
            for &(f, w) in &b.entries {
                out[f] = w;
            }
        }
        out
    }

    /// Blocks whose weight at `flat` is nonzero.
    pub fn blocks_at(&self, flat: usize) -> Vec<i32> {
        let k = self.grid.wavenumber_magnitude(flat);
        if flat == 0 {
            return Vec::new();
        }
        (self.j_min..=self.j_max).filter(|&j| phi_j(j, k) > 0.0).collect()
    }

    /// `max |1 - sum_j phi_j|` over nonzero lattice modes.
    pub fn unity_residual(&self) -> f64 {
        let mut sum = vec![0.0; self.grid.len()];
        for b in &self.blocks {
            for &(f, w) in &b.entries {
                sum[f] += w;
            }
        }
        sum.iter().skip(1).map(|s| (1.0 - s).abs()).fold(0.0, f64::max)
    }

    /// `max |phi_j phi_k|` over pairs with `|j - k| >= 2`.
    pub fn disjointness_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in &self.blocks {
            let da = self.dense_block(a.j);
            for b in self.blocks.iter().filter(|b| (b.j - a.j).abs() >= 2) {
                for &(f, w) in &b.entries {
                    worst = worst.max((da[f] * w).abs());
                }
            }
        }
        worst
    }

    /// Extended blocks: index 0 is the residual `f - sum_j Delta_j f`
    /// (the zero mode for exact partitions), followed by `Delta_j f` for
    /// `j = j_min..=j_max`.
    pub fn extended_blocks(&self, coeffs: &[Complex64]) -> Vec<Vec<Complex64>> {
        let mut out = Vec::with_capacity(self.blocks.len() + 1);
        let mut rest = coeffs.to_vec();
        let mut parts = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let d = self.apply_block(b.j, coeffs);
            for (r, x) in rest.iter_mut().zip(&d) {
                *r -= x;
            }
            parts.push(d);
        }
        out.push(rest);
        out.extend(parts);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn bump_support_and_range() {
        assert_eq!(phi(0.74), 0.0);
        assert_eq!(phi(2.7), 0.0);
        assert!(phi(1.5) > 0.9);
        for i in 0..2000 {
            let t = i as f64 * 0.002;
            let p = phi(t);
            assert!((0.0..=1.0).contains(&p));
            if p > 0.0 {
                assert!((0.75..=8.0 / 3.0).contains(&t));
            }
        }
    }

    #[test]
    fn continuum_sum_is_one() {
        for i in 1..5000 {
            let t = i as f64 * 0.01;
            let s: f64 = (-8..=8).map(|j| phi_j(j, t)).sum();
            assert!((s - 1.0).abs() < 1e-14, "t={t} s={s}");
        }
    }

    #[test]
    fn partition_on_lattice() {
        for (n, l) in [(8usize, 2.0 * PI), (16, 2.0 * PI), (16, 1.0), (32, 7.0)] {
            let g = GridSpec::new(n, l).unwrap();
            let p = build_lp_partition(&g).unwrap();
            assert!(p.len() >= 3);
            assert!(p.unity_residual() <= 1e-12);
            assert_eq!(p.disjointness_defect(), 0.0);
        }
    }

    #[test]
    fn unit_plane_wave_blocks() {
        let g = GridSpec::new(16, 2.0 * PI).unwrap();
        let p = build_lp_partition(&g).unwrap();
        let f = g.flat_of_signed([1, 0, 0]);
        let js = p.blocks_at(f);
        assert!(js.iter().all(|j| (-2..=1).contains(j)));
        // annulus membership: |xi| = 1 lies in 2^j [3/4, 8/3] for j in {-1, 0}
        assert_eq!(js, vec![-1, 0]);
    }

    #[test]
    fn extended_blocks_reconstruct() {
        let g = GridSpec::new(8, 2.0 * PI).unwrap();
        let p = build_lp_partition(&g).unwrap();
        let c: Vec<Complex64> = (0..g.len()).map(|f| Complex64::new((f as f64).sin(), (f as f64 * 0.3).cos())).collect();
        let parts = p.extended_blocks(&c);
        for f in 0..g.len() {
            let s: Complex64 = parts.iter().map(|b| b[f]).sum();
            assert!((s - c[f]).norm() < 1e-15);
        }
        assert!(parts[0].iter().skip(1).all(|z| z.norm() < 1e-12));
    }
}
