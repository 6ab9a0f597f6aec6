//! Bony decomposition `fg = T_f(g) + T_g(f) + R(f, g)` on the lattice.
//!
//! Blocks are the extended list of [`LPPartition::extended_blocks`]: the
//! zero-mode residual first, then `Delta_j` for the resolved range. With
//! `b_i` denoting the `i`-th extended block,
//! `T_f(g) = sum_k S_{k-1} f . b_k g` with `S_{k-1} f = sum_{i <= k-2} b_i f`
//! and `R(f, g) = sum_{|i-k| <= 1} b_i f . b_k g`, so the three parts
//! account for every pair `(i, k)` exactly once.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fft;
use crate::field::ScalarField;
use crate::function_spaces::LPPartition;

#[derive(Debug, Clone)]
pub struct BonyTriple {
    pub t_fg: ScalarField,
    pub t_gf: ScalarField,
    pub remainder: ScalarField,
}

impl BonyTriple {
    pub fn sum(&self) -> ScalarField {
        let mut out = self.t_fg.clone();
        for (o, (a, b)) in out.coeffs.iter_mut().zip(self.t_gf.coeffs.iter().zip(&self.remainder.coeffs)) {
            *o += a + b;
        }
        out
    }

    /// `||T_f g + T_g f + R - dealias(fg)|| / ||dealias(fg)||` in coefficient l2.
    pub fn reconstruction_error(&self, f: &ScalarField, g: &ScalarField) -> Result<f64> {
        let direct = f.product(g)?;
        let diff = self.sum().sub(&direct)?;
        let scale = direct.l2();
        Ok(if scale == 0.0 { diff.l2() } else { diff.l2() / scale })
    }
}

fn physical_blocks(partition: &LPPartition, coeffs: &[Complex64]) -> Vec<Vec<Complex64>> {
    let n = partition.grid.n_per_axis();
    let mut blocks = partition.extended_blocks(coeffs);
    for b in blocks.iter_mut() {
        fft::inverse(b, n);
    }
    blocks
}

fn to_spectral(partition: &LPPartition, mut phys: Vec<Complex64>, real: bool) -> Result<ScalarField> {
    let grid = partition.grid;
    fft::forward(&mut phys, grid.n_per_axis());
    let scale = 1.0 / grid.len() as f64;
    phys.iter_mut().for_each(|c| *c *= scale);
    let mut out = ScalarField::from_coeffs(grid, phys, real)?;
    out.dealias_in_place();
    Ok(out)
}

fn paraproduct_phys(low: &[Vec<Complex64>], high: &[Vec<Complex64>]) -> Vec<Complex64> {
    let len = low[0].len();
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    let mut partial = vec![Complex64::new(0.0, 0.0); len];
    for k in 2..high.len() {
        // partial = sum_{i <= k-2} low_i
        for (p, x) in partial.iter_mut().zip(&low[k - 2]) {
            *p += x;
        }
        for ((o, p), h) in out.iter_mut().zip(&partial).zip(&high[k]) {
            *o += p * h;
        }
    }
    out
}

pub fn bony_decompose(f: &ScalarField, g: &ScalarField, partition: &LPPartition) -> Result<BonyTriple> {
    if f.grid != g.grid || f.grid != partition.grid {
        return Err(Error::GridMismatch);
    }
    let real = f.real_valued && g.real_valued;
    let fb = physical_blocks(partition, &f.coeffs);
    let gb = physical_blocks(partition, &g.coeffs);
    let t_fg = paraproduct_phys(&fb, &gb);
    let t_gf = paraproduct_phys(&gb, &fb);
    let len = f.grid.len();
    let mut rem = vec![Complex64::new(0.0, 0.0); len];
    let m = fb.len();
    for i in 0..m {
        for k in i.saturating_sub(1)..(i + 2).min(m) {
            for ((r, a), b) in rem.iter_mut().zip(&fb[i]).zip(&gb[k]) {
                *r += a * b;
            }
        }
    }
    Ok(BonyTriple {
        t_fg: to_spectral(partition, t_fg, real)?,
        t_gf: to_spectral(partition, t_gf, real)?,
        remainder: to_spectral(partition, rem, real)?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityReport {
    /// `max |Delta_j Delta_k f|` over `|j - k| >= 2`.
    pub block_overlap: f64,
    /// `max |Delta_j [S_{k-1} f Delta_k g]|` over `|j - k| >= 5`.
    pub paraproduct_leakage: f64,
    /// Leakage relative to the largest paraproduct coefficient.
    pub relative_leakage: f64,
    pub overlap_pairs: usize,
    pub leakage_pairs: usize,
}

pub fn block_orthogonality_check(f: &ScalarField, g: &ScalarField, partition: &LPPartition) -> Result<OrthogonalityReport> {
    if f.grid != g.grid || f.grid != partition.grid {
        return Err(Error::GridMismatch);
    }
    let grid = partition.grid;
    let js: Vec<i32> = (partition.j_min..=partition.j_max).collect();
    let mut block_overlap: f64 = 0.0;
    let mut overlap_pairs = 0;
    for &j in &js {
        for &k in js.iter().filter(|&&k| (k - j).abs() >= 2) {
            let dd = partition.apply_block(j, &partition.apply_block(k, &f.coeffs));
            block_overlap = dd.iter().map(|c| c.norm()).fold(block_overlap, f64::max);
            overlap_pairs += 1;
        }
    }

    // extended index i >= 1 is block j = j_min + i - 1; index 0 is the zero mode
    let fb = partition.extended_blocks(&f.coeffs);
    let mut leakage: f64 = 0.0;
    let mut scale: f64 = 0.0;
    let mut leakage_pairs = 0;
    let mut low = vec![Complex64::new(0.0, 0.0); grid.len()];
    for (idx, &k) in js.iter().enumerate() {
        let ext = idx + 1;
        if ext >= 2 {
            for (l, x) in low.iter_mut().zip(&fb[ext - 2]) {
                *l += x;
            }
        }
        let targets: Vec<i32> = js.iter().copied().filter(|j| (j - k).abs() >= 5).collect();
        if targets.is_empty() {
            continue;
        }
        let s = ScalarField::from_coeffs(grid, low.clone(), f.real_valued)?;
        let d = ScalarField::from_coeffs(grid, partition.apply_block(k, &g.coeffs), g.real_valued)?;
        let prod = s.product(&d)?;
        scale = scale.max(prod.max_abs());
        for j in targets {
            let leak = partition.apply_block(j, &prod.coeffs);
            leakage = leak.iter().map(|c| c.norm()).fold(leakage, f64::max);
            leakage_pairs += 1;
        }
    }
    Ok(OrthogonalityReport {
        block_overlap,
        paraproduct_leakage: leakage,
        relative_leakage: if scale > 0.0 { leakage / scale } else { 0.0 },
        overlap_pairs,
        leakage_pairs,
    })
}
