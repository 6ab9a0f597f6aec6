//! Discrete homogeneous Morrey norms on the frequency lattice.
//!
//! Lattice samples are treated as a density: a coefficient `c(xi)` of the
//! periodic field stands for `f^(xi) = c(xi) / k0^3` spread over its cell of
//! volume `k0^3`, so `||f^||_{L^q(B)} = (sum_{xi in B} |c/k0^3|^q k0^3)^(1/q)`.
//! The sup runs over lattice centers and open balls of radius `d = 2^m k0`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft;
use crate::grid::GridSpec;

pub fn validate_indices(q: f64, mu: f64) -> Result<()> {
    if !(q >= 1.0 && q.is_finite()) {
        return Err(Error::Inadmissible(format!("Morrey integrability q must satisfy 1 <= q < inf, got {q}")));
    }
    if !(0.0..3.0).contains(&mu) {
        return Err(Error::Inadmissible(format!("Morrey weight mu must satisfy 0 <= mu < 3, got {mu}")));
    }
    Ok(())
}

/// A nonzero sample: signed lattice index and density magnitude.
pub type Point = ([i64; 3], f64);

/// Morrey norm of a point cloud of density magnitudes on the lattice
/// `k0 * Z^3`, with radii `2^m k0` for `m = 0..=max_exp`. Indices must be
/// distinct.
pub fn morrey_points(points: &[Point], q: f64, mu: f64, k0: f64, max_exp: u32) -> Result<f64> {
    validate_indices(q, mu)?;
    let cell = k0 * k0 * k0;
    let pts: Vec<([i64; 3], f64)> = points.iter().filter(|p| p.1 > 0.0).map(|&(i, a)| (i, a.powf(q) * cell)).collect();
    if pts.is_empty() {
        return Ok(0.0);
    }
    if mu == 0.0 {
        return Ok(pts.iter().map(|p| p.1).sum::<f64>().powf(1.0 / q));
    }
    let reach = pts
        .iter()
        .map(|(i, _)| ((i[0] * i[0] + i[1] * i[1] + i[2] * i[2]) as f64).sqrt())
        .fold(0.0, f64::max);
    let mut best: f64 = 0.0;
    for m in 0..=max_exp {
        let r = 1i64 << m;
        let mass = max_ball_mass(&pts, r);
        let d = r as f64 * k0;
        best = best.max(d.powf(-mu / q) * mass.powf(1.0 / q));
        // the ball at the origin already holds everything; larger radii only lose weight
        if r as f64 > reach {
            break;
        }
    }
    Ok(best)
}

/// Coefficient array on a grid (flat order) -> Morrey norm of the density.
pub fn morrey_norm(block_values: &[Complex64], q: f64, mu: f64, grid: &GridSpec) -> Result<f64> {
    let mags: Vec<f64> = block_values.iter().map(|c| c.norm()).collect();
    morrey_norm_magnitudes(&mags, q, mu, grid)
}

/// As [`morrey_norm`] but from precomputed coefficient magnitudes (e.g. the
/// Euclidean norm of a 4-vector field).
pub fn morrey_norm_magnitudes(mags: &[f64], q: f64, mu: f64, grid: &GridSpec) -> Result<f64> {
    if mags.len() != grid.len() {
        return Err(Error::ShapeMismatch { expected: grid.len(), got: mags.len() });
    }
    let inv_cell = 1.0 / grid.frequency_cell_volume();
    let pts: Vec<Point> = mags
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0.0)
        .map(|(f, &a)| (grid.signed_triple(f), a * inv_cell))
        .collect();
    morrey_points(&pts, q, mu, grid.fundamental_wavenumber(), radius_exponent(grid))
}

/// `log2(n)` rounded up.
pub fn radius_exponent(grid: &GridSpec) -> u32 {
    (grid.n_per_axis() as f64).log2().ceil() as u32
}

fn ball_offsets(r: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for a in -(r - 1)..r {
        for b in -(r - 1)..r {
            for c in -(r - 1)..r {
                if a * a + b * b + c * c < r * r {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

fn nice_size(min: usize) -> usize {
    let mut n = min.max(2);
    loop {
        let mut m = n;
        for p in [2, 3, 5] {
            while m % p == 0 {
                m /= p;
            }
        }
        if m == 1 {
            return n;
        }
        n += 1;
    }
}

/// `max_c sum_{|p - c| < r} w_p` over lattice centers `c`.
fn max_ball_mass(pts: &[([i64; 3], f64)], r: i64) -> f64 {
    if r == 1 {
        return pts.iter().map(|p| p.1).fold(0.0, f64::max);
    }
    let mut lo = [i64::MAX; 3];
    let mut hi = [i64::MIN; 3];
    for (i, _) in pts {
        for a in 0..3 {
            lo[a] = lo[a].min(i[a]);
            hi[a] = hi[a].max(i[a]);
        }
    }
    let extent = (0..3).map(|a| (hi[a] - lo[a] + 1) as usize).max().unwrap();
    let offsets = ball_offsets(r);
    let span = extent + 2 * (r as usize) - 2;
    let fft_len = nice_size(span);
    let direct_cost = pts.len() * offsets.len();
    let fft_cost = 8 * fft_len * fft_len * fft_len;
    if direct_cost <= fft_cost {
        scatter_max(pts, &offsets, lo, span, r)
    } else {
        fft_max(pts, lo, extent, r, fft_len)
    }
}

fn scatter_max(pts: &[([i64; 3], f64)], offsets: &[[i64; 3]], lo: [i64; 3], span: usize, r: i64) -> f64 {
    // centers c = lo - (r - 1) + idx for idx in 0..span per axis
    let mut acc = vec![0.0f64; span * span * span];
    let base = [lo[0] - (r - 1), lo[1] - (r - 1), lo[2] - (r - 1)];
    for (p, w) in pts {
        for o in offsets {
            let c = [
                (p[0] + o[0] - base[0]) as usize,
                (p[1] + o[1] - base[1]) as usize,
                (p[2] + o[2] - base[2]) as usize,
            ];
            acc[(c[0] * span + c[1]) * span + c[2]] += w;
        }
    }
    acc.into_iter().fold(0.0, f64::max)
}

thread_local! {
    static KERNELS: RefCell<HashMap<(usize, i64), Arc<Vec<Complex64>>>> = RefCell::new(HashMap::new());
}

fn ball_kernel(p: usize, r: i64) -> Arc<Vec<Complex64>> {
    KERNELS.with(|k| {
        let mut cache = k.borrow_mut();
        if let Some(v) = cache.get(&(p, r)) {
            return v.clone();
        }
        let mut data = vec![Complex64::new(0.0, 0.0); p * p * p];
        for o in ball_offsets(r) {
            let idx = [(o[0] + r - 1) as usize, (o[1] + r - 1) as usize, (o[2] + r - 1) as usize];
            data[(idx[0] * p + idx[1]) * p + idx[2]] = Complex64::new(1.0, 0.0);
        }
        fft::forward(&mut data, p);
        let v = Arc::new(data);
        if cache.len() > 64 {
            cache.clear();
        }
        cache.insert((p, r), v.clone());
        v
    })
}

fn fft_max(pts: &[([i64; 3], f64)], lo: [i64; 3], extent: usize, r: i64, p: usize) -> f64 {
    let mut data = vec![Complex64::new(0.0, 0.0); p * p * p];
    for (i, w) in pts {
        let idx = [(i[0] - lo[0]) as usize, (i[1] - lo[1]) as usize, (i[2] - lo[2]) as usize];
        data[(idx[0] * p + idx[1]) * p + idx[2]].re += w;
    }
    fft::forward(&mut data, p);
    let kernel = ball_kernel(p, r);
    for (d, k) in data.iter_mut().zip(kernel.iter()) {
        *d *= k;
    }
    fft::inverse(&mut data, p);
    let scale = 1.0 / (p * p * p) as f64;
    let span = extent + 2 * (r as usize) - 2;
    let mut best: f64 = 0.0;
    for a in 0..span {
        for b in 0..span {
            let row = (a * p + b) * p;
            for c in 0..span {
                best = best.max(data[row + c].re * scale);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive sup over every center in a padded box and every radius.
    fn brute(points: &[Point], q: f64, mu: f64, k0: f64, max_exp: u32) -> f64 {
        let cell = k0 * k0 * k0;
        let mut best: f64 = 0.0;
        for m in 0..=max_exp {
            let r = 1i64 << m;
            let pad = r + 1;
            let lo: Vec<i64> = (0..3).map(|a| points.iter().map(|p| p.0[a]).min().unwrap() - pad).collect();
            let hi: Vec<i64> = (0..3).map(|a| points.iter().map(|p| p.0[a]).max().unwrap() + pad).collect();
            for x in lo[0]..=hi[0] {
                for y in lo[1]..=hi[1] {
                    for z in lo[2]..=hi[2] {
                        let s: f64 = points
                            .iter()
                            .filter(|(i, _)| {
                                let d = [i[0] - x, i[1] - y, i[2] - z];
                                d[0] * d[0] + d[1] * d[1] + d[2] * d[2] < r * r
                            })
                            .map(|(_, a)| a.powf(q) * cell)
                            .sum();
                        best = best.max((r as f64 * k0).powf(-mu / q) * s.powf(1.0 / q));
                    }
                }
            }
        }
        best
    }

    fn cloud(seed: u64, count: usize, spread: i64) -> Vec<Point> {
        let mut seen = std::collections::HashSet::new();
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            s >> 33
        };
        (0..count)
            .map(|_| {
                let i = [
                    (next() % (2 * spread as u64 + 1)) as i64 - spread,
                    (next() % (2 * spread as u64 + 1)) as i64 - spread,
                    (next() % (2 * spread as u64 + 1)) as i64 - spread,
                ];
                (i, 0.1 + (next() % 1000) as f64 / 300.0)
            })
            .filter(|(i, _)| seen.insert(*i))
            .collect()
    }

    #[test]
    fn single_sample() {
        let k0 = 0.5;
        let a = 3.0;
        for (q, mu) in [(1.0, 0.0), (2.0, 1.0), (1.5, 2.5)] {
            let v = morrey_points(&[([2, -1, 0], a)], q, mu, k0, 4).unwrap();
            // smallest covering ball (radius k0) maximizes d^(-mu/q)
            let expect = a * (k0 * k0 * k0).powf(1.0 / q) * k0.powf(-mu / q);
            assert!((v - expect).abs() <= 1e-13 * expect);
        }
    }

    #[test]
    fn mu_zero_is_lq() {
        let pts = cloud(3, 40, 4);
        let k0 = 1.3;
        let v = morrey_points(&pts, 2.0, 0.0, k0, 3).unwrap();
        let expect = (pts.iter().map(|p| p.1 * p.1).sum::<f64>() * k0.powi(3)).sqrt();
        assert!((v - expect).abs() <= 1e-12 * expect);
    }

    #[test]
    fn matches_exhaustive_search() {
        for (seed, q, mu) in [(1u64, 1.0, 1.0), (2, 2.0, 2.0), (3, 3.0, 0.5), (4, 1.5, 2.9)] {
            let pts = cloud(seed, 12, 3);
            let fast = morrey_points(&pts, q, mu, 0.7, 3).unwrap();
            let slow = brute(&pts, q, mu, 0.7, 3);
            assert!((fast - slow).abs() <= 1e-12 * slow, "seed {seed}: {fast} vs {slow}");
        }
    }

    #[test]
    fn fft_and_scatter_agree() {
        let pts = cloud(9, 300, 10);
        let weighted: Vec<([i64; 3], f64)> = pts.iter().map(|&(i, a)| (i, a * a)).collect();
        let mut lo = [i64::MAX; 3];
        let mut hi = [i64::MIN; 3];
        for (i, _) in &weighted {
            for a in 0..3 {
                lo[a] = lo[a].min(i[a]);
                hi[a] = hi[a].max(i[a]);
            }
        }
        let extent = (0..3).map(|a| (hi[a] - lo[a] + 1) as usize).max().unwrap();
        for r in [2i64, 4, 8] {
            let span = extent + 2 * r as usize - 2;
            let a = scatter_max(&weighted, &ball_offsets(r), lo, span, r);
            let b = fft_max(&weighted, lo, extent, r, nice_size(span));
            assert!((a - b).abs() <= 1e-10 * a, "r={r}: {a} vs {b}");
        }
    }

    #[test]
    fn rejects_bad_indices() {
        assert!(morrey_points(&[], 0.5, 0.0, 1.0, 2).is_err());
        assert!(morrey_points(&[], 2.0, 3.0, 1.0, 2).is_err());
        assert!(morrey_points(&[], 2.0, -0.1, 1.0, 2).is_err());
        assert_eq!(morrey_points(&[], 2.0, 1.0, 1.0, 2).unwrap(), 0.0);
    }
}
