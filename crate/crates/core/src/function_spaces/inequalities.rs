//! Both sides of the Morrey/FBM inequalities (Hoelder, Young, Bernstein,
//! Sobolev-type embedding) evaluated on lattice data. Each function returns
//! the ratio `lhs / rhs`; the inequality holds with constant `C` when the
//! ratio stays below `C`.

use std::collections::HashMap;

use super::morrey::{morrey_points, Point};
use super::norms::{fbm_norm, NormParams};
use super::partition::LPPartition;
use crate::error::{Error, Result};
use crate::field::SpectralField4;

fn ratio(lhs: f64, rhs: f64) -> f64 {
    if rhs == 0.0 {
        if lhs == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        lhs / rhs
    }
}

/// Lattice-space configuration shared by the point-cloud inequalities.
#[derive(Debug, Clone, Copy)]
pub struct Lattice {
    pub k0: f64,
    pub max_exp: u32,
}

/// `||f g||_{q3,mu3} / (||f||_{q1,mu1} ||g||_{q2,mu2})` with
/// `1/q3 = 1/q1 + 1/q2` and `mu3/q3 = mu1/q1 + mu2/q2`.
pub fn hoelder_ratio(f: &[Point], g: &[Point], (q1, mu1): (f64, f64), (q2, mu2): (f64, f64), lat: Lattice) -> Result<f64> {
    let q3 = 1.0 / (1.0 / q1 + 1.0 / q2);
    let mu3 = q3 * (mu1 / q1 + mu2 / q2);
    let gmap: HashMap<[i64; 3], f64> = g.iter().map(|&(i, a)| (i, a)).collect();
    let prod: Vec<Point> = f.iter().filter_map(|&(i, a)| gmap.get(&i).map(|b| (i, (a * b).abs()))).collect();
    let lhs = morrey_points(&prod, q3, mu3, lat.k0, lat.max_exp)?;
    let rf = morrey_points(&abs(f), q1, mu1, lat.k0, lat.max_exp)?;
    let rg = morrey_points(&abs(g), q2, mu2, lat.k0, lat.max_exp)?;
    Ok(ratio(lhs, rf * rg))
}

fn abs(p: &[Point]) -> Vec<Point> {
    p.iter().map(|&(i, a)| (i, a.abs())).collect()
}

/// Discrete convolution with the lattice measure: `(k * g)(xi) = sum_eta
/// k(eta) g(xi - eta) k0^3`.
pub fn lattice_convolution(kernel: &[Point], g: &[Point], k0: f64) -> Vec<Point> {
    let cell = k0 * k0 * k0;
    let mut acc: HashMap<[i64; 3], f64> = HashMap::new();
    for &(a, ka) in kernel {
        for &(b, gb) in g {
            *acc.entry([a[0] + b[0], a[1] + b[1], a[2] + b[2]]).or_default() += ka * gb * cell;
        }
    }
    let mut out: Vec<Point> = acc.into_iter().collect();
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// `||k * g||_{q,mu} / (||k||_1 ||g||_{q,mu})`.
pub fn young_ratio(kernel: &[Point], g: &[Point], q: f64, mu: f64, lat: Lattice) -> Result<f64> {
    let conv = abs(&lattice_convolution(kernel, g, lat.k0));
    let lhs = morrey_points(&conv, q, mu, lat.k0, lat.max_exp)?;
    let l1 = kernel.iter().map(|p| p.1.abs()).sum::<f64>() * lat.k0.powi(3);
    let rhs = l1 * morrey_points(&abs(g), q, mu, lat.k0, lat.max_exp)?;
    Ok(ratio(lhs, rhs))
}

/// Measured Bernstein constant
/// `||xi^beta f||_{q2,mu2} / (2^{j|beta| + j((3-mu2)/q2 - (3-mu1)/q1)} ||f||_{q1,mu1})`
/// for data supported in `|xi| <= A 2^j`.
pub fn bernstein_constant(
    f: &[Point],
    beta: [u32; 3],
    j: i32,
    (q1, mu1): (f64, f64),
    (q2, mu2): (f64, f64),
    lat: Lattice,
) -> Result<f64> {
    if q2 > q1 || (3.0 - mu1) / q1 > (3.0 - mu2) / q2 + 1e-15 {
        return Err(Error::Inadmissible(format!(
            "Bernstein needs q2 <= q1 and (3-mu1)/q1 <= (3-mu2)/q2, got q1={q1}, mu1={mu1}, q2={q2}, mu2={mu2}"
        )));
    }
    let weighted: Vec<Point> = f
        .iter()
        .map(|&(i, a)| {
            let m: f64 = (0..3).map(|k| (lat.k0 * i[k] as f64).powi(beta[k] as i32)).product();
            (i, (a * m).abs())
        })
        .collect();
    let lhs = morrey_points(&weighted, q2, mu2, lat.k0, lat.max_exp)?;
    let order = (beta[0] + beta[1] + beta[2]) as f64;
    let scale = 2f64.powf(j as f64 * (order + (3.0 - mu2) / q2 - (3.0 - mu1) / q1));
    let rhs = scale * morrey_points(&abs(f), q1, mu1, lat.k0, lat.max_exp)?;
    Ok(ratio(lhs, rhs))
}

/// `||v||_{target} / ||v||_{source}` for an embedding pair with matching
/// scaling index, `q_target <= q_source`, `r_source <= r_target`.
pub fn embedding_ratio(field: &SpectralField4, source: &NormParams, target: &NormParams, partition: &LPPartition) -> Result<f64> {
    if (source.scaling_index() - target.scaling_index()).abs() > 1e-12 {
        return Err(Error::Inadmissible(format!(
            "embedding needs equal scaling indices, got {} and {}",
            source.scaling_index(),
            target.scaling_index()
        )));
    }
    if target.q > source.q || source.r.value() > target.r.value() {
        return Err(Error::Inadmissible("embedding needs q_target <= q_source and r_source <= r_target".into()));
    }
    let lhs = fbm_norm(field, target, partition)?;
    let rhs = fbm_norm(field, source, partition)?;
    Ok(ratio(lhs, rhs))
}
