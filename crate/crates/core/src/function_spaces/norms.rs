//! Fourier-Besov-Morrey and Chemin-Lerner norms, index bookkeeping and the
//! admissibility gate for the well-posedness ranges.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::morrey::{morrey_norm_magnitudes, validate_indices};
use super::partition::LPPartition;
use crate::error::{Error, Result};
use crate::field::SpectralField4;

/// Summability or time exponent in `[1, inf]`. Serialized as a number or
/// the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    pub fn value(&self) -> f64 {
        match self {
            Exponent::Finite(x) => *x,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    pub fn validate(&self, what: &str) -> Result<()> {
        match self {
            Exponent::Finite(x) if !(*x >= 1.0 && x.is_finite()) => {
                Err(Error::Inadmissible(format!("{what} must lie in [1, inf], got {x}")))
            }
            _ => Ok(()),
        }
    }

    /// `l^r` norm of nonnegative terms.
    pub fn lp_sum(&self, terms: impl Iterator<Item = f64>) -> f64 {
        match self {
            Exponent::Infinity => terms.fold(0.0, f64::max),
            Exponent::Finite(r) if *r == 1.0 => terms.sum(),
            Exponent::Finite(r) => terms.map(|t| t.powf(*r)).sum::<f64>().powf(1.0 / r),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(x) => write!(f, "{x}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "Infinity" => Ok(Exponent::Infinity),
            t => t
                .parse::<f64>()
                .map(Exponent::Finite)
                .map_err(|_| Error::Config(format!("bad exponent {s:?}"))),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(x) => s.serialize_f64(*x),
            Exponent::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Exponent::Finite(x)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormParams {
    pub s: f64,
    pub q: f64,
    pub mu: f64,
    pub r: Exponent,
    #[serde(default = "default_p")]
    pub p: Exponent,
}

fn default_p() -> Exponent {
    Exponent::Infinity
}

/// Critical regularity `s = 4 - 2 alpha - (3 - mu)/q`.
pub fn critical_s(alpha: f64, q: f64, mu: f64) -> f64 {
    4.0 - 2.0 * alpha - (3.0 - mu) / q
}

impl NormParams {
    pub fn new(s: f64, q: f64, mu: f64, r: Exponent) -> Self {
        Self { s, q, mu, r, p: Exponent::Infinity }
    }

    pub fn critical(alpha: f64, q: f64, mu: f64, r: Exponent) -> Self {
        Self::new(critical_s(alpha, q, mu), q, mu, r)
    }

    pub fn validate(&self) -> Result<()> {
        validate_indices(self.q, self.mu)?;
        self.r.validate("summability r")?;
        self.p.validate("time exponent p")?;
        if !self.s.is_finite() {
            return Err(Error::Inadmissible("regularity s must be finite".into()));
        }
        Ok(())
    }

    /// Scaling dimension `s + (3 - mu)/q` compared by embeddings.
    pub fn scaling_index(&self) -> f64 {
        self.s + (3.0 - self.mu) / self.q
    }
}

/// Which well-posedness range an index set belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibleCase {
    /// `1/2 < alpha < 5/2 - (3 - mu)/(2q)`, any `r`.
    Subcritical,
    /// `alpha = 5/2 - (3 - mu)/(2q)`, `mu = 0`, `1 <= q <= r <= 2`.
    Endpoint,
    /// `alpha = 1/2`, `r = 1`.
    HalfLaplacian,
}

pub const ADMISSIBILITY_TOL: f64 = 1e-12;

pub fn admissible_case(alpha: f64, q: f64, mu: f64, r: Exponent) -> Result<AdmissibleCase> {
    validate_indices(q, mu)?;
    r.validate("summability r")?;
    let ceiling = 2.5 - (3.0 - mu) / (2.0 * q);
    if (alpha - 0.5).abs() <= ADMISSIBILITY_TOL {
        return match r {
            Exponent::Finite(x) if x == 1.0 => Ok(AdmissibleCase::HalfLaplacian),
            _ => Err(Error::Inadmissible(format!("alpha = 1/2 requires r = 1, got r = {r}"))),
        };
    }
    if alpha < 0.5 {
        return Err(Error::Inadmissible(format!("alpha = {alpha} is below 1/2")));
    }
    if (alpha - ceiling).abs() <= ADMISSIBILITY_TOL {
        if mu != 0.0 {
            return Err(Error::Inadmissible(format!(
                "endpoint alpha = 5/2 - (3-mu)/(2q) = {ceiling} requires mu = 0, got mu = {mu}"
            )));
        }
        let rv = r.value();
        if !(1.0 <= q && q <= rv && rv <= 2.0) {
            return Err(Error::Inadmissible(format!(
                "endpoint alpha = 5/2 - (3-mu)/(2q) = {ceiling} requires 1 <= q <= r <= 2, got q = {q}, r = {r}"
            )));
        }
        return Ok(AdmissibleCase::Endpoint);
    }
    if alpha < ceiling {
        return Ok(AdmissibleCase::Subcritical);
    }
    Err(Error::Inadmissible(format!(
        "1/2 < alpha < 5/2 - (3-mu)/(2q) violated: alpha = {alpha} exceeds {ceiling}"
    )))
}

/// Per-block Morrey norms `||phi_j v^||_{q,mu}` of a field, reusable for
/// every regularity index and summability exponent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockProfile {
    pub js: Vec<i32>,
    pub values: Vec<f64>,
}

impl BlockProfile {
    /// `l^r_j` of `2^{js} values_j`.
    pub fn fbm(&self, s: f64, r: Exponent) -> Result<f64> {
        if self.js.is_empty() {
            return Err(Error::InvalidGrid("empty dyadic range".into()));
        }
        Ok(r.lp_sum(self.js.iter().zip(&self.values).map(|(&j, &m)| 2f64.powf(j as f64 * s) * m)))
    }
}

pub fn block_profile(field: &SpectralField4, q: f64, mu: f64, partition: &LPPartition) -> Result<BlockProfile> {
    if field.grid != partition.grid {
        return Err(Error::GridMismatch);
    }
    validate_indices(q, mu)?;
    let mags = field.magnitudes();
    let mut js = Vec::with_capacity(partition.len());
    let mut values = Vec::with_capacity(partition.len());
    let mut scratch = vec![0.0; field.grid.len()];
    for b in &partition.blocks {
        for &(f, w) in &b.entries {
            scratch[f] = w * mags[f];
        }
        values.push(morrey_norm_magnitudes(&scratch, q, mu, &field.grid)?);
        for &(f, _) in &b.entries {
            scratch[f] = 0.0;
        }
        js.push(b.j);
    }
    Ok(BlockProfile { js, values })
}

pub fn fbm_norm(field: &SpectralField4, params: &NormParams, partition: &LPPartition) -> Result<f64> {
    params.validate()?;
    block_profile(field, params.q, params.mu, partition)?.fbm(params.s, params.r)
}

/// Time-`L^p` per block (`p` in {1, inf}) then `l^r` over blocks.
pub fn chemin_lerner_from_profiles(
    times: &[f64],
    profiles: &[BlockProfile],
    s: f64,
    r: Exponent,
    p: Exponent,
) -> Result<f64> {
    if profiles.is_empty() || times.len() != profiles.len() {
        return Err(Error::InvalidParameter(format!(
            "trajectory needs matching nonempty times/profiles ({} vs {})",
            times.len(),
            profiles.len()
        )));
    }
    let js = &profiles[0].js;
    if profiles.iter().any(|pr| &pr.js != js) {
        return Err(Error::InvalidParameter("profiles use different dyadic ranges".into()));
    }
    let per_block: Vec<f64> = match p {
        Exponent::Infinity => (0..js.len()).map(|b| profiles.iter().map(|pr| pr.values[b]).fold(0.0, f64::max)).collect(),
        Exponent::Finite(x) if x == 1.0 => (0..js.len())
            .map(|b| {
                times
                    .windows(2)
                    .zip(profiles.windows(2))
                    .map(|(t, pr)| 0.5 * (t[1] - t[0]) * (pr[0].values[b] + pr[1].values[b]))
                    .sum()
            })
            .collect(),
        other => {
            return Err(Error::InvalidParameter(format!("time exponent must be 1 or inf, got {other}")));
        }
    };
    BlockProfile { js: js.clone(), values: per_block }.fbm(s, r)
}

pub fn chemin_lerner_norm(
    times: &[f64],
    fields: &[SpectralField4],
    params: &NormParams,
    partition: &LPPartition,
) -> Result<f64> {
    params.validate()?;
    let profiles = fields
        .iter()
        .map(|f| block_profile(f, params.q, params.mu, partition))
        .collect::<Result<Vec<_>>>()?;
    chemin_lerner_from_profiles(times, &profiles, params.s, params.r, params.p)
}

/// `||v||_{L^inf(FN^s)} + ||v||_{L^1(FN^{s + 2 alpha})}` on the sampled
/// time interval.
pub fn xr_norm_from_profiles(times: &[f64], profiles: &[BlockProfile], s: f64, alpha: f64, r: Exponent) -> Result<f64> {
    let sup = chemin_lerner_from_profiles(times, profiles, s, r, Exponent::Infinity)?;
    let int = chemin_lerner_from_profiles(times, profiles, s + 2.0 * alpha, r, Exponent::Finite(1.0))?;
    Ok(sup + int)
}

pub fn xr_norm(
    times: &[f64],
    fields: &[SpectralField4],
    params: &NormParams,
    alpha: f64,
    partition: &LPPartition,
) -> Result<f64> {
    params.validate()?;
    let profiles = fields
        .iter()
        .map(|f| block_profile(f, params.q, params.mu, partition))
        .collect::<Result<Vec<_>>>()?;
    xr_norm_from_profiles(times, &profiles, params.s, alpha, params.r)
}
