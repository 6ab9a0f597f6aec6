//! Per-wavenumber symbols of the linearized system: `|xi|'`, the matrices
//! `M1`, `M2`, `M3`, the extended Helmholtz projection, the closed-form
//! semigroup and its matrix-exponential oracle, and the 3x3 Stokes-Coriolis
//! semigroup of the reduced model.
//!
//! Orientation: the closed form `e^{-nu t |xi|^{2a}}[cos(w t) M1 + sin(w t) M2 + M3]`
//! with `w = |xi|'/|xi|` is the exponential of
//! `-nu |xi|^{2a} I + P(xi) B` on divergence-free vectors, where `B` is the
//! Coriolis/buoyancy coupling matrix. The oracle exponentiates that
//! generator.

mod expm;

pub use expm::expm;

use nalgebra::{Matrix3, Matrix4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical parameters of the rotating stratified system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysParams {
    /// Kinematic viscosity.
    pub nu: f64,
    /// Thermal diffusivity.
    pub kappa: f64,
    pub gravity: f64,
    /// Coriolis speed.
    pub omega: f64,
    /// Brunt-Vaisala frequency.
    pub brunt: f64,
    /// Fractional power of the Laplacian.
    pub alpha: f64,
}

impl PhysParams {
    /// Rescaled buoyancy frequency `N = brunt * sqrt(g)`.
    pub fn n_coupling(&self) -> f64 {
        self.brunt * self.gravity.sqrt()
    }

    /// Checks the ranges every model needs: positive diffusivities and
    /// `alpha` in `[1/2, 5/2)`.
    pub fn validate_common(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return bad(format!("nu must be positive, got {}", self.nu));
        }
        if !(self.kappa > 0.0 && self.kappa.is_finite()) {
            return bad(format!("kappa must be positive, got {}", self.kappa));
        }
        if !(self.alpha >= 0.5 && self.alpha < 2.5) {
            return bad(format!("alpha must lie in [1/2, 5/2), got {}", self.alpha));
        }
        if !self.omega.is_finite() {
            return bad("omega must be finite".into());
        }
        Ok(())
    }

    /// Full check for the stratified rotating model: additionally `g > 0`,
    /// `brunt > 0` and `omega != 0`.
    pub fn validate(&self) -> Result<()> {
        self.validate_common()?;
        if !(self.gravity > 0.0 && self.gravity.is_finite()) {
            return Err(Error::InvalidParameter(format!("gravity must be positive, got {}", self.gravity)));
        }
        if !(self.brunt > 0.0 && self.brunt.is_finite()) {
            return Err(Error::InvalidParameter(format!("brunt must be positive, got {}", self.brunt)));
        }
        if self.omega == 0.0 {
            return Err(Error::InvalidParameter("omega must be nonzero".into()));
        }
        Ok(())
    }

    pub fn require_closed_form(&self) -> Result<()> {
        if self.nu != self.kappa {
            return Err(Error::ClosedFormUnavailable { nu: self.nu, kappa: self.kappa });
        }
        Ok(())
    }
}

/// Which entries of `M2`/`M3` to use. `Literal` keeps the uncorrected
/// `N xi1 xi2` in `M2[0][3]` and `N xi1^2` in `M3[1][1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Corrected,
    Literal,
}

impl std::str::FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrected" => Ok(Self::Corrected),
            "literal" => Ok(Self::Literal),
            other => Err(Error::Config(format!("unknown convention {other:?} (expected literal|corrected)"))),
        }
    }
}

/// A real 4x4 Fourier multiplier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Symbol4x4(pub Matrix4<f64>);

impl Symbol4x4 {
    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    pub fn apply(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        let m = &self.0;
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (r, o) in out.iter_mut().enumerate() {
            *o = m[(r, 0)] * v[0] + m[(r, 1)] * v[1] + m[(r, 2)] * v[2] + m[(r, 3)] * v[3];
        }
        out
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.0.abs().max()
    }

    /// Spectral norm.
    pub fn operator_norm(&self) -> f64 {
        self.0.singular_values().max()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

fn norm3(xi: &[f64; 3]) -> f64 {
    (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt()
}

fn nonzero(xi: &[f64; 3]) -> Result<f64> {
    let k = norm3(xi);
    if k == 0.0 {
        return Err(Error::ZeroWavenumber);
    }
    Ok(k)
}

/// `|xi|' = sqrt(N^2 xi1^2 + N^2 xi2^2 + omega^2 xi3^2)`.
pub fn xi_prime(xi: &[f64; 3], params: &PhysParams) -> f64 {
    let n = params.n_coupling();
    (n * n * (xi[0] * xi[0] + xi[1] * xi[1]) + params.omega * params.omega * xi[2] * xi[2]).sqrt()
}

/// `L = max{2, |omega|/N, N/|omega|}`, the entry bound of the `M` matrices.
pub fn coupling_bound_l(params: &PhysParams) -> Result<f64> {
    if params.omega == 0.0 {
        return Err(Error::InvalidParameter("coupling bound needs omega != 0".into()));
    }
    let n = params.n_coupling();
    if !(n > 0.0) {
        return Err(Error::InvalidParameter("coupling bound needs brunt * sqrt(g) > 0".into()));
    }
    let w = params.omega.abs();
    Ok(2f64.max(w / n).max(n / w))
}

/// `M_l(xi)` for `l` in 1..=3.
pub fn matrix_m(l: usize, xi: &[f64; 3], params: &PhysParams, convention: Convention) -> Result<Symbol4x4> {
    let k = nonzero(xi)?;
    params.validate()?;
    let [x1, x2, x3] = *xi;
    let om = params.omega;
    let n = params.n_coupling();
    let kp = xi_prime(xi, params);
    let kp2 = kp * kp;
    let h2 = x1 * x1 + x2 * x2;
    let literal = convention == Convention::Literal;
    let m = match l {
        1 => {
            Matrix4::new(
                om * om * x3 * x3, 0.0, -n * n * x1 * x3, om * n * x2 * x3,
                0.0, om * om * x3 * x3, -n * n * x2 * x3, -om * n * x1 * x3,
                -om * om * x1 * x3, -om * om * x2 * x3, n * n * h2, 0.0,
                om * n * x2 * x3, -om * n * x1 * x3, 0.0, n * n * h2,
            ) / kp2
        }
        2 => {
            let e14 = if literal { n * x1 * x2 } else { n * x1 * x3 };
            Matrix4::new(
                0.0, -om * x3 * x3, om * x2 * x3, e14,
                om * x3 * x3, 0.0, -om * x1 * x3, n * x2 * x3,
                -om * x2 * x3, om * x1 * x3, 0.0, -n * h2,
                -n * x1 * x3, -n * x2 * x3, n * h2, 0.0,
            ) / (k * kp)
        }
        3 => {
            let e22 = if literal { n * x1 * x1 } else { n * n * x1 * x1 };
            Matrix4::new(
                n * n * x2 * x2, -n * n * x1 * x2, 0.0, -om * n * x2 * x3,
                -n * n * x1 * x2, e22, 0.0, om * n * x1 * x3,
                0.0, 0.0, 0.0, 0.0,
                -om * n * x2 * x3, om * n * x1 * x3, 0.0, om * om * x3 * x3,
            ) / kp2
        }
        _ => return Err(Error::InvalidParameter(format!("matrix index l must be 1, 2 or 3, got {l}"))),
    };
    Ok(Symbol4x4(m))
}

/// Extended Helmholtz projection: Leray projection on the velocity block,
/// identity on the fourth component.
pub fn helmholtz_symbol(xi: &[f64; 3]) -> Result<Symbol4x4> {
    let k = nonzero(xi)?;
    let k2 = k * k;
    let mut m = Matrix4::identity();
    for a in 0..3 {
        for b in 0..3 {
            m[(a, b)] -= xi[a] * xi[b] / k2;
        }
    }
    Ok(Symbol4x4(m))
}

/// Coupling matrix `B` of the linear part (Coriolis in the (1,2) block,
/// buoyancy in the (3,4) block).
pub fn coupling_matrix(params: &PhysParams) -> Matrix4<f64> {
    let om = params.omega;
    let n = params.n_coupling();
    Matrix4::new(
        0.0, -om, 0.0, 0.0,
        om, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, -n,
        0.0, 0.0, n, 0.0,
    )
}

/// Dissipation exponent `|xi|^{2 alpha}`.
pub fn dissipation_rate(xi: &[f64; 3], alpha: f64) -> f64 {
    norm3(xi).powf(2.0 * alpha)
}

/// Closed-form semigroup symbol with corrected matrix entries.
pub fn semigroup_symbol(xi: &[f64; 3], t: f64, params: &PhysParams) -> Result<Symbol4x4> {
    semigroup_symbol_with(xi, t, params, Convention::Corrected)
}

pub fn semigroup_symbol_with(xi: &[f64; 3], t: f64, params: &PhysParams, convention: Convention) -> Result<Symbol4x4> {
    let k = nonzero(xi)?;
    params.require_closed_form()?;
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!("time must be nonnegative, got {t}")));
    }
    let m1 = matrix_m(1, xi, params, convention)?.0;
    let m2 = matrix_m(2, xi, params, convention)?.0;
    let m3 = matrix_m(3, xi, params, convention)?.0;
    let w = xi_prime(xi, params) / k;
    let decay = (-params.nu * t * k.powf(2.0 * params.alpha)).exp();
    Ok(Symbol4x4((m1 * (w * t).cos() + m2 * (w * t).sin() + m3) * decay))
}

/// `exp(t A(xi))` with `A = -nu |xi|^{2 alpha} I + P(xi) B`, evaluated by
/// dense scaling and squaring. Ground truth for [`semigroup_symbol`] on
/// divergence-free vectors.
pub fn matrix_exponential_oracle(xi: &[f64; 3], t: f64, params: &PhysParams) -> Result<Symbol4x4> {
    oracle_with_coupling_scale(xi, t, params, 1.0)
}

/// Oracle with the coupling matrix scaled by `eps`; `eps -> 0` recovers the
/// pure fractional heat multiplier.
pub fn oracle_with_coupling_scale(xi: &[f64; 3], t: f64, params: &PhysParams, eps: f64) -> Result<Symbol4x4> {
    let k = nonzero(xi)?;
    params.require_closed_form()?;
    params.validate()?;
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!("time must be nonnegative, got {t}")));
    }
    let p = helmholtz_symbol(xi)?.0;
    let a = Matrix4::identity() * (-params.nu * k.powf(2.0 * params.alpha)) + p * coupling_matrix(params) * eps;
    Ok(Symbol4x4(expm(&(a * t))))
}

/// Antisymmetric rotation part of the Stokes-Coriolis semigroup.
pub fn stokes_coriolis_rotation(xi: &[f64; 3]) -> Result<Matrix3<f64>> {
    let k = nonzero(xi)?;
    let [x1, x2, x3] = *xi;
    Ok(Matrix3::new(
        0.0, x3, -x2,
        -x3, 0.0, x1,
        x2, -x1, 0.0,
    ) / k)
}

/// `e^{-nu t |xi|^{2 alpha}}[cos(omega xi3 t/|xi|) I + sin(omega xi3 t/|xi|) Mhat(xi)]`.
pub fn stokes_coriolis_symbol(xi: &[f64; 3], t: f64, omega: f64, nu: f64, alpha: f64) -> Result<Matrix3<f64>> {
    let k = nonzero(xi)?;
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!("time must be nonnegative, got {t}")));
    }
    let mhat = stokes_coriolis_rotation(xi)?;
    let th = omega * xi[2] * t / k;
    let decay = (-nu * t * k.powf(2.0 * alpha)).exp();
    Ok((Matrix3::identity() * th.cos() + mhat * th.sin()) * decay)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Vector4;
    use proptest::prelude::*;

    fn params() -> PhysParams {
        PhysParams { nu: 1.0, kappa: 1.0, gravity: 1.0, omega: 1.7, brunt: 0.9, alpha: 0.5 }
    }

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn xi_prime_examples() {
        let p = params();
        assert!((xi_prime(&[0.0, 0.0, 1.0], &p) - 1.7).abs() < 1e-15);
        assert!((xi_prime(&[1.0, 0.0, 0.0], &p) - 0.9).abs() < 1e-15);
        let q = PhysParams { omega: 0.9, ..p };
        let xi = [0.3, -1.2, 2.0];
        assert!((xi_prime(&xi, &q) - 0.9 * norm3(&xi)).abs() < 1e-14);
    }

    #[test]
    fn coupling_bound_examples() {
        let p = PhysParams { omega: 3.0, brunt: 1.5, gravity: 4.0, ..params() };
        assert_eq!(coupling_bound_l(&p).unwrap(), 2.0);
        let p = PhysParams { omega: 12.0, ..p };
        assert!((coupling_bound_l(&p).unwrap() - 4.0).abs() < 1e-15);
        for ratio in [0.5, 0.8, 1.0, 1.6, 2.0] {
            let p = PhysParams { omega: -ratio * 3.0, ..p };
            assert_eq!(coupling_bound_l(&p).unwrap(), 2.0);
        }
        assert!(coupling_bound_l(&PhysParams { omega: 0.0, ..p }).is_err());
    }

    #[test]
    fn vertical_wavenumber_matrices() {
        let p = params();
        let xi = [0.0, 0.0, 1.0];
        let m1 = matrix_m(1, &xi, &p, Convention::Corrected).unwrap().0;
        let m2 = matrix_m(2, &xi, &p, Convention::Corrected).unwrap().0;
        let m3 = matrix_m(3, &xi, &p, Convention::Corrected).unwrap().0;
        assert_eq!(m1, Matrix4::from_diagonal(&Vector4::new(1.0, 1.0, 0.0, 0.0)));
        assert_eq!(m3, Matrix4::from_diagonal(&Vector4::new(0.0, 0.0, 0.0, 1.0)));
        let mut m2_expect = Matrix4::zeros();
        m2_expect[(0, 1)] = -1.0;
        m2_expect[(1, 0)] = 1.0;
        assert!((m2 - m2_expect).abs().max() < 1e-15);
        assert!(matches!(matrix_m(1, &[0.0; 3], &p, Convention::Corrected), Err(Error::ZeroWavenumber)));
        assert!(matrix_m(4, &xi, &p, Convention::Corrected).is_err());
    }

    #[test]
    fn helmholtz_examples() {
        let xi = [0.0, 0.0, 1.0];
        let p = helmholtz_symbol(&xi).unwrap().0;
        assert_eq!(p, Matrix4::from_diagonal(&Vector4::new(1.0, 1.0, 0.0, 1.0)));
        let xi = [0.4, -1.1, 2.3];
        let p = helmholtz_symbol(&xi).unwrap();
        assert!((p.0 * p.0 - p.0).abs().max() < 1e-14);
        let g = p.apply(&[c(0.4), c(-1.1), c(2.3), c(0.0)]);
        assert!(g.iter().all(|z| z.norm() < 1e-15));
        assert!(helmholtz_symbol(&[0.0; 3]).is_err());
    }

    #[test]
    fn semigroup_vertical_mode_rotates_velocity() {
        let p = params();
        let (u1, u2, b) = (0.3, -0.8, 0.5);
        for t in [0.0, 0.4, 2.5] {
            let s = semigroup_symbol(&[0.0, 0.0, 1.0], t, &p).unwrap();
            let out = s.apply(&[c(u1), c(u2), c(0.0), c(b)]);
            let (co, si) = ((p.omega * t).cos(), (p.omega * t).sin());
            let d = (-t).exp();
            let expect = [d * (co * u1 - si * u2), d * (si * u1 + co * u2), 0.0, d * b];
            for k in 0..4 {
                assert!((out[k] - c(expect[k])).norm() < 1e-14, "t={t} k={k}");
            }
        }
    }

    #[test]
    fn unequal_diffusivities_rejected() {
        let p = PhysParams { kappa: 2.0, ..params() };
        let e = semigroup_symbol(&[1.0, 0.0, 0.0], 1.0, &p).unwrap_err();
        assert!(matches!(e, Error::ClosedFormUnavailable { .. }));
        assert!(e.to_string().contains("closed form unavailable"));
        assert!(matrix_exponential_oracle(&[1.0, 0.0, 0.0], 1.0, &p).is_err());
        assert!(semigroup_symbol(&[0.0; 3], 1.0, &params()).is_err());
    }

    #[test]
    fn stokes_coriolis_basics() {
        let xi = [0.7, -0.2, 1.9];
        let mhat = stokes_coriolis_rotation(&xi).unwrap();
        assert!((mhat + mhat.transpose()).abs().max() == 0.0);
        assert!(mhat.abs().max() <= 1.0);
        assert!(mhat.singular_values().max() <= 2.0);
        assert_eq!(stokes_coriolis_symbol(&xi, 0.0, 3.0, 1.0, 0.75).unwrap(), Matrix3::identity());
        let heat = stokes_coriolis_symbol(&xi, 0.6, 0.0, 1.3, 0.75).unwrap();
        let d = (-1.3 * 0.6 * norm3(&xi).powf(1.5)).exp();
        assert!((heat - Matrix3::identity() * d).abs().max() < 1e-15);
    }
    fn divergence_free(xi: &[f64; 3], raw: [f64; 4]) -> [Complex64; 4] {
        let p = helmholtz_symbol(xi).unwrap();
        p.apply(&[c(raw[0]), c(raw[1]), c(raw[2]), c(raw[3])])
    }

    fn arb_xi() -> impl Strategy<Value = [f64; 3]> {
        [-6.0f64..6.0, -6.0f64..6.0, -6.0f64..6.0].prop_filter("nonzero", |x| norm3(x) > 0.1)
    }

    fn arb_params() -> impl Strategy<Value = PhysParams> {
        (0.05f64..2.0, 0.5f64..2.4, 0.2f64..4.0, 0.2f64..4.0, 0.3f64..3.0, any::<bool>()).prop_map(
            |(nu, alpha, om, brunt, g, flip)| PhysParams {
                nu,
                kappa: nu,
                gravity: g,
                omega: if flip { -om } else { om },
                brunt,
                alpha,
            },
        )
    }

    proptest! {
        #[test]
        fn closed_form_matches_oracle(xi in arb_xi(), p in arb_params(), t in 0.0f64..3.0,
                                      raw in [-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0]) {
            let w = divergence_free(&xi, raw);
            let s = semigroup_symbol(&xi, t, &p).unwrap().apply(&w);
            let o = matrix_exponential_oracle(&xi, t, &p).unwrap().apply(&w);
            let err = (0..4).map(|k| (s[k] - o[k]).norm()).fold(0.0, f64::max);
            prop_assert!(err <= 1e-10, "err {err}");
        }

        #[test]
        fn entries_bounded_by_coupling_constant(xi in arb_xi(), p in arb_params()) {
            let l = coupling_bound_l(&p).unwrap();
            for idx in 1..=3 {
                let m = matrix_m(idx, &xi, &p, Convention::Corrected).unwrap();
                prop_assert!(m.max_abs_entry() <= l * (1.0 + 1e-12));
            }
        }

        #[test]
        fn semigroup_preserves_divergence_free(xi in arb_xi(), p in arb_params(), t in 0.0f64..3.0,
                                               raw in [-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0]) {
            let w = divergence_free(&xi, raw);
            let s = semigroup_symbol(&xi, t, &p).unwrap().apply(&w);
            let div = xi[0] * s[0] + xi[1] * s[1] + xi[2] * s[2];
            prop_assert!(div.norm() <= 1e-12 * norm3(&xi).max(1.0));
            // isometry up to the dissipative factor
            let decay = (-p.nu * t * dissipation_rate(&xi, p.alpha)).exp();
            let n_in = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let n_out = s.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            prop_assert!((n_out - decay * n_in).abs() <= 1e-12 * n_in.max(1.0));
        }

        #[test]
        fn heat_limit_of_oracle(xi in arb_xi(), p in arb_params(), t in 0.0f64..2.0) {
            let o = oracle_with_coupling_scale(&xi, t, &p, 0.0).unwrap().0;
            let heat = Matrix4::identity() * (-p.nu * t * dissipation_rate(&xi, p.alpha)).exp();
            prop_assert!((o - heat).abs().max() <= 1e-13);
        }

        #[test]
        fn stokes_coriolis_matches_its_generator(xi in arb_xi(), om in -4.0f64..4.0, nu in 0.1f64..2.0,
                                                 alpha in 0.5f64..2.4, t in 0.0f64..2.0) {
            // generator -nu|xi|^{2a} I - P(xi) J with J the rotation about e3
            let k = norm3(&xi);
            let mut p3 = Matrix3::identity();
            for a in 0..3 { for b in 0..3 { p3[(a, b)] -= xi[a] * xi[b] / (k * k); } }
            let j = Matrix3::new(0.0, -om, 0.0, om, 0.0, 0.0, 0.0, 0.0, 0.0);
            let gen = Matrix3::identity() * (-nu * k.powf(2.0 * alpha)) - p3 * j;
            let oracle = expm(&(gen * t)) * p3;
            let closed = stokes_coriolis_symbol(&xi, t, om, nu, alpha).unwrap() * p3;
            prop_assert!((oracle - closed).abs().max() <= 1e-11);
        }
    }

    #[test]
    fn literal_entries_disagree_with_oracle() {
        let p = PhysParams { nu: 0.5, kappa: 0.5, gravity: 1.0, omega: 1.3, brunt: 0.8, alpha: 1.0 };
        let xi = [0.9, -0.6, 1.4];
        let w = divergence_free(&xi, [0.3, 0.7, -0.2, 0.5]);
        let t = 0.7;
        let lit = semigroup_symbol_with(&xi, t, &p, Convention::Literal).unwrap().apply(&w);
        let o = matrix_exponential_oracle(&xi, t, &p).unwrap().apply(&w);
        let err = (0..4).map(|k| (lit[k] - o[k]).norm()).fold(0.0, f64::max);
        assert!(err > 1e-3, "literal entries unexpectedly agree: {err}");
    }
}

