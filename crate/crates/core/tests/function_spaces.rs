use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use fbcs_core::function_spaces::{
    admissible_case, block_profile, build_lp_partition, chemin_lerner_norm, critical_s, fbm_norm, make_homogeneous_data, morrey_norm, AdmissibleCase,
    Exponent, NormParams,
};
use fbcs_core::harness::data::{random_band_limited, random_scalar};
use fbcs_core::{GridSpec, SpectralField4};

fn grid(n: usize, len: f64) -> GridSpec {
    GridSpec::new(n, len).unwrap()
}

#[test]
fn single_sample_morrey_value() {
    for (q, mu) in [(1.0, 0.0), (2.0, 1.0), (1.5, 2.5)] {
        let g = grid(8, 3.0);
        let mut c = vec![Complex64::new(0.0, 0.0); g.len()];
        c[g.flat_of_signed([1, -2, 0])] = Complex64::new(0.0, 2.0);
        let cell = g.frequency_cell_volume();
        let k0 = g.fundamental_wavenumber();
        // density 2/cell on one cell; the smallest ball maximizes d^{-mu/q}
        let expected = 2.0 / cell * cell.powf(1.0 / q) * k0.powf(-mu / q);
        let got = morrey_norm(&c, q, mu, &g).unwrap();
        assert!((got / expected - 1.0).abs() < 1e-12, "q={q} mu={mu}: {got} vs {expected}");
    }
}

#[test]
fn morrey_with_mu_zero_is_lq() {
    let g = grid(8, 2.0 * PI);
    let s = random_scalar(&g, 2.0, 4).unwrap();
    let q = 1.5;
    let cell = g.frequency_cell_volume();
    let lq = s.coeffs.iter().map(|c| (c.norm() / cell).powf(q) * cell).sum::<f64>().powf(1.0 / q);
    let got = morrey_norm(&s.coeffs, q, 0.0, &g).unwrap();
    assert!((got / lq - 1.0).abs() < 1e-12);
}

#[test]
fn morrey_rejects_bad_indices() {
    let g = grid(8, 2.0 * PI);
    let c = vec![Complex64::new(1.0, 0.0); g.len()];
    assert!(morrey_norm(&c, 0.5, 0.0, &g).is_err());
    assert!(morrey_norm(&c, 2.0, 3.0, &g).is_err());
    assert!(morrey_norm(&c[1..], 2.0, 0.0, &g).is_err());
}

#[test]
fn plane_wave_blocks() {
    // |xi| = 1: only blocks whose annulus meets the unit sphere
    let g = grid(16, 2.0 * PI);
    let part = build_lp_partition(&g).unwrap();
    let f = g.flat_of_signed([1, 0, 0]);
    let js = part.blocks_at(f);
    assert!(!js.is_empty());
    assert!(js.iter().all(|j| (-2..=1).contains(j)), "{js:?}");
}

#[test]
fn single_block_fbm_is_weighted_morrey() {
    let g = grid(16, 2.0 * PI);
    let part = build_lp_partition(&g).unwrap();
    let j = part.j_min + 2;
    let s = random_scalar(&g, 5.0, 9).unwrap();
    let blocked = part.apply_block(j, &s.coeffs);
    let zero = vec![Complex64::new(0.0, 0.0); g.len()];
    let field = SpectralField4::from_components(g, [blocked.clone(), zero.clone(), zero.clone(), zero], false).unwrap();
    let p = NormParams::new(0.7, 2.0, 1.0, Exponent::Finite(2.0));
    let prof = block_profile(&field, p.q, p.mu, &part).unwrap();
    // every block of the blocked field other than j and its neighbours vanishes
    for (jj, v) in prof.js.iter().zip(&prof.values) {
        if (jj - j).abs() >= 2 {
            assert_eq!(*v, 0.0);
        }
    }
    let direct: f64 = prof.js.iter().zip(&prof.values).map(|(&jj, &v)| (2f64.powf(jj as f64 * p.s) * v).powi(2)).sum::<f64>().sqrt();
    assert!((fbm_norm(&field, &p, &part).unwrap() / direct - 1.0).abs() < 1e-13);
}

#[test]
fn chemin_lerner_constant_in_time() {
    let g = grid(8, 2.0 * PI);
    let part = build_lp_partition(&g).unwrap();
    let v = random_band_limited(&g, 2.0, 1).unwrap();
    let times: Vec<f64> = (0..=10).map(|k| 0.3 * k as f64).collect();
    let fields = vec![v.clone(); times.len()];
    let mut p = NormParams::new(0.5, 2.0, 0.0, Exponent::Finite(2.0));
    let base = fbm_norm(&v, &p, &part).unwrap();
    p.p = Exponent::Infinity;
    assert!((chemin_lerner_norm(&times, &fields, &p, &part).unwrap() / base - 1.0).abs() < 1e-13);
    p.p = Exponent::Finite(1.0);
    assert!((chemin_lerner_norm(&times, &fields, &p, &part).unwrap() / (3.0 * base) - 1.0).abs() < 1e-12);
}

#[test]
fn chemin_lerner_l1_and_minkowski() {
    // time integral inside the block sum: equal to the integrated norm for
    // r = 1, dominated by it for r > 1
    let g = grid(8, 2.0 * PI);
    let part = build_lp_partition(&g).unwrap();
    let a = random_band_limited(&g, 1.5, 2).unwrap();
    let b = random_band_limited(&g, 2.0, 3).unwrap();
    let times: Vec<f64> = (0..=8).map(|k| k as f64 / 8.0).collect();
    let fields: Vec<SpectralField4> = times.iter().map(|&t| a.scaled((3.0 * t).cos()).add(&b.scaled(t * t)).unwrap()).collect();
    let mut p = NormParams::new(0.2, 2.0, 0.0, Exponent::Finite(1.0));
    p.p = Exponent::Finite(1.0);
    let cl = chemin_lerner_norm(&times, &fields, &p, &part).unwrap();
    let norms: Vec<f64> = fields.iter().map(|f| fbm_norm(f, &p, &part).unwrap()).collect();
    let direct: f64 = times.windows(2).zip(norms.windows(2)).map(|(t, n)| 0.5 * (t[1] - t[0]) * (n[0] + n[1])).sum();
    assert!((cl / direct - 1.0).abs() < 1e-12, "for r = 1 both orders coincide: {cl} vs {direct}");
    p.r = Exponent::Finite(2.0);
    let cl2 = chemin_lerner_norm(&times, &fields, &p, &part).unwrap();
    let direct2: f64 = {
        let n: Vec<f64> = fields.iter().map(|f| fbm_norm(f, &p, &part).unwrap()).collect();
        times.windows(2).zip(n.windows(2)).map(|(t, n)| 0.5 * (t[1] - t[0]) * (n[0] + n[1])).sum()
    };
    assert!(cl2 <= direct2 * (1.0 + 1e-12));
}

#[test]
fn homogeneous_data_is_resolution_stable_with_growing_h1() {
    let alpha = 1.0;
    let (q, mu) = (2.0, 0.0);
    let p = NormParams::new(critical_s(alpha, q, mu), q, mu, Exponent::Infinity);
    let degree = p.s - 3.0 + (3.0 - mu) / q;
    let norm_at = |n: usize| {
        let g = grid(n, 2.0 * PI);
        let v = make_homogeneous_data(degree, &p, &g).unwrap();
        assert!(v.divergence_defect() <= 1e-14);
        // discrete H^sigma by direct mode sum
        let sobolev = |sigma: f64| {
            (1..g.len())
                .map(|f| g.wavenumber_magnitude(f).powf(2.0 * sigma) * v.mode(f).iter().map(|c| c.norm_sqr()).sum::<f64>())
                .sum::<f64>()
                .sqrt()
        };
        (fbm_norm(&v, &p, &build_lp_partition(&g).unwrap()).unwrap(), sobolev(0.0), sobolev(1.0))
    };
    let (a16, l16, h16) = norm_at(16);
    let (a32, _, _) = norm_at(32);
    let (_, l64, h64) = norm_at(64);
    assert!(a16.is_finite() && a16 > 0.0);
    assert!((a32 / a16 - 1.0).abs() <= 0.10, "{a16} vs {a32}");
    // degree -1: H^1 diverges linearly in the cutoff, L^2 converges
    assert!(h64 >= 2.0 * h16, "H^1 {h16} -> {h64}");
    assert!(l64 <= 1.2 * l16, "L^2 {l16} -> {l64}");
}

#[test]
fn admissibility_cases() {
    assert_eq!(admissible_case(1.0, 2.0, 0.0, Exponent::Finite(2.0)).unwrap(), AdmissibleCase::Subcritical);
    assert_eq!(admissible_case(1.75, 2.0, 0.0, Exponent::Finite(2.0)).unwrap(), AdmissibleCase::Endpoint);
    assert_eq!(admissible_case(0.5, 1.0, 0.0, Exponent::Finite(1.0)).unwrap(), AdmissibleCase::HalfLaplacian);
    assert!(admissible_case(1.75, 2.0, 0.0, Exponent::Infinity).is_err());
    assert!(admissible_case(0.5, 1.0, 0.0, Exponent::Finite(2.0)).is_err());
    assert!(admissible_case(0.4, 2.0, 0.0, Exponent::Finite(2.0)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn morrey_is_a_norm(seed in 0u64..500, q in 1.0f64..3.0, mu in 0.0f64..2.9, a in -3.0f64..3.0) {
        let g = grid(8, 2.0 * PI);
        let f = random_scalar(&g, 2.0, seed).unwrap();
        let h = random_scalar(&g, 1.5, seed + 1000).unwrap();
        let nf = morrey_norm(&f.coeffs, q, mu, &g).unwrap();
        let nh = morrey_norm(&h.coeffs, q, mu, &g).unwrap();
        let sum: Vec<Complex64> = f.coeffs.iter().zip(&h.coeffs).map(|(x, y)| x + y).collect();
        prop_assert!(morrey_norm(&sum, q, mu, &g).unwrap() <= (nf + nh) * (1.0 + 1e-12));
        let scaled: Vec<Complex64> = f.coeffs.iter().map(|x| x * a).collect();
        prop_assert!((morrey_norm(&scaled, q, mu, &g).unwrap() - a.abs() * nf).abs() <= 1e-12 * nf.max(1.0));
    }

    #[test]
    fn partition_sums_to_one(n in prop::sample::select(vec![8usize, 16, 32]), len in 1.0f64..20.0) {
        let part = build_lp_partition(&grid(n, len)).unwrap();
        prop_assert!(part.unity_residual() <= 1e-12);
        prop_assert_eq!(part.disjointness_defect(), 0.0);
    }
}
