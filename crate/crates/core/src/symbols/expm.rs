//! Dense matrix exponential by scaling and squaring with the degree-13
//! diagonal Pade approximant (Higham's coefficients and threshold).

use nalgebra::{DMatrix, SMatrix};

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// Largest 1-norm for which the unscaled degree-13 approximant is accurate
/// to double precision.
const THETA13: f64 = 5.371920351148152;

fn one_norm<const D: usize>(a: &SMatrix<f64, D, D>) -> f64 {
    (0..D).map(|j| a.column(j).iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
}

pub fn expm<const D: usize>(a: &SMatrix<f64, D, D>) -> SMatrix<f64, D, D> {
    let norm = one_norm(a);
    let squarings = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    let a = a / 2f64.powi(squarings);

    let id = SMatrix::<f64, D, D>::identity();
    let b = &PADE13;
    let a2 = a * a;
    let a4 = a2 * a2;
    let a6 = a4 * a2;
    let u = a * (a6 * (a6 * b[13] + a4 * b[11] + a2 * b[9]) + a6 * b[7] + a4 * b[5] + a2 * b[3] + id * b[1]);
    let v = a6 * (a6 * b[12] + a4 * b[10] + a2 * b[8]) + a6 * b[6] + a4 * b[4] + a2 * b[2] + id * b[0];

    let q = DMatrix::from_column_slice(D, D, (v - u).as_slice());
    let p = DMatrix::from_column_slice(D, D, (v + u).as_slice());
    let sol = q.lu().solve(&p).expect("Pade denominator is nonsingular for scaled input");
    let mut r = SMatrix::<f64, D, D>::from_column_slice(sol.as_slice());
    for _ in 0..squarings {
        r = r * r;
    }
    r
}
