use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft;
use crate::field::SpectralField4;

/// `N(v, w) = -P(xi) [sum_m i xi_m (v_m w_k)^]_{k=1..4}`: transport of `w` by
/// the velocity part of `v`, projected and dealiased. Products are formed in
/// physical space.
pub fn nonlinear_term(v: &SpectralField4, w: &SpectralField4) -> Result<SpectralField4> {
    if v.grid != w.grid {
        return Err(Error::GridMismatch);
    }
    let grid = v.grid;
    let n = grid.n_per_axis();
    let len = grid.len();
    let same = std::ptr::eq(v, w) || v == w;

    let to_phys = |c: &Vec<Complex64>| {
        let mut x = c.clone();
        fft::inverse(&mut x, n);
        x
    };
    let vp: Vec<Vec<Complex64>> = v.comps[..3].iter().map(to_phys).collect();
    let wp: Vec<Vec<Complex64>> = if same {
        let mut all = vp.clone();
        all.push(to_phys(&v.comps[3]));
        all
    } else {
        w.comps.iter().map(to_phys).collect()
    };

    let scale = 1.0 / len as f64;
    let mut spectra: [[Option<Vec<Complex64>>; 4]; 3] = Default::default();
    for m in 0..3 {
        for k in 0..4 {
            if same && k < 3 && k < m {
                continue;
            }
            let mut prod: Vec<Complex64> = vp[m].iter().zip(&wp[k]).map(|(a, b)| a * b * scale).collect();
            fft::forward(&mut prod, n);
            spectra[m][k] = Some(prod);
        }
    }
    let spec = |m: usize, k: usize| -> &Vec<Complex64> {
        match &spectra[m][k] {
            Some(s) => s,
            None => spectra[k][m].as_ref().expect("symmetric product computed"),
        }
    };

    let mut out = SpectralField4::zeros(grid);
    out.real_valued = v.real_valued && w.real_valued;
    let i = Complex64::new(0.0, 1.0);
    for f in 1..len {
        if !grid.in_dealias_mask(f) {
            continue;
        }
        let xi = grid.wavevector(f);
        let mut d = [Complex64::new(0.0, 0.0); 4];
        for (k, dk) in d.iter_mut().enumerate() {
            *dk = i * (xi[0] * spec(0, k)[f] + xi[1] * spec(1, k)[f] + xi[2] * spec(2, k)[f]);
        }
        let k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        let proj = (xi[0] * d[0] + xi[1] * d[1] + xi[2] * d[2]) / k2;
        for a in 0..3 {
            out.comps[a][f] = -(d[a] - xi[a] * proj);
        }
        out.comps[3][f] = -d[3];
    }
    Ok(out)
}
