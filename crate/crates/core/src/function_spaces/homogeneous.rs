//! Band-cut homogeneous test data.

use num_complex::Complex64;

use super::norms::NormParams;
use crate::error::{Error, Result};
use crate::field::SpectralField4;
use crate::grid::GridSpec;
use crate::symbols::helmholtz_symbol;

/// Fixed polarization projected per mode.
const POLARIZATION: [f64; 4] = [0.5, 0.5, 0.5, 0.5];

/// Field whose Fourier density is `|xi|^{-(3 - k)} P(xi) e` on the dealiased
/// lattice minus the origin, where `-k = degree` is the homogeneity degree in
/// physical space. `degree` must equal `s - 3 + (3 - mu)/q`.
pub fn make_homogeneous_data(degree: f64, params: &NormParams, grid: &GridSpec) -> Result<SpectralField4> {
    params.validate()?;
    let expected = params.s - 3.0 + (3.0 - params.mu) / params.q;
    if (degree - expected).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "incompatible degree {degree}: the indices (s={}, q={}, mu={}) call for {expected}",
            params.s, params.q, params.mu
        )));
    }
    let power = -degree - 3.0;
    let cell = grid.frequency_cell_volume();
    let mut field = SpectralField4::zeros(*grid);
    for f in 1..grid.len() {
        if !grid.in_dealias_mask(f) {
            continue;
        }
        let xi = grid.wavevector(f);
        let amp = cell * grid.wavenumber_magnitude(f).powf(power);
        let p = helmholtz_symbol(&xi)?;
        let e = POLARIZATION.map(|x| Complex64::new(amp * x, 0.0));
        field.set_mode(f, p.apply(&e));
    }
    field.real_valued = true;
    Ok(field)
}
