use crate::error::{Error, Result};
use crate::field::{ScalarField, SpectralField4};
use crate::symbols::PhysParams;

/// Relative divergence allowed for the input velocity.
const DIVERGENCE_TOL: f64 = 1e-10;

/// `(u, theta) -> v = (u, sqrt(g) theta / brunt)`.
pub fn rescale_variables(u0: [&ScalarField; 3], theta0: &ScalarField, params: &PhysParams) -> Result<SpectralField4> {
    if !(params.brunt > 0.0) {
        return Err(Error::InvalidParameter("rescaling needs brunt > 0".into()));
    }
    if !(params.gravity > 0.0) {
        return Err(Error::InvalidParameter("rescaling needs gravity > 0".into()));
    }
    let b = theta0.scaled(params.gravity.sqrt() / params.brunt);
    let v = SpectralField4::from_scalars(u0, &b)?;
    let defect = v.divergence_defect();
    if defect > DIVERGENCE_TOL {
        return Err(Error::NotDivergenceFree(defect));
    }
    Ok(v)
}

/// Inverse of [`rescale_variables`]: `(u, brunt b / sqrt(g))`.
pub fn unrescale_variables(v: &SpectralField4, params: &PhysParams) -> Result<([ScalarField; 3], ScalarField)> {
    if !(params.brunt > 0.0 && params.gravity > 0.0) {
        return Err(Error::InvalidParameter("rescaling needs brunt > 0 and gravity > 0".into()));
    }
    let u = [v.component(0), v.component(1), v.component(2)];
    let theta = v.component(3).scaled(params.brunt / params.gravity.sqrt());
    Ok((u, theta))
}
