//! Pseudo-spectral simulator and verification lab for the fractional
//! Boussinesq system with rotation and stratification on a periodic box.

pub mod error;
pub mod fft;
pub mod field;
pub mod function_spaces;
pub mod grid;
pub mod harness;
pub mod paraproduct;
pub mod snapshot;
pub mod solver;
pub mod symbols;

pub use error::{Error, Result};
pub use field::{dealias, forward_transform, inverse_transform, Samples4, ScalarField, SpectralField4};
pub use grid::{make_grid, GridSpec};
pub use symbols::{Convention, PhysParams, Symbol4x4};
