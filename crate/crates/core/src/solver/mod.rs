//! Mild-solution machinery: linear propagation, the transport nonlinearity,
//! Duhamel integrals, Picard iteration and an exponential integrator.

pub mod duhamel;
pub mod linear;
pub mod nonlinear;
pub mod picard;
pub mod rescale;
pub mod stepper;
pub mod trajectory;

pub use duhamel::{duhamel_bilinear, duhamel_bilinear_with, duhamel_integral, zeta_with};
pub use linear::{apply_semigroup, apply_semigroup_with, phi_function, Dynamics, LinearOperator, MultiplierTable};
pub use nonlinear::nonlinear_term;
pub use picard::{picard_solve, ContractionReport, Solver};
pub use rescale::{rescale_variables, unrescale_variables};
pub use stepper::{step_exponential, ExponentialStepper, Scheme};
pub use trajectory::{read_archive, uniform_times, write_archive, Manifest, Trajectory};
