//! Littlewood-Paley blocks on the lattice and the Morrey-type norms built
//! on them.

pub mod homogeneous;
pub mod inequalities;
pub mod morrey;
pub mod norms;
pub mod partition;

pub use homogeneous::make_homogeneous_data;
pub use morrey::{morrey_norm, morrey_norm_magnitudes, morrey_points};
pub use norms::{
    admissible_case, block_profile, chemin_lerner_from_profiles, chemin_lerner_norm, critical_s, fbm_norm, xr_norm,
    xr_norm_from_profiles, AdmissibleCase, BlockProfile, Exponent, NormParams,
};
pub use partition::{build_lp_partition, LPPartition};
