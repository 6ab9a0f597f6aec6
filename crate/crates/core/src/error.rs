use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unusable discretization: {0}")]
    InvalidGrid(String),

    #[error("shape mismatch: expected {expected} samples, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("symbol is singular at the zero wavenumber")]
    ZeroWavenumber,

    #[error("closed form unavailable: the semigroup is only known in closed form when nu == kappa (nu = {nu}, kappa = {kappa})")]
    ClosedFormUnavailable { nu: f64, kappa: f64 },

    #[error("inadmissible indices: {0}")]
    Inadmissible(String),

    #[error("field is not divergence-free (relative defect {0:e})")]
    NotDivergenceFree(f64),

    #[error("Picard iteration did not converge after {} iterations; distances {distances:?}", distances.len())]
    NonConvergence { distances: Vec<f64> },

    #[error("bad snapshot: {0}")]
    Snapshot(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
