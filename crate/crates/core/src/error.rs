use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ladder size must be an even integer >= 4, got {0}")]
    InvalidLadderSize(usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("dimension mismatch for {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix is not symmetric (max |a_ij - a_ji| = {0:e})")]
    NotSymmetric(f64),

    #[error(
        "eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("source vector has a null-mode component {component:e} (tolerance {tolerance:e}); links and kernel are inconsistent")]
    NullProjection { component: f64, tolerance: f64 },

    #[error("graph is not connected: {null_count} eigenvalues below the zero tolerance")]
    Disconnected { null_count: usize },

    #[error("mode with zero eigenvalue has a divergent Gaussian integral")]
    DivergentMode,

    #[error("graph is not a canonically indexed ladder: {0}")]
    NonCanonicalLadder(String),

    #[error("sweep list is empty")]
    EmptySweep,

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
