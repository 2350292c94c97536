use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not symmetric (max |a_ij - a_ji| = {deviation:e})")]
    Asymmetric { deviation: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("vector is not a unit vector (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("not a finite Coxeter group: {0}")]
    NotFinite(String),

    #[error("group too large or not finite: more than {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("orientation error: det(n_1..n_k) = {det} must be positive")]
    Orientation { det: f64 },

    #[error("point is not on the simplex: {0}")]
    Simplex(String),

    #[error("invariance failure: {0}")]
    InvarianceFailure(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("optimizer did not converge after {iterations} iterations (best lambda {best_value})")]
    OptimizerStalled {
        iterations: usize,
        best_point: Vec<f64>,
        best_value: f64,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("usage error: {0}")]
    Usage(String),
}
