use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Exhaustive enumeration was requested above the configured cap.
    #[error("enumeration cap exceeded: n = {n} is above the cap {cap}")]
    EnumerationCap { n: u64, cap: u64 },

    /// An exact count was requested above the DP feasibility cap.
    #[error("exact counting infeasible: n = {n} exceeds the cap {cap}")]
    InfeasibleExact { n: u64, cap: u64 },

    /// A root finder stopped without meeting its residual target.
    #[error("solver did not converge: {0}")]
    NonConvergence(String),

    /// A root finder could not bracket a sign change.
    #[error("failed to bracket a root: {0}")]
    BracketFailure(String),

    /// A level sum hit the configured level cap before its tail certificate.
    #[error("level sum not converged within {max_levels} levels (tolerance {tolerance:e})")]
    Truncation { max_levels: usize, tolerance: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
