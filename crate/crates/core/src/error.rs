use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Algorithm 1 hit its pass cap. The last observed largest neighbour gap
    /// is reported for diagnosis.
    #[error("max-min allocation did not converge after {iterations} passes (largest gap {gap:e})")]
    NoConvergence { iterations: usize, gap: f64 },

    #[error("no sweep point has rms delay <= {tolerance} s")]
    Infeasible { tolerance: f64 },

    #[error("quadrature tolerance not met within {subdivisions} subdivisions")]
    QuadratureBudget { subdivisions: usize },
}
