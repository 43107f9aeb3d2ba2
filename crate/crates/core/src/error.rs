use crate::thermo::EosModel;

pub type Result<T> = std::result::Result<T, EosError>;

/// Failure modes shared by the kernels, solvers and calibration routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EosError {
    /// State outside the physical domain of the law (v ≤ b, e ≤ q, ...).
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("model mismatch: expected {expected}, found {found}")]
    ModelMismatch { expected: EosModel, found: EosModel },
    /// Calibration inputs that do not determine the parameters.
    #[error("degenerate data: {0}")]
    DegenerateData(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error(
        "rank-deficient least-squares system (condition estimate {condition:.3e}): insufficient temperature spread"
    )]
    RankDeficiency { condition: f64 },
    #[error("root not bracketed: g({lo:e}) = {g_lo:e}, g({hi:e}) = {g_hi:e}")]
    Bracket { lo: f64, hi: f64, g_lo: f64, g_hi: f64 },
    #[error("no convergence after {iterations} iterations (last step {last_step:e})")]
    Convergence { iterations: usize, last_step: f64 },
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl EosError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        EosError::Domain(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        EosError::Validation(msg.into())
    }
}
