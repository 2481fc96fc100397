//! Crate-wide error type and process exit-code mapping.

use thiserror::Error;

/// Everything that can go wrong across the library.
///
/// Variants are grouped by severity: configuration and usage problems map to
/// exit code 1, violated runtime invariants to 2, and numerical convergence
/// failures to 3 (see [`Error::exit_code`]).
#[derive(Debug, Error)]
pub enum Error {
    #[error("state norm {norm} deviates from 1 beyond tolerance {tol}")]
    Norm { norm: f64, tol: f64 },

    #[error("distribution entry at index {index} is negative or not finite")]
    InvalidDistribution { index: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("cost vector length {len} is not a power of two")]
    NotPowerOfTwo { len: usize },

    #[error("cost entry at index {index} is not finite")]
    NonFiniteCost { index: usize },

    #[error("maximum cost {max} exceeds ceiling {ceiling}")]
    CeilingExceeded { max: f64, ceiling: f64 },

    #[error("time {time} outside schedule range [0, {total}]")]
    TimeOutOfRange { time: f64, total: f64 },

    #[error("schedule is not strictly increasing near time {time}")]
    NonMonotoneSchedule { time: f64 },

    #[error("secular function undefined at t = {t} (non-positive denominator)")]
    Domain { t: f64 },

    #[error("secular root search failed at s = {s} (residual {residual})")]
    ConvergenceFailure { s: f64, residual: f64 },

    #[error("crossing pattern broken at s = {s}: amplitude {index} rises above the crossing index")]
    SignPatternViolation { s: f64, index: usize },

    #[error("dense oracle rejected dimension {dim} (ceiling {ceiling})")]
    OracleTooLarge { dim: usize, ceiling: usize },

    #[error("eigensolve residual {residual} at s = {s} exceeds oracle tolerance")]
    EigensolveFailure { s: f64, residual: f64 },

    #[error("integrator norm drift {drift} exceeds budget {budget}")]
    NormDriftExceeded { drift: f64, budget: f64 },

    #[error("step dt = {dt} exceeds stability limit {limit}")]
    StepTooLarge { dt: f64, limit: f64 },

    #[error("convergence probe failed: {detail}")]
    NonConvergent { detail: String },

    #[error("sandwich bound violated at s = {s}, k = {k}: excess {excess}")]
    SandwichViolation { s: f64, k: usize, excess: f64 },

    #[error("invalid configuration: {detail}")]
    InvalidConfig { detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: 1 = configuration or usage error,
    /// 2 = violated invariant or assertion, 3 = numerical convergence failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotPowerOfTwo { .. }
            | Error::NonFiniteCost { .. }
            | Error::CeilingExceeded { .. }
            | Error::LengthMismatch { .. }
            | Error::TimeOutOfRange { .. }
            | Error::NonMonotoneSchedule { .. }
            | Error::OracleTooLarge { .. }
            | Error::StepTooLarge { .. }
            | Error::InvalidConfig { .. }
            | Error::Io(_)
            | Error::Json(_) => 1,
            Error::Norm { .. }
            | Error::InvalidDistribution { .. }
            | Error::Domain { .. }
            | Error::SignPatternViolation { .. }
            | Error::NormDriftExceeded { .. }
            | Error::SandwichViolation { .. } => 2,
            Error::ConvergenceFailure { .. }
            | Error::EigensolveFailure { .. }
            | Error::NonConvergent { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
