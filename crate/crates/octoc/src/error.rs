//! Error types shared across the toolkit.

use thiserror::Error;

/// Top-level error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("integration diverged (non-finite state); last valid node {last_valid}")]
    Diverged { last_valid: usize },

    #[error("step size underflow at t = {t}: stiffness or singularity")]
    StepUnderflow { t: f64 },

    #[error("invalid time interval: t0 = {t0}, t1 = {t1}")]
    BadInterval { t0: f64, t1: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate order: |{quantity}| below 1e-12 at an evaluation point")]
    DegenerateOrder { quantity: String },

    #[error("Newton: singular Jacobian (condition estimate {cond:.3e})")]
    SingularJacobian { cond: f64 },

    #[error("Newton: no residual decrease after full backtracking at iteration {iter}")]
    NoDecrease { iter: usize },

    #[error("Newton: maximum iterations ({0}) exceeded")]
    MaxIterations(usize),

    #[error("guess crosses obstacle: log barrier evaluated on nonpositive argument")]
    GuessCrossesObstacle,

    #[error("CFL violation: dt = {dt} exceeds dt_max = {dt_max}")]
    CflViolation { dt: f64, dt_max: f64 },

    #[error("non-finite objective at initial guess")]
    NonFiniteObjective,

    #[error("hyperbolicity failure: eigenvalue with |Re| < 1e-10 (Kalman condition violated?)")]
    NotHyperbolic,

    #[error("unknown problem variant: {0}")]
    UnknownVariant(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("empty data: {0}")]
    EmptyData(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("config error: {0}")]
    Config(String),

    #[error("bad table file: {0}")]
    BadTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
