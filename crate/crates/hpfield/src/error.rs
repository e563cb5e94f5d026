use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("grade mismatch: {left} vs {right}")]
    GradeMismatch { left: usize, right: usize },

    #[error("variance mismatch: expected {expected:?}")]
    VarianceMismatch { expected: crate::exterior::Variance },

    #[error("blade index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("blade indices must be strictly increasing and unique")]
    MalformedBlade,

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("degenerate annihilator basis: rank {rank} < {count} generators")]
    DegenerateSubspace { rank: usize, count: usize },

    #[error("Newton iteration stalled: residual {residual:.3e} after {iterations} iterations")]
    NonConvergence { residual: f64, iterations: usize },

    #[error("singular Jacobian: LU pivot failure on {size}x{size} system")]
    SingularJacobian { size: usize },

    #[error("CFL violation: dt/dx = {ratio:.3} exceeds 1")]
    CflViolation { ratio: f64 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
