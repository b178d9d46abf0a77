use thiserror::Error;

pub type Result<T, E = CurvatureError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurvatureError {
    #[error("invalid signature ({p},{q}): {reason}")]
    InvalidSignature { p: usize, q: usize, reason: &'static str },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("component array has {found} entries, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("signature ({p},{q}) has no unit vectors of norm {sign}")]
    UnsatisfiableSign { sign: i8, p: usize, q: usize },

    #[error("signature ({p},{q}) admits no {mode} null vectors for this sampler")]
    NoNullVectors { mode: &'static str, p: usize, q: usize },

    #[error("degenerate subspace at vector {index} (|(v,v)| = {norm:e} below tolerance)")]
    DegenerateSubspace { index: usize, norm: f64 },

    #[error("gave up after {attempts} redraws")]
    ExhaustedRedraws { attempts: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("form is not symmetric (residual {residual:e})")]
    NotSymmetric { residual: f64 },

    #[error("symmetry projection did not converge after {iterations} iterations (residual {residual:e})")]
    ProjectionDiverged { iterations: usize, residual: f64 },

    #[error("vector is not null: |(x,x)| = {norm:e}")]
    NotNull { norm: f64 },

    #[error("least-squares design is ill-conditioned (condition number {condition:e})")]
    IllConditioned { condition: f64 },
}
