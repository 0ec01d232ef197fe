use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid potential spec: {0}")]
    InvalidSpec(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("f evaluated at its pole z = 0")]
    PoleEvaluation,

    #[error("z = {0} lies on the logarithm branch cut")]
    BranchCut(Complex64),

    #[error("gradient of W is singular at z = {0} (q < 2, |f| below guard)")]
    SingularGradient(Complex64),

    #[error("degenerate segment: |g(beta) - g(alpha)| = {0:e}")]
    DegenerateSegment(f64),

    #[error("f'(alpha) vanishes at alpha = {0}; cannot desingularize the start")]
    StartDegenerate(Complex64),

    #[error("adaptive stepper underflow at l = {l}")]
    StepFailure { l: f64 },

    #[error("curve does not reach its target endpoint")]
    NotConnected,

    #[error("no existence transition in the scanned range")]
    NoTransition,

    #[error("no connection found between {alpha} and {beta}")]
    UnexpectedNonexistence { alpha: Complex64, beta: Complex64 },

    #[error("branch curves are not mirror images: {0}")]
    BranchAsymmetry(String),

    #[error("hypothesis check failed: {0}")]
    HypothesisViolated(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
