use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("direction vector is zero")]
    ZeroDirection,

    #[error("zero-series: no nonzero coefficient through order {trunc}")]
    ZeroSeries { trunc: usize },

    #[error("series domain error: {0}")]
    SeriesDomain(String),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial is not convenient (Newton boundary misses axis {axis})")]
    NotConvenient { axis: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{what} did not converge after {iterations} iterations (residual {residual:e})")]
    SolverFailure {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("no active set produced a valid projection (best residual {residual:e})")]
    NoProjectionCandidate { residual: f64 },

    #[error("caller assertion violated: {0}")]
    AssertionViolated(String),

    #[error("required assertion not supplied: {0}")]
    NotAsserted(&'static str),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("tangent kernel is not one-dimensional")]
    KernelDegenerate,

    #[error("singular linear system: {0}")]
    SingularSystem(&'static str),

    #[error("step {step}: {source}")]
    AtStep {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("recursion map is not increasing near step {step}")]
    MonotonicityViolation { step: usize },

    #[error("insufficient data: need {needed} points, have {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("prediction carries no limit constant")]
    MissingConstant,

    #[error("prediction inapplicable: {0}")]
    Inconclusive(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
