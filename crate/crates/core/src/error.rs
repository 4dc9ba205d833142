use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown flag space {name:?}; available: {available}")]
    UnknownSpace { name: String, available: String },

    #[error("dimension d{index} must be positive, got {value}")]
    NonPositiveDimension { index: usize, value: i64 },

    #[error("structure constant c_11^2 would be negative (numerator {numerator})")]
    NegativeConstant { numerator: i64 },

    #[error("invalid flag space: {0}")]
    InvalidSpace(String),

    #[error("expected {expected} metric coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("metric coordinate x{index} = {value} is not strictly positive")]
    NonPositiveCoordinate { index: usize, value: f64 },

    #[error("operation requires r = {expected}, space has r = {got}")]
    WrongRank { expected: usize, got: usize },

    #[error("solver failure: {0}")]
    SolverFailure(String),

    #[error("integration step size underflow at t = {t}")]
    StepFailure { t: f64 },

    #[error("fixed point is not hyperbolic: eigenvalue {re}{im:+}i has real part within tolerance of zero")]
    NonHyperbolic { re: f64, im: f64 },

    #[error("direction is not Einstein: residual {residual:e}")]
    NotEinstein { residual: f64 },

    #[error("t = {t} is outside the domain (-inf, {extinction_time})")]
    Domain { t: f64, extinction_time: f64 },

    #[error("catalog format error: {0}")]
    Catalog(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
