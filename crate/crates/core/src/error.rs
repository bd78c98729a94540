use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("incompatible real bases: {0}")]
    BaseMismatch(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("frequency {0} is not an integer point of the lift lattice")]
    Lattice(String),

    #[error("frequency {0} lies outside the rational span of the basis")]
    Span(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("order r = {0} is not admitted (1 <= r <= 7)")]
    Order(u32),

    #[error("CFL violation: dt = {dt} exceeds the admissible step {max_dt}")]
    Cfl { dt: f64, max_dt: f64 },

    #[error("maximum principle violated at step {step}: range [{min}, {max}] left [{lo}, {hi}]")]
    MaximumPrinciple {
        step: usize,
        min: f64,
        max: f64,
        lo: f64,
        hi: f64,
    },

    #[error("profile range [{lo}, {hi}] is not inside the affine interval [{a}, {b}]")]
    Range { lo: f64, hi: f64, a: f64, b: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
