use thiserror::Error;

/// Errors raised by the algebra, space, certifier, solver and gallery layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("element is not positive (minimum eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("norm {norm} must be strictly below {limit}")]
    NormTooLarge { norm: f64, limit: f64 },

    #[error("I - a is numerically singular")]
    Singular,

    #[error("eigensolver did not converge (ill-conditioned input)")]
    EigenFailure,

    #[error("gauge q({x}, {y}) has norm {norm} >= 1")]
    GaugeNormTooLarge { x: f64, y: f64, norm: f64 },

    #[error("gauge q({x}, {y}) is not central")]
    GaugeNotCentral { x: f64, y: f64 },

    #[error("gauge q({x}, {y}) is not positive")]
    GaugeNotPositive { x: f64, y: f64 },

    #[error("delta({x}, {y}) is not positive")]
    DeltaNotPositive { x: f64, y: f64 },

    #[error("element is not central")]
    NotCentral,

    #[error("point {0} lies outside the domain")]
    OutsideDomain(f64),

    #[error("map sends {x} to {image}, outside the domain")]
    MapLeavesDomain { x: f64, image: f64 },

    #[error("scenario has no second map S")]
    MissingSecondMap,

    #[error("sample is empty")]
    EmptySample,

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("need at least {needed} starting points, got {got}")]
    TooFewStarts { needed: usize, got: usize },

    #[error("unknown gallery entry `{id}`; available: {}", available.join(", "))]
    UnknownEntry { id: String, available: Vec<String> },
}

pub type Result<T> = std::result::Result<T, Error>;
