use thiserror::Error;

/// Errors raised by the verification engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("color {color} out of range for a {k}-color classifier")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("both sides of a race confirmed at fuel {fuel}")]
    IncoherentRace { fuel: u32 },
    #[error("hyperplane normal vector is zero")]
    ZeroNormal,
    #[error("network shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("radius must be positive")]
    NonpositiveRadius,
    #[error("augmentation count {requested} exceeds cap {cap}")]
    AugmentationCapExceeded { requested: usize, cap: usize },
    #[error("invalid rational {0:?}")]
    InvalidRational(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
