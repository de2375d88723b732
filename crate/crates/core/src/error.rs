use alloc::string::String;

/// Errors raised by the exact computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("objects live on different spaces or have incompatible sizes")]
    SpaceMismatch,
    #[error("exponential of a class with nonzero constant term")]
    NonNilpotentExponent,
    #[error("index {index} out of range 1..={bound}")]
    InvalidIndex { index: usize, bound: usize },
    #[error("class has non-real coefficients")]
    NotARealClass,
    #[error("lattice vector is not integral")]
    NonIntegral,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("central charge vanishes")]
    ZeroCharge,
    #[error("basis vectors are linearly dependent")]
    DegenerateBasis,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero vector has no norm ratio")]
    ZeroVector,
    #[error("all genera must be positive")]
    PositiveGenusRequired,
    #[error("the Kummer setting needs two elliptic curves")]
    InvalidKummer,
    #[error("genus pattern is not preserved by the action")]
    NotSymmetricSpace,
    #[error("generator {0} is not unimodular")]
    NotUnimodular(usize),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidSpace(_) => "InvalidSpace",
            Error::SpaceMismatch => "SpaceMismatch",
            Error::NonNilpotentExponent => "NonNilpotentExponent",
            Error::InvalidIndex { .. } => "InvalidIndex",
            Error::NotARealClass => "NotARealClass",
            Error::NonIntegral => "NonIntegral",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::ZeroCharge => "ZeroCharge",
            Error::DegenerateBasis => "DegenerateBasis",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::ZeroVector => "ZeroVector",
            Error::PositiveGenusRequired => "PositiveGenusRequired",
            Error::InvalidKummer => "InvalidKummer",
            Error::NotSymmetricSpace => "NotSymmetricSpace",
            Error::NotUnimodular(_) => "NotUnimodular",
            Error::InvalidAction(_) => "InvalidAction",
            Error::MalformedRational(_) => "MalformedRational",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
