use thiserror::Error;

/// Errors raised by the algebra, metric, draw and law layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse rational literal {0:?}")]
    ParseRational(String),
    #[error("duplicate label {0:?} in space")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("coordinate count {coords} does not match {labels} labels")]
    CoordCount { labels: usize, coords: usize },
    #[error("element index {index} lies outside a space of {size} elements")]
    SpaceMismatch { index: usize, size: usize },
    #[error("invalid distribution: {0}")]
    InvalidDist(String),
    #[error("operation needs a non-empty multiset")]
    EmptyMultiset,
    #[error("multiset subtraction underflows")]
    SubtractionUnderflow,
    #[error("sizes differ: {left} vs {right}")]
    SizeMismatch { left: u64, right: u64 },
    #[error("tuple lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("support multisets have mixed sizes {0} and {1}")]
    MixedSizes(u64, u64),
    #[error("cannot draw {draw} balls from an urn of size {urn}")]
    Overdraw { draw: u64, urn: u64 },
    #[error("size {size} exceeds the enumeration cap {cap}")]
    CapExceeded { size: u64, cap: u64 },
    #[error("metric axiom violated: {0}")]
    MetricAxiom(String),
    #[error("numeric metric needs coordinates on the space")]
    MissingCoords,
    #[error("empty set has no diameter")]
    EmptySet,
    #[error("distribution weights have denominators not dividing {0}")]
    NotInDk(u64),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
