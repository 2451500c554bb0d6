use thiserror::Error;

/// Errors raised by the geometric and metric operations of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("non-finite coordinate in {0}")]
    NonFiniteCoordinate(&'static str),

    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },

    #[error("{0} must be a finite point, not infinity")]
    InfinitePoint(&'static str),

    #[error("the point pairs of a cross-ratio must be disjoint")]
    SharedPoint,

    #[error("points must be distinct")]
    CoincidentPoints,

    #[error("matrix is not orthogonal (|Q^T Q - I| = {0:e})")]
    NotOrthogonal(f64),

    #[error("normal vector has zero length")]
    ZeroNormal,

    #[error("domain needs at least one obstacle")]
    NoObstacles,

    #[error("witness point lies in obstacle #{0}")]
    WitnessInObstacle(usize),

    #[error("{0} lies outside the domain")]
    OutsideDomain(&'static str),

    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    #[error("nesting violated: {0}")]
    NestingViolated(&'static str),

    #[error("diameter is only a sampled lower bound and cannot certify a contraction bound")]
    UncertifiedDelta,

    #[error("map does not send the outer domain into the inner domain")]
    NotInGamma,

    #[error("{cells} cells exceed the cap of {cap}")]
    CellCapExceeded { cells: u128, cap: usize },

    #[error("no normalizing point: the complement of the outer domain has no interior")]
    NoNormalizingPoint,

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    #[error("diameter must be non-negative, got {0}")]
    NegativeDelta(f64),

    #[error("diameter must be finite")]
    InfiniteDelta,

    #[error("path leaves the domain at segment {segment}, parameter {t}")]
    PathLeavesDomain { segment: usize, t: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
