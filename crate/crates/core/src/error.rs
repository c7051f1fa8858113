use thiserror::Error;

/// Errors raised by domain construction, discretization and the solver.
///
/// Circle numbers in messages are 1-based; the `usize` fields are 0-based
/// indices into [`CircleDomain::circles`](crate::CircleDomain::circles).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GnkError {
    #[error("a circle domain needs at least one circle")]
    EmptyDomain,

    #[error("circle {} has non-positive radius {radius}", .index + 1)]
    NonPositiveRadius { index: usize, radius: f64 },

    #[error(
        "circles {} and {} overlap or touch (center distance {distance}, radius sum {radius_sum})",
        .first + 1, .second + 1
    )]
    Overlap {
        first: usize,
        second: usize,
        distance: f64,
        radius_sum: f64,
    },

    #[error("grid size must be even and at least 4, got {0}")]
    InvalidGridSize(usize),

    #[error("periodic samples must have even, non-zero length, got {0}")]
    OddLength(usize),

    #[error("parameter point t={t} on circle {} is invalid for a domain of {m} circles", .circle + 1)]
    InvalidParamPoint { t: f64, circle: usize, m: usize },

    #[error("kernel M is only defined across circles; same-circle pairs go through M1 and the conjugation operator")]
    SameCircle,

    #[error("shape mismatch for {what}: expected {expected}, found {found}")]
    ShapeMismatch {
        what: &'static str,
        expected: String,
        found: String,
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("linear system is numerically singular (condition estimate {condition:.3e})")]
    NearSingular { condition: f64 },

    #[error("point {re}{im:+}i lies inside or on circle {}", .circle + 1)]
    PointInsideDisk { re: f64, im: f64, circle: usize },

    #[error("{0}")]
    InvalidArgument(String),

    #[error(
        "singular value gap {gap:.3e} around threshold for {operator} is below the required {required:.0e}"
    )]
    AmbiguousRank {
        operator: &'static str,
        gap: f64,
        required: f64,
    },
}

pub type Result<T, E = GnkError> = std::result::Result<T, E>;
