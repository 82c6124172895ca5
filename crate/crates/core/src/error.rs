use thiserror::Error;

/// Failures of the Cartesian geometry layers (primitives, quadrilaterals,
/// incenters, constructions).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("non-finite coordinate in input")]
    NonFinite,
    #[error("points coincide (distance {distance:e})")]
    CoincidentPoints { distance: f64 },
    #[error("lines are identical")]
    IdenticalLines,
    #[error("angle is degenerate: the two rays are opposite")]
    DegenerateAngle,
    #[error("points are collinear (signed area {area:e})")]
    CollinearPoints { area: f64 },
    #[error("quadrilateral is not strictly convex")]
    NotConvex,
    #[error(
        "quadrilateral is a parallelogram: diagonal midpoints coincide, Newton line undefined"
    )]
    Parallelogram,
    #[error("bisector at {apex} is parallel to the Newton line")]
    BisectorParallelToNewtonLine { apex: char },
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("no sign change on the open arc: g(start) = {g_start:e}, g(end) = {g_end:e}")]
    NoBracket { g_start: f64, g_end: f64 },
    #[error("hyperbola foci coincide")]
    CoincidentFoci,
}

/// A self-check failed on input that satisfied its precondition. Signals a
/// bug, not bad input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConsistencyError {
    #[error("quadrilateral is not classified {expected}")]
    WrongClass { expected: &'static str },
    #[error("{check}: measured {value:e} exceeds tolerance {tolerance:e}")]
    Violation {
        check: &'static str,
        value: f64,
        tolerance: f64,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
