//! Two-incenter geometry of convex quadrilaterals.

pub mod barycentric;
pub mod classify;
pub mod construct;
pub mod error;
pub mod geom;
pub mod incenters;
pub mod quad;
pub mod report;
pub mod sample;
pub mod svg;
pub mod verify;

pub use error::{ConsistencyError, GeometryError};
pub use geom::{Circle, Line, MeetPoint, Point, Vector};
pub use quad::ConvexQuadrilateral;
