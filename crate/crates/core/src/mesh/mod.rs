//! Background triangulations and their adaptive 4-way subdivisions.
//!
//! The background family is fixed: a structured crossed-diagonal grid
//! (each size-epsilon square split along one diagonal, orientation
//! alternating in a checkerboard). This makes the regularity constants
//! explicit and every construction reproducible. Regions and boundary
//! labels are restricted to grid-aligned rectilinear geometry so that
//! the brittle set is a union of triangles and labeled boundary parts
//! are unions of edges.

mod adaptive;
mod domain;
mod regular;

pub use adaptive::{AdaptiveParams, AdaptiveTriangulation, SubEdge, SubEdgeKind, SubTri};
pub use domain::{BoundaryLabel, DomainSpec, Rect, Region, Segment};
pub use regular::{
    build_structured_mesh, check_regularity, Edge, RegularTriangulation, RegularityReport,
    Triangle, REG_C1, REG_C2, REG_THETA1, REG_THETA2,
};
