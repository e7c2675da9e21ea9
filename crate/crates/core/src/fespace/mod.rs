//! Discontinuous piecewise-affine vector fields on adaptive triangulations.
//!
//! A field stores one affine map per subtriangle through its three corner
//! values, together with the set of sub-edges declared discontinuous (the
//! crack topology). Degrees of freedom are corner values merged by
//! union-find across every non-cracked interior sub-edge; Dirichlet
//! sub-edges outside the topology pin their endpoint values to the nodal
//! interpolant of the boundary deformation.

mod boundary;
mod dofs;
mod field;
mod transfer;

pub use boundary::{nodal_interpolant, BoundaryDeformation};
pub use dofs::DofMap;
pub use field::{DiscreteField, JUMP_TOL};
pub use transfer::{interpolate_to_fespace, SidedTarget, TransferResult};
