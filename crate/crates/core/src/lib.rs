//! Two-dimensional quasistatic brittle fracture on adaptive triangulations.
//!
//! The crate discretizes a Griffith-type variational fracture model in
//! space (discontinuous piecewise-affine fields on adaptively subdivided
//! structured meshes) and in time (incremental unilateral minimization
//! against the accumulated crack). It ships:
//!
//! * `mesh` — structured background triangulations and knot-driven 4-way
//!   subdivision with explicit sub-edge topology;
//! * `model` — bulk / body / surface-force / crack-surface densities with
//!   growth-constant bookkeeping and quadrature;
//! * `fespace` — discontinuous fields, jump sets, Dirichlet mismatch,
//!   degree-of-freedom assembly under crack topology, jump transfer;
//! * `crack` — crack sets as sub-edge collections, surface energy, the
//!   knot-projection interpolating curve, initial-crack approximation;
//! * `solver` — the per-step minimization: convex elastic inner solves,
//!   an exhaustive enumeration oracle, and a greedy heuristic;
//! * `evolution` — the time-stepping driver, the energy ledger with work
//!   integrals and the per-step error term, and the refinement study;
//! * `config` / `preset` / `export` — run configuration, shipped
//!   scenarios, and VTK/JSON/CSV artifact emission.

pub mod config;
pub mod crack;
pub mod error;
pub mod evolution;
pub mod export;
pub mod fespace;
pub mod formula;
pub mod geom;
pub mod mesh;
pub mod model;
pub mod preset;
pub mod solver;

pub use error::{Error, Result};
