//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A region or boundary label does not align with the background grid.
    #[error("non-conforming domain: {0}")]
    NonConformingDomain(String),

    /// An adaptive knot parameter lies outside the admissible range [a, 1-a].
    #[error("knot parameter {t} outside [{lo}, {hi}]")]
    ParamOutOfRange { t: f64, lo: f64, hi: f64 },

    /// A jump segment touches a mesh vertex, overlaps an edge, or otherwise
    /// violates the generic-position assumptions of the curve construction.
    #[error("non-generic position: {0}")]
    NonGenericPosition(String),

    /// A projected crack edge is not crackable (outside the brittle closure).
    #[error("crack outside brittle region: {0}")]
    CrackOutsideBrittle(String),

    /// An analytic formula fails to parse or evaluate.
    #[error("formula error: {0}")]
    FormulaError(String),

    /// The body potential has no confinement term and the caller did not
    /// acknowledge the degenerate regime.
    #[error("degenerate model: kappa_f = 0 without acknowledgment")]
    DegenerateModel,

    /// The nonlinear elastic solve failed to reach its tolerance.
    #[error("elastic solve failed: {0}")]
    SolveFailure(String),

    /// The exhaustive step solver was asked to enumerate too many edges.
    #[error("enumeration cap exceeded: {n_edges} crackable edges > cap {cap}")]
    EnumerationCapExceeded { n_edges: usize, cap: usize },

    /// Bad run configuration.
    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
