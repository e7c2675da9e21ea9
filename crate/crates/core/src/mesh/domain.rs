//! Polygonal domain description: regions and boundary labels.

use crate::error::{Error, Result};
use crate::geom::Point;
use serde::{Deserialize, Serialize};

/// Axis-aligned rectangle (x0, y0, x1, y1) with x0 <= x1, y0 <= y1.
pub type Rect = [f64; 4];

/// Straight segment given by its endpoints.
pub type Segment = ([f64; 2], [f64; 2]);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    Brittle,
    Elastic,
}

/// Boundary classification. Traction edges are a subset of the Neumann
/// part; the Dirichlet part carries the prescribed deformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryLabel {
    Dirichlet,
    Neumann,
    Traction,
}

/// Geometry and labeling of the computational domain.
///
/// The outer polygon must be rectilinear (axis-aligned edges, counter-
/// clockwise). Brittle cells are those whose center falls inside one of
/// `brittle`. Boundary edges default to Neumann; `dirichlet` and
/// `traction` list boundary segments overriding that.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DomainSpec {
    pub polygon: Vec<Point>,
    #[serde(default)]
    pub brittle: Vec<Rect>,
    #[serde(default)]
    pub dirichlet: Vec<Segment>,
    #[serde(default)]
    pub traction: Vec<Segment>,
}

impl DomainSpec {
    pub fn unit_square() -> DomainSpec {
        DomainSpec {
            polygon: vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
            brittle: vec![],
            dirichlet: vec![],
            traction: vec![],
        }
    }

    pub fn rectangle(w: f64, h: f64) -> DomainSpec {
        DomainSpec {
            polygon: vec![[0.0, 0.0], [w, 0.0], [w, h], [0.0, h]],
            brittle: vec![],
            dirichlet: vec![],
            traction: vec![],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.polygon.len() < 4 {
            return Err(Error::Config("polygon needs at least 4 vertices".into()));
        }
        let n = self.polygon.len();
        for i in 0..n {
            let p = self.polygon[i];
            let q = self.polygon[(i + 1) % n];
            if p[0] != q[0] && p[1] != q[1] {
                return Err(Error::Config(format!(
                    "polygon edge {p:?} -> {q:?} is not axis-aligned"
                )));
            }
            if p == q {
                return Err(Error::Config("degenerate polygon edge".into()));
            }
        }
        for r in &self.brittle {
            if r[0] >= r[2] || r[1] >= r[3] {
                return Err(Error::Config(format!("empty brittle rect {r:?}")));
            }
        }
        for (a, b) in self.dirichlet.iter().chain(&self.traction) {
            if a[0] != b[0] && a[1] != b[1] {
                return Err(Error::Config(format!(
                    "boundary segment {a:?} -> {b:?} is not axis-aligned"
                )));
            }
        }
        Ok(())
    }

    pub fn bbox(&self) -> (Point, Point) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in &self.polygon {
            for d in 0..2 {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        (lo, hi)
    }

    /// Even-odd test against the rectilinear polygon. Intended for cell
    /// centers, which by construction never sit on polygon edges.
    pub fn contains(&self, p: Point) -> bool {
        let n = self.polygon.len();
        let mut inside = false;
        for i in 0..n {
            let a = self.polygon[i];
            let b = self.polygon[(i + 1) % n];
            if (a[1] > p[1]) != (b[1] > p[1]) {
                let x_cross = a[0] + (p[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
                if p[0] < x_cross {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

/// True when the point q lies on the closed segment, within tol.
pub fn on_segment(q: Point, seg: &Segment, tol: f64) -> bool {
    let (a, b) = *seg;
    if a[0] == b[0] {
        (q[0] - a[0]).abs() <= tol
            && q[1] >= a[1].min(b[1]) - tol
            && q[1] <= a[1].max(b[1]) + tol
    } else {
        (q[1] - a[1]).abs() <= tol
            && q[0] >= a[0].min(b[0]) - tol
            && q[0] <= a[0].max(b[0]) + tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_in_rectilinear_polygon() {
        // L-shape
        let dom = DomainSpec {
            polygon: vec![
                [0.0, 0.0],
                [2.0, 0.0],
                [2.0, 1.0],
                [1.0, 1.0],
                [1.0, 2.0],
                [0.0, 2.0],
            ],
            brittle: vec![],
            dirichlet: vec![],
            traction: vec![],
        };
        assert!(dom.contains([0.5, 0.5]));
        assert!(dom.contains([1.5, 0.5]));
        assert!(dom.contains([0.5, 1.5]));
        assert!(!dom.contains([1.5, 1.5]));
        assert!(!dom.contains([-0.5, 0.5]));
    }

    #[test]
    fn rejects_diagonal_polygon() {
        let dom = DomainSpec {
            polygon: vec![[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.0, 0.5]],
            brittle: vec![],
            dirichlet: vec![],
            traction: vec![],
        };
        assert!(dom.validate().is_err());
    }
}
