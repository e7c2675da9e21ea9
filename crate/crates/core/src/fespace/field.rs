//! The discontinuous field type and its jump-set operations.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::geom::{self, Mat2, Point};
use crate::mesh::{AdaptiveTriangulation, BoundaryLabel};

/// Relative tolerance separating declared topology from numerically closed
/// jumps: a sub-edge is an actual jump only when the two-sided traces
/// differ by more than `JUMP_TOL * scale` at one of its endpoints.
pub const JUMP_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct DiscreteField {
    pub tri: Arc<AdaptiveTriangulation>,
    /// Corner values: `values[s][k]` at corner k of subtriangle s.
    pub values: Vec<[[f64; 2]; 3]>,
    /// Sub-edges declared discontinuous (interior or debonded Dirichlet).
    pub topology: BTreeSet<usize>,
}

impl DiscreteField {
    pub fn zero(tri: Arc<AdaptiveTriangulation>) -> DiscreteField {
        let n = tri.n_subtris();
        DiscreteField {
            tri,
            values: vec![[[0.0; 2]; 3]; n],
            topology: BTreeSet::new(),
        }
    }

    /// Continuous nodal interpolant of a pointwise function.
    pub fn from_fn(
        tri: Arc<AdaptiveTriangulation>,
        f: impl Fn(Point) -> [f64; 2],
    ) -> DiscreteField {
        let mut values = vec![[[0.0; 2]; 3]; tri.n_subtris()];
        for (s, st) in tri.subtris.iter().enumerate() {
            for k in 0..3 {
                values[s][k] = f(tri.nodes[st.nodes[k]]);
            }
        }
        DiscreteField {
            tri,
            values,
            topology: BTreeSet::new(),
        }
    }

    pub fn corner(&self, s: usize, k: usize) -> [f64; 2] {
        self.values[s][k]
    }

    /// Value at barycentric coordinates inside subtriangle s.
    pub fn eval_bary(&self, s: usize, l: [f64; 3]) -> [f64; 2] {
        let v = &self.values[s];
        [
            l[0] * v[0][0] + l[1] * v[1][0] + l[2] * v[2][0],
            l[0] * v[0][1] + l[1] * v[1][1] + l[2] * v[2][1],
        ]
    }

    /// Value at a point known to lie in subtriangle s.
    pub fn eval_in(&self, s: usize, p: Point) -> [f64; 2] {
        let q = self.tri.subtri_points(s);
        self.eval_bary(s, geom::barycentric(p, q[0], q[1], q[2]))
    }

    /// Value at an arbitrary point (point location + evaluation).
    pub fn eval(&self, p: Point) -> Option<[f64; 2]> {
        self.tri.locate(p).map(|s| self.eval_in(s, p))
    }

    /// Constant deformation gradient on subtriangle s (rows: components).
    pub fn gradient(&self, s: usize) -> Mat2 {
        let q = self.tri.subtri_points(s);
        let g = geom::hat_gradients(q[0], q[1], q[2]);
        let v = &self.values[s];
        let mut m = [[0.0; 2]; 2];
        for k in 0..3 {
            for c in 0..2 {
                for d in 0..2 {
                    m[c][d] += v[k][c] * g[k][d];
                }
            }
        }
        m
    }

    /// Max nodal magnitude + 1; the jump tolerance scale.
    pub fn scale(&self) -> f64 {
        let mut m: f64 = 0.0;
        for v in &self.values {
            for c in v {
                m = m.max(c[0].abs()).max(c[1].abs());
            }
        }
        m + 1.0
    }

    /// Two-sided trace difference at the endpoints of sub-edge `e`:
    /// `None` for boundary sub-edges (single-sided).
    pub fn trace_jump(&self, e: usize) -> Option<[[f64; 2]; 2]> {
        let se = &self.tri.subedges[e];
        if se.incident.len() < 2 {
            return None;
        }
        let (s0, l0) = se.incident[0];
        let (s1, l1) = se.incident[1];
        let mut out = [[0.0; 2]; 2];
        for end in 0..2 {
            let a = self.corner(s0, l0[end] as usize);
            let b = self.corner(s1, l1[end] as usize);
            out[end] = [a[0] - b[0], a[1] - b[1]];
        }
        Some(out)
    }

    /// S(u): declared interior sub-edges across which the traces actually
    /// differ (beyond tol * scale at one of the endpoints).
    pub fn jump_set(&self, tol: f64) -> BTreeSet<usize> {
        let threshold = tol * self.scale();
        let mut out = BTreeSet::new();
        for &e in &self.topology {
            if let Some(j) = self.trace_jump(e) {
                if geom::norm(j[0]) > threshold || geom::norm(j[1]) > threshold {
                    out.insert(e);
                }
            }
        }
        out
    }

    /// S_D^g(u): Dirichlet sub-edges whose trace differs from the boundary
    /// interpolant beyond tol * scale.
    pub fn dirichlet_mismatch(&self, g_eps: &DiscreteField, tol: f64) -> BTreeSet<usize> {
        let threshold = tol * self.scale().max(g_eps.scale());
        let mut out = BTreeSet::new();
        for (e, se) in self.tri.subedges.iter().enumerate() {
            if se.label != Some(BoundaryLabel::Dirichlet) {
                continue;
            }
            let (s, loc) = se.incident[0];
            let mut differs = false;
            for end in 0..2 {
                let u = self.corner(s, loc[end] as usize);
                let g = g_eps.corner(s, loc[end] as usize);
                if geom::dist(u, g) > threshold {
                    differs = true;
                }
            }
            if differs {
                out.insert(e);
            }
        }
        out
    }

    /// S^g(u) = S(u) union S_D^g(u).
    pub fn combined_jump(&self, g_eps: &DiscreteField, tol: f64) -> BTreeSet<usize> {
        let mut s = self.jump_set(tol);
        s.extend(self.dirichlet_mismatch(g_eps, tol));
        s
    }

    /// L^p norm of the field over the domain (per-subtriangle quadrature,
    /// degree-5 rule; exact for p = 2).
    pub fn lp_norm(&self, p: f64) -> f64 {
        let mut acc = 0.0;
        for s in 0..self.tri.n_subtris() {
            let area = self.tri.subtri_area(s);
            for &(l, w) in crate::geom::TriRule::Degree5.points() {
                let v = self.eval_bary(s, l);
                acc += w * area * geom::norm(v).powf(p);
            }
        }
        acc.powf(1.0 / p)
    }

    /// L^p norm of the gradient (exact: gradients are piecewise constant).
    pub fn gradient_lp_norm(&self, p: f64) -> f64 {
        let mut acc = 0.0;
        for s in 0..self.tri.n_subtris() {
            let area = self.tri.subtri_area(s);
            acc += area * geom::mat_frob2(&self.gradient(s)).sqrt().powf(p);
        }
        acc.powf(1.0 / p)
    }
}
