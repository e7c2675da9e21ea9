//! Adaptive 4-way subdivision of a regular triangulation.
//!
//! Each base edge [x, y] (x the endpoint with the smaller vertex id)
//! carries a knot z = t*x + (1-t)*y with t in [a, 1-a]. Each base
//! triangle is replaced by three corner subtriangles and one central
//! subtriangle glued at the knots. Sub-edges are the atoms of all crack
//! set algebra: each base edge splits into two boundary sub-edges and
//! each base triangle contributes its three interior adaptive edges.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geom::{self, Point};
use crate::mesh::domain::{BoundaryLabel, Region};
use crate::mesh::regular::RegularTriangulation;
use serde::{Deserialize, Serialize};

/// Knot parameters for the subdivision: one t per base edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdaptiveParams {
    pub a: f64,
    /// t for each base edge, in edge-id order; z = t*x + (1-t)*y where x is
    /// the endpoint with the smaller vertex id.
    pub knots: Vec<f64>,
}

impl AdaptiveParams {
    pub fn midpoints(a: f64, n_edges: usize) -> AdaptiveParams {
        AdaptiveParams {
            a,
            knots: vec![0.5; n_edges],
        }
    }

    pub fn uniform(a: f64, t: f64, n_edges: usize) -> AdaptiveParams {
        AdaptiveParams {
            a,
            knots: vec![t; n_edges],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.a < 0.5) {
            return Err(Error::Config(format!("a = {} outside (0, 1/2)", self.a)));
        }
        for &t in &self.knots {
            if t < self.a - 1e-15 || t > 1.0 - self.a + 1e-15 {
                return Err(Error::ParamOutOfRange {
                    t,
                    lo: self.a,
                    hi: 1.0 - self.a,
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubEdgeKind {
    /// Half of base edge `edge`; half 0 touches the smaller-id endpoint.
    BaseHalf { edge: usize, half: u8 },
    /// Interior adaptive edge j of base triangle `tri`: j = 0 joins the
    /// knots of edges (v0,v1) and (v1,v2); j = 1 those of (v1,v2) and
    /// (v2,v0); j = 2 those of (v2,v0) and (v0,v1).
    Interior { tri: usize, j: u8 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubEdge {
    pub nodes: [usize; 2],
    pub kind: SubEdgeKind,
    /// Incident subtriangles with the local corner indices of `nodes`.
    pub incident: Vec<(usize, [u8; 2])>,
    /// Inherited boundary label for halves of boundary base edges.
    pub label: Option<BoundaryLabel>,
    pub crackable: bool,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SubTri {
    pub nodes: [usize; 3],
    pub base_tri: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdaptiveTriangulation {
    pub base: Arc<RegularTriangulation>,
    pub params: AdaptiveParams,
    /// Base vertices first, then one knot node per base edge.
    pub nodes: Vec<Point>,
    /// 4 per base triangle: corner at v0, v1, v2, then the central one.
    pub subtris: Vec<SubTri>,
    /// 2 per base edge first, then 3 interior edges per base triangle.
    pub subedges: Vec<SubEdge>,
}

impl AdaptiveTriangulation {
    pub fn knot_node(&self, edge: usize) -> usize {
        self.base.n_vertices() + edge
    }

    pub fn n_subtris(&self) -> usize {
        self.subtris.len()
    }

    pub fn subtri_points(&self, s: usize) -> [Point; 3] {
        let st = &self.subtris[s];
        [
            self.nodes[st.nodes[0]],
            self.nodes[st.nodes[1]],
            self.nodes[st.nodes[2]],
        ]
    }

    pub fn subtri_area(&self, s: usize) -> f64 {
        let p = self.subtri_points(s);
        geom::signed_area(p[0], p[1], p[2])
    }

    pub fn subedge_points(&self, e: usize) -> [Point; 2] {
        let se = &self.subedges[e];
        [self.nodes[se.nodes[0]], self.nodes[se.nodes[1]]]
    }

    pub fn subedge_length(&self, e: usize) -> f64 {
        let p = self.subedge_points(e);
        geom::dist(p[0], p[1])
    }

    pub fn subedge_midpoint(&self, e: usize) -> Point {
        let p = self.subedge_points(e);
        geom::lerp(p[0], p[1], 0.5)
    }

    pub fn subedge_normal(&self, e: usize) -> [f64; 2] {
        let p = self.subedge_points(e);
        geom::segment_normal(p[0], p[1])
    }

    pub fn crackable_subedges(&self) -> Vec<usize> {
        (0..self.subedges.len())
            .filter(|&e| self.subedges[e].crackable)
            .collect()
    }

    /// Interior adaptive edge ids of a base triangle.
    pub fn interior_edges_of_tri(&self, tri: usize) -> [usize; 3] {
        let off = 2 * self.base.n_edges();
        [off + 3 * tri, off + 3 * tri + 1, off + 3 * tri + 2]
    }

    pub fn halves_of_edge(&self, edge: usize) -> [usize; 2] {
        [2 * edge, 2 * edge + 1]
    }

    /// Locates the subtriangle containing p.
    pub fn locate(&self, p: Point) -> Option<usize> {
        let tid = self.base.locate(p)?;
        let mut best = None;
        let mut best_score = f64::NEG_INFINITY;
        for s in 4 * tid..4 * tid + 4 {
            let q = self.subtri_points(s);
            let l = geom::barycentric(p, q[0], q[1], q[2]);
            let score = l.iter().cloned().fold(f64::INFINITY, f64::min);
            if score > best_score {
                best_score = score;
                best = Some(s);
            }
        }
        if best_score > -1e-9 {
            best
        } else {
            None
        }
    }

    /// Measured shape constants (c1^a, c2^a, theta1^a, theta2^a).
    pub fn shape_report(&self) -> (f64, f64, f64, f64) {
        let eps = self.base.eps;
        let mut c1 = f64::INFINITY;
        let mut c2: f64 = 0.0;
        let mut t1 = f64::INFINITY;
        let mut t2: f64 = 0.0;
        for s in 0..self.subtris.len() {
            let p = self.subtri_points(s);
            c1 = c1.min(geom::indiameter(p[0], p[1], p[2]) / eps);
            c2 = c2.max(geom::circumdiameter(p[0], p[1], p[2]) / eps);
            for a in geom::inner_angles(p[0], p[1], p[2]) {
                t1 = t1.min(a);
                t2 = t2.max(a);
            }
        }
        (c1, c2, t1, t2)
    }
}

/// Subdivides every base triangle into 4 using the given knot parameters.
pub fn subdivide(
    base: Arc<RegularTriangulation>,
    params: AdaptiveParams,
) -> Result<AdaptiveTriangulation> {
    params.validate()?;
    if params.knots.len() != base.n_edges() {
        return Err(Error::Config(format!(
            "expected {} knot parameters, got {}",
            base.n_edges(),
            params.knots.len()
        )));
    }

    let nv = base.n_vertices();
    let mut nodes = base.vertices.clone();
    for (eid, e) in base.edges.iter().enumerate() {
        let x = base.vertices[e.v[0]];
        let y = base.vertices[e.v[1]];
        nodes.push(geom::knot_point(x, y, params.knots[eid]));
    }

    // Subtriangles.
    let mut subtris = Vec::with_capacity(4 * base.n_triangles());
    let mut tri_edges = Vec::with_capacity(base.n_triangles());
    for (tid, tri) in base.triangles.iter().enumerate() {
        let [v0, v1, v2] = tri.v;
        let e01 = base.edge_between(v0, v1).expect("edge exists");
        let e12 = base.edge_between(v1, v2).expect("edge exists");
        let e20 = base.edge_between(v2, v0).expect("edge exists");
        tri_edges.push([e01, e12, e20]);
        let z01 = nv + e01;
        let z12 = nv + e12;
        let z20 = nv + e20;
        for nodes in [
            [v0, z01, z20],
            [v1, z12, z01],
            [v2, z20, z12],
            [z01, z12, z20],
        ] {
            subtris.push(SubTri {
                nodes,
                base_tri: tid,
            });
        }
    }

    // Sub-edges: boundary halves of base edges, then interior edges.
    let mut subedges = Vec::with_capacity(2 * base.n_edges() + 3 * base.n_triangles());
    for (eid, e) in base.edges.iter().enumerate() {
        let z = nv + eid;
        for half in 0..2u8 {
            let nodes = if half == 0 { [e.v[0], z] } else { [z, e.v[1]] };
            subedges.push(SubEdge {
                nodes,
                kind: SubEdgeKind::BaseHalf { edge: eid, half },
                incident: Vec::new(),
                label: e.label,
                crackable: false,
            });
        }
    }
    for tid in 0..base.n_triangles() {
        let [e01, e12, e20] = tri_edges[tid];
        let pairs = [
            [nv + e01, nv + e12],
            [nv + e12, nv + e20],
            [nv + e20, nv + e01],
        ];
        for (j, nodes) in pairs.into_iter().enumerate() {
            subedges.push(SubEdge {
                nodes,
                kind: SubEdgeKind::Interior {
                    tri: tid,
                    j: j as u8,
                },
                incident: Vec::new(),
                label: None,
                crackable: false,
            });
        }
    }

    // Incidence: boundary halves touch the corner subtriangle at their base
    // vertex in every incident base triangle; interior edge j is shared by
    // the central subtriangle and the corner subtriangle at vertex (j+1)%3.
    let corner_of = |tid: usize, vertex: usize| -> usize {
        let tri = &base.triangles[tid];
        let l = tri.v.iter().position(|&v| v == vertex).expect("vertex in tri");
        4 * tid + l
    };
    let local_of = |st: &SubTri, node: usize| -> u8 {
        st.nodes.iter().position(|&n| n == node).expect("node in subtri") as u8
    };
    for eid in 0..base.n_edges() {
        let e = &base.edges[eid];
        let z = nv + eid;
        for half in 0..2usize {
            let seid = 2 * eid + half;
            let endpoint = e.v[half];
            let (n0, n1) = if half == 0 { (endpoint, z) } else { (z, endpoint) };
            let mut incident = Vec::new();
            for t in e.tris.iter().flatten() {
                let s = corner_of(*t, endpoint);
                let st = &subtris[s];
                incident.push((s, [local_of(st, n0), local_of(st, n1)]));
            }
            subedges[seid].incident = incident;
        }
    }
    let interior_offset = 2 * base.n_edges();
    for tid in 0..base.n_triangles() {
        for j in 0..3usize {
            let seid = interior_offset + 3 * tid + j;
            let nodes = subedges[seid].nodes;
            let central = 4 * tid + 3;
            let corner = 4 * tid + (j + 1) % 3;
            let mut incident = Vec::new();
            for s in [central, corner] {
                let st = &subtris[s];
                incident.push((s, [local_of(st, nodes[0]), local_of(st, nodes[1])]));
            }
            subedges[seid].incident = incident;
        }
    }

    // Crackability: contained in the closure of the brittle region and not
    // on the pure Neumann part of the boundary.
    for se in subedges.iter_mut() {
        let in_brittle_closure = match se.kind {
            SubEdgeKind::Interior { tri, .. } => base.triangles[tri].region == Region::Brittle,
            SubEdgeKind::BaseHalf { edge, .. } => base.edges[edge]
                .tris
                .iter()
                .flatten()
                .any(|&t| base.triangles[t].region == Region::Brittle),
        };
        let on_pure_neumann = matches!(
            se.label,
            Some(BoundaryLabel::Neumann) | Some(BoundaryLabel::Traction)
        );
        se.crackable = in_brittle_closure && !on_pure_neumann;
    }

    Ok(AdaptiveTriangulation {
        base,
        params,
        nodes,
        subtris,
        subedges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::domain::DomainSpec;
    use crate::mesh::regular::build_structured_mesh;

    fn unit_mesh(eps: f64) -> Arc<RegularTriangulation> {
        Arc::new(build_structured_mesh(&DomainSpec::unit_square(), eps).unwrap())
    }

    #[test]
    fn midpoint_split_quarters_areas() {
        let base = unit_mesh(0.5);
        let at = subdivide(base.clone(), AdaptiveParams::midpoints(0.25, base.n_edges())).unwrap();
        assert_eq!(at.n_subtris(), 4 * base.n_triangles());
        for tid in 0..base.n_triangles() {
            let p = base.tri_points(tid);
            let total = geom::signed_area(p[0], p[1], p[2]);
            for s in 4 * tid..4 * tid + 4 {
                assert!((at.subtri_area(s) - total / 4.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn area_conserved_for_skewed_knots() {
        let base = unit_mesh(0.25);
        let mut params = AdaptiveParams::midpoints(0.1, base.n_edges());
        // deterministic pseudo-random knots in [a, 1-a]
        for (i, t) in params.knots.iter_mut().enumerate() {
            *t = 0.1 + 0.8 * ((i as f64 * 0.618_033_988_75).fract());
        }
        let at = subdivide(base.clone(), params).unwrap();
        let sub_total: f64 = (0..at.n_subtris()).map(|s| at.subtri_area(s)).sum();
        assert!((sub_total - base.area()).abs() < 1e-12 * base.area());
        // every subtriangle positively oriented
        for s in 0..at.n_subtris() {
            assert!(at.subtri_area(s) > 0.0);
        }
    }

    #[test]
    fn skewed_knot_min_angle_vs_reference_grid_oracle() {
        // Oracle: minimize the inner angle over the knot grid {a, 1/2, 1-a}^3
        // on the reference right isoceles triangle (legs 1).
        let a = 0.1;
        let (p0, p1, p2) = ([0.0, 0.0], [1.0, 0.0], [0.0, 1.0]);
        let grid = [a, 0.5, 1.0 - a];
        let mut oracle_min = f64::INFINITY;
        for &t01 in &grid {
            for &t12 in &grid {
                for &t20 in &grid {
                    let z01 = geom::knot_point(p0, p1, t01);
                    let z12 = geom::knot_point(p1, p2, t12);
                    let z20 = geom::knot_point(p2, p0, t20);
                    for tri in [
                        [p0, z01, z20],
                        [p1, z12, z01],
                        [p2, z20, z12],
                        [z01, z12, z20],
                    ] {
                        for ang in geom::inner_angles(tri[0], tri[1], tri[2]) {
                            oracle_min = oracle_min.min(ang);
                        }
                    }
                }
            }
        }
        // All-a knots on the actual mesh: its minimum angle cannot go
        // below the oracle minimum for grid knots.
        let base = unit_mesh(0.5);
        let at =
            subdivide(base.clone(), AdaptiveParams::uniform(a, a, base.n_edges())).unwrap();
        let (_, _, theta1, _) = at.shape_report();
        assert!(theta1 >= oracle_min - 1e-12, "{theta1} < {oracle_min}");
        let sub_total: f64 = (0..at.n_subtris()).map(|s| at.subtri_area(s)).sum();
        assert!((sub_total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn knot_out_of_range_rejected() {
        let base = unit_mesh(0.5);
        let mut params = AdaptiveParams::midpoints(0.1, base.n_edges());
        params.knots[3] = 0.05;
        match subdivide(base, params) {
            Err(Error::ParamOutOfRange { t, .. }) => assert_eq!(t, 0.05),
            other => panic!("expected ParamOutOfRange, got {other:?}"),
        }
    }

    #[test]
    fn incidence_counts() {
        let base = unit_mesh(0.25);
        let at = subdivide(base.clone(), AdaptiveParams::midpoints(0.2, base.n_edges())).unwrap();
        for se in &at.subedges {
            match se.kind {
                SubEdgeKind::BaseHalf { edge, .. } => {
                    let expected = if base.edges[edge].is_boundary() { 1 } else { 2 };
                    assert_eq!(se.incident.len(), expected);
                }
                SubEdgeKind::Interior { .. } => assert_eq!(se.incident.len(), 2),
            }
            // local indices really address the subedge endpoints
            for &(s, loc) in &se.incident {
                assert_eq!(at.subtris[s].nodes[loc[0] as usize], se.nodes[0]);
                assert_eq!(at.subtris[s].nodes[loc[1] as usize], se.nodes[1]);
            }
        }
    }

    #[test]
    fn crackability_follows_brittle_closure() {
        let dom = DomainSpec {
            polygon: DomainSpec::unit_square().polygon,
            brittle: vec![[0.0, 0.0, 0.5, 0.5]],
            dirichlet: vec![([0.0, 0.0], [0.0, 1.0])],
            traction: vec![],
        };
        let base = Arc::new(build_structured_mesh(&dom, 0.5).unwrap());
        let at = subdivide(base.clone(), AdaptiveParams::midpoints(0.2, base.n_edges())).unwrap();
        for (id, se) in at.subedges.iter().enumerate() {
            let mid = at.subedge_midpoint(id);
            let in_closure = mid[0] <= 0.5 + 1e-12 && mid[1] <= 0.5 + 1e-12;
            if se.crackable {
                assert!(in_closure, "crackable sub-edge outside closure at {mid:?}");
                assert!(!matches!(
                    se.label,
                    Some(BoundaryLabel::Neumann) | Some(BoundaryLabel::Traction)
                ));
            }
            // Dirichlet edges inside the brittle closure stay crackable.
            if se.label == Some(BoundaryLabel::Dirichlet)
                && mid[0] < 1e-12
                && mid[1] < 0.5 - 1e-12
            {
                assert!(se.crackable);
            }
            // Pure Neumann boundary is never crackable.
            if matches!(se.label, Some(BoundaryLabel::Neumann)) {
                assert!(!se.crackable);
            }
        }
    }

    #[test]
    fn subdivision_is_deterministic() {
        let base = unit_mesh(0.25);
        let params = AdaptiveParams::uniform(0.15, 0.3, base.n_edges());
        let a1 = subdivide(base.clone(), params.clone()).unwrap();
        let a2 = subdivide(base, params).unwrap();
        assert_eq!(a1.nodes.len(), a2.nodes.len());
        for (p, q) in a1.nodes.iter().zip(&a2.nodes) {
            assert!(p[0].to_bits() == q[0].to_bits() && p[1].to_bits() == q[1].to_bits());
        }
    }
}
