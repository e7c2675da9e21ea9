//! Structured regular triangulations of a rectilinear domain.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geom::{self, Point};
use crate::mesh::domain::{on_segment, BoundaryLabel, DomainSpec, Region};
use serde::{Deserialize, Serialize};

/// Largest inscribed-disc diameter ratio guaranteed by the crossed grid.
/// The actual value for a right isoceles cell is 2 - sqrt(2); this bound
/// is quoted conservatively.
pub const REG_C1: f64 = 0.414_213_562_373_095_1; // 1 / (1 + sqrt(2))
/// Circumscribed-disc diameter ratio of the crossed grid (the hypotenuse).
pub const REG_C2: f64 = std::f64::consts::SQRT_2;
pub const REG_THETA1: f64 = std::f64::consts::FRAC_PI_4;
pub const REG_THETA2: f64 = std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Triangle {
    pub v: [usize; 3],
    pub region: Region,
    /// Grid cell (ix, iy) this triangle came from.
    pub cell: (i64, i64),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Edge {
    /// Vertex ids, canonically ordered v[0] < v[1].
    pub v: [usize; 2],
    /// Incident triangles (1 for boundary edges, 2 for interior ones).
    pub tris: [Option<usize>; 2],
    /// Set only on boundary edges.
    pub label: Option<BoundaryLabel>,
}

impl Edge {
    pub fn is_boundary(&self) -> bool {
        self.tris[1].is_none()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegularTriangulation {
    pub eps: f64,
    pub vertices: Vec<Point>,
    pub triangles: Vec<Triangle>,
    pub edges: Vec<Edge>,
    pub c1: f64,
    pub c2: f64,
    pub theta: [f64; 2],
    /// Cells marked as part of the traction neighborhood (elastic cells
    /// touching the traction boundary).
    pub omega_s_cells: Vec<(i64, i64)>,
    edge_index: BTreeMap<(usize, usize), usize>,
    vertex_index: BTreeMap<(i64, i64), usize>,
    grid_origin: Point,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegularityReport {
    pub min_indiameter_ratio: f64,
    pub max_circumdiameter_ratio: f64,
    pub angle_range: [f64; 2],
    pub pass: bool,
}

fn snap_to_grid(c: f64, eps: f64) -> Result<i64> {
    let k = (c / eps).round();
    if (c - k * eps).abs() > 1e-12 * eps.max(c.abs()) {
        return Err(Error::NonConformingDomain(format!(
            "coordinate {c} is not on the grid of size {eps}"
        )));
    }
    Ok(k as i64)
}

/// Builds the crossed-diagonal grid triangulation of the domain.
///
/// Every feature of the domain (polygon vertices, region rectangles,
/// labeled boundary segments) must land on the epsilon-grid; otherwise
/// the labels could not be unions of cells/edges and the construction
/// refuses with `NonConformingDomain`.
pub fn build_structured_mesh(domain: &DomainSpec, eps: f64) -> Result<RegularTriangulation> {
    domain.validate()?;
    if !(eps > 0.0) {
        return Err(Error::Config("epsilon must be positive".into()));
    }
    // Conformity of every labeled feature.
    for p in &domain.polygon {
        snap_to_grid(p[0], eps)?;
        snap_to_grid(p[1], eps)?;
    }
    for r in &domain.brittle {
        for c in r {
            snap_to_grid(*c, eps)?;
        }
    }
    for (a, b) in domain.dirichlet.iter().chain(&domain.traction) {
        for p in [a, b] {
            snap_to_grid(p[0], eps)?;
            snap_to_grid(p[1], eps)?;
        }
    }

    let (lo, hi) = domain.bbox();
    let i0 = (lo[0] / eps).round() as i64;
    let j0 = (lo[1] / eps).round() as i64;
    let i1 = (hi[0] / eps).round() as i64;
    let j1 = (hi[1] / eps).round() as i64;

    let cell_center = |i: i64, j: i64| -> Point {
        [(i as f64 + 0.5) * eps, (j as f64 + 0.5) * eps]
    };
    let in_brittle = |p: Point| {
        domain
            .brittle
            .iter()
            .any(|r| p[0] > r[0] && p[0] < r[2] && p[1] > r[1] && p[1] < r[3])
    };

    // Cells inside the polygon, scan order (y-major).
    let mut cells = Vec::new();
    for j in j0..j1 {
        for i in i0..i1 {
            if domain.contains(cell_center(i, j)) {
                cells.push((i, j));
            }
        }
    }
    if cells.is_empty() {
        return Err(Error::Config("domain contains no cells".into()));
    }

    // Vertices in scan order.
    let mut vertex_index = BTreeMap::new();
    let mut vertices = Vec::new();
    let mut vid = |ij: (i64, i64), vertices: &mut Vec<Point>, index: &mut BTreeMap<(i64, i64), usize>| {
        *index.entry(ij).or_insert_with(|| {
            vertices.push([ij.0 as f64 * eps, ij.1 as f64 * eps]);
            vertices.len() - 1
        })
    };
    // Deterministic ids: sweep corners in scan order first.
    for j in j0..=j1 {
        for i in i0..=i1 {
            let corner_of_some_cell = [(i - 1, j - 1), (i, j - 1), (i - 1, j), (i, j)]
                .iter()
                .any(|&(ci, cj)| domain.contains(cell_center(ci, cj)));
            if corner_of_some_cell {
                vid((i, j), &mut vertices, &mut vertex_index);
            }
        }
    }

    // Triangles: two per cell, diagonal alternating in a checkerboard.
    let mut triangles = Vec::new();
    for &(i, j) in &cells {
        let p00 = vertex_index[&(i, j)];
        let p10 = vertex_index[&(i + 1, j)];
        let p01 = vertex_index[&(i, j + 1)];
        let p11 = vertex_index[&(i + 1, j + 1)];
        let region = if in_brittle(cell_center(i, j)) {
            Region::Brittle
        } else {
            Region::Elastic
        };
        let pair = if (i + j).rem_euclid(2) == 0 {
            // diagonal p00 -- p11
            [[p00, p10, p11], [p00, p11, p01]]
        } else {
            // diagonal p10 -- p01
            [[p00, p10, p01], [p10, p11, p01]]
        };
        for v in pair {
            triangles.push(Triangle {
                v,
                region,
                cell: (i, j),
            });
        }
    }

    // Edge table with adjacency.
    let mut edge_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    for (tid, tri) in triangles.iter().enumerate() {
        for k in 0..3 {
            let a = tri.v[k];
            let b = tri.v[(k + 1) % 3];
            let key = (a.min(b), a.max(b));
            match edge_index.get(&key) {
                Some(&eid) => {
                    let e = &mut edges[eid];
                    if e.tris[1].is_some() {
                        return Err(Error::Config("edge with more than 2 triangles".into()));
                    }
                    e.tris[1] = Some(tid);
                }
                None => {
                    edge_index.insert(key, edges.len());
                    edges.push(Edge {
                        v: [key.0, key.1],
                        tris: [Some(tid), None],
                        label: None,
                    });
                }
            }
        }
    }

    // Boundary labels.
    let tol = 1e-12 * eps;
    for e in edges.iter_mut() {
        if !e.is_boundary() {
            continue;
        }
        let mid = geom::lerp(vertices[e.v[0]], vertices[e.v[1]], 0.5);
        let in_dirichlet = domain.dirichlet.iter().any(|s| on_segment(mid, s, tol));
        let in_traction = domain.traction.iter().any(|s| on_segment(mid, s, tol));
        if in_dirichlet && in_traction {
            return Err(Error::NonConformingDomain(format!(
                "boundary edge at {mid:?} labeled both Dirichlet and traction"
            )));
        }
        e.label = Some(if in_dirichlet {
            BoundaryLabel::Dirichlet
        } else if in_traction {
            BoundaryLabel::Traction
        } else {
            BoundaryLabel::Neumann
        });
    }

    // The traction part must stay away from the brittle closure.
    for e in edges.iter() {
        if e.label == Some(BoundaryLabel::Traction) {
            let tid = e.tris[0].expect("boundary edge has one triangle");
            if triangles[tid].region == Region::Brittle {
                return Err(Error::NonConformingDomain(
                    "traction boundary touches the closure of the brittle region \
                     (closure(Omega_B) must not meet the traction part)"
                        .into(),
                ));
            }
        }
    }

    // Omega_S: elastic cells owning a traction edge.
    let mut omega_s_cells: Vec<(i64, i64)> = Vec::new();
    for e in edges.iter() {
        if e.label == Some(BoundaryLabel::Traction) {
            let cell = triangles[e.tris[0].unwrap()].cell;
            if !omega_s_cells.contains(&cell) {
                omega_s_cells.push(cell);
            }
        }
    }
    omega_s_cells.sort_unstable();

    Ok(RegularTriangulation {
        eps,
        vertices,
        triangles,
        edges,
        c1: REG_C1,
        c2: REG_C2,
        theta: [REG_THETA1, REG_THETA2],
        omega_s_cells,
        edge_index,
        vertex_index,
        grid_origin: [i0 as f64 * eps, j0 as f64 * eps],
    })
}

impl RegularTriangulation {
    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn tri_points(&self, tid: usize) -> [Point; 3] {
        let t = &self.triangles[tid];
        [
            self.vertices[t.v[0]],
            self.vertices[t.v[1]],
            self.vertices[t.v[2]],
        ]
    }

    pub fn area(&self) -> f64 {
        (0..self.triangles.len())
            .map(|t| {
                let p = self.tri_points(t);
                geom::signed_area(p[0], p[1], p[2]).abs()
            })
            .sum()
    }

    /// Triangle ids forming the brittle region.
    pub fn brittle_triangles(&self) -> Vec<usize> {
        (0..self.triangles.len())
            .filter(|&t| self.triangles[t].region == Region::Brittle)
            .collect()
    }

    /// Triangle ids of the traction neighborhood Omega_S.
    pub fn omega_s_triangles(&self) -> Vec<usize> {
        (0..self.triangles.len())
            .filter(|&t| self.omega_s_cells.binary_search(&self.triangles[t].cell).is_ok())
            .collect()
    }

    /// Locates the triangle containing p (ties broken by scan order).
    pub fn locate(&self, p: Point) -> Option<usize> {
        let i = ((p[0] - self.grid_origin[0]) / self.eps).floor() as i64
            + (self.grid_origin[0] / self.eps).round() as i64;
        let j = ((p[1] - self.grid_origin[1]) / self.eps).floor() as i64
            + (self.grid_origin[1] / self.eps).round() as i64;
        // Check the cell and, for robustness at cell boundaries, neighbors.
        for (ci, cj) in [
            (i, j),
            (i - 1, j),
            (i, j - 1),
            (i - 1, j - 1),
            (i + 1, j),
            (i, j + 1),
        ] {
            if !self.vertex_index.contains_key(&(ci, cj)) {
                continue;
            }
            for (tid, tri) in self.triangles.iter().enumerate() {
                if tri.cell == (ci, cj) {
                    let q = self.tri_points(tid);
                    if geom::point_in_triangle(p, q[0], q[1], q[2], 1e-12) {
                        return Some(tid);
                    }
                }
            }
        }
        None
    }
}

/// Measures the regularity constants of a triangulation and compares them
/// with the declared bounds.
pub fn check_regularity(tri: &RegularTriangulation) -> RegularityReport {
    let mut min_ratio = f64::INFINITY;
    let mut max_ratio: f64 = 0.0;
    let mut amin = f64::INFINITY;
    let mut amax: f64 = 0.0;
    for t in 0..tri.triangles.len() {
        let p = tri.tri_points(t);
        min_ratio = min_ratio.min(geom::indiameter(p[0], p[1], p[2]) / tri.eps);
        max_ratio = max_ratio.max(geom::circumdiameter(p[0], p[1], p[2]) / tri.eps);
        for a in geom::inner_angles(p[0], p[1], p[2]) {
            amin = amin.min(a);
            amax = amax.max(a);
        }
    }
    let tol = 1e-12;
    let pass = min_ratio >= tri.c1 - tol
        && max_ratio <= tri.c2 + tol
        && amin >= tri.theta[0] - tol
        && amax <= tri.theta[1] + tol;
    RegularityReport {
        min_indiameter_ratio: min_ratio,
        max_circumdiameter_ratio: max_ratio,
        angle_range: [amin, amax],
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square_mesh(eps: f64) -> RegularTriangulation {
        build_structured_mesh(&DomainSpec::unit_square(), eps).unwrap()
    }

    #[test]
    fn unit_square_half_counts() {
        let m = unit_square_mesh(0.5);
        assert_eq!(m.n_triangles(), 8);
        assert_eq!(m.n_vertices(), 9);
        assert_eq!(m.n_edges(), 16);
    }

    #[test]
    fn unit_square_quarter_counts() {
        let m = unit_square_mesh(0.25);
        assert_eq!(m.n_triangles(), 32);
    }

    #[test]
    fn non_conforming_label_rejected() {
        // L-shaped polygon with a dirichlet segment endpoint at x = 1/3.
        let dom = DomainSpec {
            polygon: vec![
                [0.0, 0.0],
                [1.0, 0.0],
                [1.0, 0.5],
                [0.5, 0.5],
                [0.5, 1.0],
                [0.0, 1.0],
            ],
            brittle: vec![],
            dirichlet: vec![([1.0 / 3.0, 0.0], [1.0, 0.0])],
            traction: vec![],
        };
        match build_structured_mesh(&dom, 0.25) {
            Err(Error::NonConformingDomain(_)) => {}
            other => panic!("expected NonConformingDomain, got {other:?}"),
        }
    }

    #[test]
    fn regularity_of_crossed_grid() {
        let m = unit_square_mesh(0.25);
        let rep = check_regularity(&m);
        assert!(rep.pass, "{rep:?}");
        // Closed form for right isoceles triangles with legs eps.
        assert!((rep.min_indiameter_ratio - (2.0 - 2.0_f64.sqrt())).abs() < 1e-12);
        assert!((rep.max_circumdiameter_ratio - 2.0_f64.sqrt()).abs() < 1e-12);
        assert!((rep.angle_range[0] - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        assert!((rep.angle_range[1] - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn adjacency_is_consistent() {
        let m = unit_square_mesh(0.25);
        let mut n_boundary = 0;
        for e in &m.edges {
            match e.tris {
                [Some(_), None] => {
                    n_boundary += 1;
                    assert!(e.label.is_some());
                }
                [Some(_), Some(_)] => assert!(e.label.is_none()),
                _ => panic!("edge with no triangle"),
            }
        }
        assert_eq!(n_boundary, 16); // 4 sides x 4 edges
    }

    #[test]
    fn traction_in_brittle_rejected() {
        let dom = DomainSpec {
            polygon: DomainSpec::unit_square().polygon,
            brittle: vec![[0.0, 0.0, 0.5, 0.5]],
            dirichlet: vec![],
            traction: vec![([0.0, 0.0], [0.5, 0.0])],
        };
        match build_structured_mesh(&dom, 0.25) {
            Err(Error::NonConformingDomain(msg)) => {
                assert!(msg.contains("brittle"), "{msg}");
            }
            other => panic!("expected NonConformingDomain, got {other:?}"),
        }
    }

    #[test]
    fn locate_finds_triangles() {
        let m = unit_square_mesh(0.25);
        for &p in &[[0.1, 0.1], [0.9, 0.4], [0.49, 0.51], [0.999, 0.999]] {
            let t = m.locate(p).expect("inside point located");
            let q = m.tri_points(t);
            assert!(geom::point_in_triangle(p, q[0], q[1], q[2], 1e-9));
        }
        assert!(m.locate([1.5, 0.5]).is_none());
    }
}
