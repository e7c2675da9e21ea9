//! Small fixed-size geometry: points, 2x2 matrices, segments, triangles,
//! and the Gauss quadrature tables used by the energy integrals.

use serde::{Deserialize, Serialize};

pub type Point = [f64; 2];
pub type Vec2 = [f64; 2];

/// Row-major 2x2 matrix; used for deformation gradients.
pub type Mat2 = [[f64; 2]; 2];

pub fn sub(a: Point, b: Point) -> Vec2 {
    [a[0] - b[0], a[1] - b[1]]
}

pub fn add(a: Point, b: Vec2) -> Point {
    [a[0] + b[0], a[1] + b[1]]
}

pub fn scale(s: f64, v: Vec2) -> Vec2 {
    [s * v[0], s * v[1]]
}

pub fn dot(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

pub fn cross(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn norm(v: Vec2) -> f64 {
    dot(v, v).sqrt()
}

pub fn dist(a: Point, b: Point) -> f64 {
    norm(sub(a, b))
}

/// Point on the segment [x, y] at parameter t, in the convention
/// z = t*x + (1-t)*y (t = 1 lands on x).
pub fn knot_point(x: Point, y: Point, t: f64) -> Point {
    [t * x[0] + (1.0 - t) * y[0], t * x[1] + (1.0 - t) * y[1]]
}

pub fn lerp(a: Point, b: Point, s: f64) -> Point {
    [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])]
}

pub fn mat_frob2(m: &Mat2) -> f64 {
    m[0][0] * m[0][0] + m[0][1] * m[0][1] + m[1][0] * m[1][0] + m[1][1] * m[1][1]
}

pub fn mat_inner(a: &Mat2, b: &Mat2) -> f64 {
    a[0][0] * b[0][0] + a[0][1] * b[0][1] + a[1][0] * b[1][0] + a[1][1] * b[1][1]
}

pub fn mat_add(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [a[0][0] + b[0][0], a[0][1] + b[0][1]],
        [a[1][0] + b[1][0], a[1][1] + b[1][1]],
    ]
}

pub fn mat_scale(s: f64, m: &Mat2) -> Mat2 {
    [[s * m[0][0], s * m[0][1]], [s * m[1][0], s * m[1][1]]]
}

/// Signed area of the triangle (a, b, c); positive for counterclockwise.
pub fn signed_area(a: Point, b: Point, c: Point) -> f64 {
    0.5 * cross(sub(b, a), sub(c, a))
}

/// Barycentric coordinates of p with respect to (a, b, c).
pub fn barycentric(p: Point, a: Point, b: Point, c: Point) -> [f64; 3] {
    let area = signed_area(a, b, c);
    let la = signed_area(p, b, c) / area;
    let lb = signed_area(a, p, c) / area;
    let lc = signed_area(a, b, p) / area;
    [la, lb, lc]
}

/// Gradients of the three barycentric (hat) functions on (a, b, c).
/// Row k is the constant gradient of lambda_k.
pub fn hat_gradients(a: Point, b: Point, c: Point) -> [[f64; 2]; 3] {
    let twice_area = 2.0 * signed_area(a, b, c);
    // grad lambda_a is perpendicular to the opposite edge b->c.
    [
        [(b[1] - c[1]) / twice_area, (c[0] - b[0]) / twice_area],
        [(c[1] - a[1]) / twice_area, (a[0] - c[0]) / twice_area],
        [(a[1] - b[1]) / twice_area, (b[0] - a[0]) / twice_area],
    ]
}

/// Inner angles of a triangle, in radians, at vertices (a, b, c).
pub fn inner_angles(a: Point, b: Point, c: Point) -> [f64; 3] {
    let angle = |p: Point, q: Point, r: Point| {
        let u = sub(q, p);
        let v = sub(r, p);
        (dot(u, v) / (norm(u) * norm(v))).clamp(-1.0, 1.0).acos()
    };
    [angle(a, b, c), angle(b, c, a), angle(c, a, b)]
}

/// Diameter of the inscribed circle (2 * inradius).
pub fn indiameter(a: Point, b: Point, c: Point) -> f64 {
    let la = dist(b, c);
    let lb = dist(c, a);
    let lc = dist(a, b);
    let s = 0.5 * (la + lb + lc);
    let area = signed_area(a, b, c).abs();
    2.0 * area / s
}

/// Diameter of the circumscribed circle.
pub fn circumdiameter(a: Point, b: Point, c: Point) -> f64 {
    let la = dist(b, c);
    let lb = dist(c, a);
    let lc = dist(a, b);
    let area = signed_area(a, b, c).abs();
    la * lb * lc / (2.0 * area)
}

/// Unit normal of the segment a->b (rotation of the tangent by +90 degrees).
pub fn segment_normal(a: Point, b: Point) -> Vec2 {
    let t = sub(b, a);
    let l = norm(t);
    [-t[1] / l, t[0] / l]
}

/// Intersection of segments [p0,p1] and [q0,q1] as parameters (s, t) with
/// s along p and t along q, both in [0,1], or None when they do not cross.
/// Parallel segments report None; overlap must be screened by the caller.
pub fn segment_intersection(p0: Point, p1: Point, q0: Point, q1: Point) -> Option<(f64, f64)> {
    let d = sub(p1, p0);
    let e = sub(q1, q0);
    let denom = cross(d, e);
    if denom == 0.0 {
        return None;
    }
    let w = sub(q0, p0);
    let s = cross(w, e) / denom;
    let t = cross(w, d) / denom;
    if (0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&t) {
        Some((s, t))
    } else {
        None
    }
}

/// True when p lies inside or on the triangle (a, b, c), with a relative
/// tolerance on the barycentric coordinates.
pub fn point_in_triangle(p: Point, a: Point, b: Point, c: Point, tol: f64) -> bool {
    let l = barycentric(p, a, b, c);
    l.iter().all(|&x| x >= -tol)
}

/// Quadrature rule on the reference triangle, given as barycentric
/// coordinates and weights that sum to 1 (weights scale by triangle area).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TriRule {
    /// Vertex-midpoint 3-point rule, exact for polynomials of degree 2.
    Degree2,
    /// 7-point rule, exact for polynomials of degree 5.
    Degree5,
}

impl TriRule {
    pub fn points(self) -> &'static [([f64; 3], f64)] {
        match self {
            TriRule::Degree2 => &MIDEDGE3,
            TriRule::Degree5 => &GAUSS7,
        }
    }
}

/// Edge midpoint rule: exact up to degree 2.
static MIDEDGE3: [([f64; 3], f64); 3] = [
    ([0.5, 0.5, 0.0], 1.0 / 3.0),
    ([0.0, 0.5, 0.5], 1.0 / 3.0),
    ([0.5, 0.0, 0.5], 1.0 / 3.0),
];

/// Classical 7-point degree-5 rule.
static GAUSS7: [([f64; 3], f64); 7] = {
    const A: f64 = 0.059_715_871_789_77;
    const B: f64 = 0.470_142_064_105_115;
    const C: f64 = 0.797_426_985_353_087;
    const D: f64 = 0.101_286_507_323_456;
    const WA: f64 = 0.132_394_152_788_506;
    const WB: f64 = 0.125_939_180_544_827;
    [
        ([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0], 0.225),
        ([A, B, B], WA),
        ([B, A, B], WA),
        ([B, B, A], WA),
        ([C, D, D], WB),
        ([D, C, D], WB),
        ([D, D, C], WB),
    ]
};

/// Gauss-Legendre nodes/weights on [0, 1].
pub fn gauss_legendre_unit(n: usize) -> Vec<(f64, f64)> {
    // Nodes on [-1,1] mapped to [0,1]; weights halved.
    let raw: Vec<(f64, f64)> = match n {
        1 => vec![(0.0, 2.0)],
        2 => {
            let x = 1.0 / 3.0_f64.sqrt();
            vec![(-x, 1.0), (x, 1.0)]
        }
        3 => {
            let x = (3.0 / 5.0_f64).sqrt();
            vec![(-x, 5.0 / 9.0), (0.0, 8.0 / 9.0), (x, 5.0 / 9.0)]
        }
        5 => {
            let x1 = (5.0 - 2.0 * (10.0 / 7.0_f64).sqrt()).sqrt() / 3.0;
            let x2 = (5.0 + 2.0 * (10.0 / 7.0_f64).sqrt()).sqrt() / 3.0;
            let w1 = (322.0 + 13.0 * 70.0_f64.sqrt()) / 900.0;
            let w2 = (322.0 - 13.0 * 70.0_f64.sqrt()) / 900.0;
            vec![(-x2, w2), (-x1, w1), (0.0, 128.0 / 225.0), (x1, w1), (x2, w2)]
        }
        _ => panic!("unsupported Gauss-Legendre order {n}"),
    };
    raw.into_iter()
        .map(|(x, w)| (0.5 * (x + 1.0), 0.5 * w))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barycentric_roundtrip() {
        let (a, b, c) = ([0.0, 0.0], [2.0, 0.0], [0.0, 1.0]);
        let p = [0.5, 0.25];
        let l = barycentric(p, a, b, c);
        let q = [
            l[0] * a[0] + l[1] * b[0] + l[2] * c[0],
            l[0] * a[1] + l[1] * b[1] + l[2] * c[1],
        ];
        assert!(dist(p, q) < 1e-14);
        assert!((l.iter().sum::<f64>() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hat_gradient_reproduces_affine() {
        let (a, b, c) = ([0.1, 0.2], [1.3, 0.4], [0.5, 1.7]);
        // f(x, y) = 3x - 2y + 1 has gradient (3, -2).
        let f = |p: Point| 3.0 * p[0] - 2.0 * p[1] + 1.0;
        let g = hat_gradients(a, b, c);
        let gx = f(a) * g[0][0] + f(b) * g[1][0] + f(c) * g[2][0];
        let gy = f(a) * g[0][1] + f(b) * g[1][1] + f(c) * g[2][1];
        assert!((gx - 3.0).abs() < 1e-12);
        assert!((gy + 2.0).abs() < 1e-12);
    }

    #[test]
    fn right_isoceles_indiameter() {
        // legs of length 1: r = (a + b - c) / 2, so 2r = 2 - sqrt(2)
        let d = indiameter([0.0, 0.0], [1.0, 0.0], [0.0, 1.0]);
        assert!((d - (2.0 - 2.0_f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn quadrature_degree_exactness() {
        let (a, b, c) = ([0.0, 0.0], [1.0, 0.0], [0.0, 1.0]);
        // integral of x^2 y^0 over the unit right triangle = 1/12
        for rule in [TriRule::Degree2, TriRule::Degree5] {
            let mut s = 0.0;
            for &(l, w) in rule.points() {
                let x = l[0] * a[0] + l[1] * b[0] + l[2] * c[0];
                s += w * x * x;
            }
            s *= 0.5; // area
            assert!((s - 1.0 / 12.0).abs() < 1e-15, "{rule:?}");
        }
        // degree-5 rule integrates x^3 y^2 exactly: 1/280... on unit triangle
        let exact = 1.0 / 280.0;
        let mut s = 0.0;
        for &(l, w) in TriRule::Degree5.points() {
            let x = l[0] * a[0] + l[1] * b[0] + l[2] * c[0];
            let y = l[0] * a[1] + l[1] * b[1] + l[2] * c[1];
            s += w * x * x * x * y * y;
        }
        s *= 0.5;
        assert!((s - exact).abs() < 1e-15);
    }

    #[test]
    fn gauss_legendre_exactness() {
        for n in [1usize, 2, 3, 5] {
            let deg = 2 * n - 1;
            for k in 0..=deg {
                let exact = 1.0 / (k as f64 + 1.0);
                let s: f64 = gauss_legendre_unit(n)
                    .iter()
                    .map(|&(x, w)| w * x.powi(k as i32))
                    .sum();
                assert!((s - exact).abs() < 1e-14, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn segment_intersection_basic() {
        let r = segment_intersection([0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]).unwrap();
        assert!((r.0 - 0.5).abs() < 1e-15 && (r.1 - 0.5).abs() < 1e-15);
        assert!(segment_intersection([0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]).is_none());
    }
}
