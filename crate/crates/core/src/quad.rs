//! Convex quadrilaterals and the normal form `Q(s,t,v,w)`.
//!
//! The normal form has vertices `(0,0), (0,1), (s,t), (v,w)` listed
//! clockwise, with `s, t, v > 0` and `t >= w`. Side `S1` is the segment from
//! `(0,0)` to `(0,1)`; sides `S2, S3, S4` follow clockwise. When `v == s` the
//! quadrilateral is a trapezoid with `S1` parallel to `S3`.

use crate::error::{Error, Result};
use crate::geom::{approx_eq, circle_through, Point, Similarity, Tolerance};

/// A strictly convex quadrilateral in arbitrary pose.
///
/// Vertices are stored in the order given. Either orientation is accepted;
/// [`ConvexQuad::to_clockwise`] produces the clockwise listing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexQuad {
    vertices: [Point; 4],
}

impl ConvexQuad {
    pub fn new(vertices: [Point; 4]) -> Result<Self> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::NotConvex);
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if vertices[i] == vertices[j] {
                    return Err(Error::NotConvex);
                }
            }
        }
        let crosses = turn_crosses(&vertices);
        let positive = crosses.iter().all(|&c| c > 0.0);
        let negative = crosses.iter().all(|&c| c < 0.0);
        if !(positive || negative) {
            return Err(Error::NotConvex);
        }
        // near-collinear turns
        let diam = diameter_of(&vertices);
        let min_turn = crosses.iter().map(|c| c.abs()).fold(f64::INFINITY, f64::min);
        if min_turn <= 1e-14 * diam * diam {
            return Err(Error::NotConvex);
        }
        Ok(Self { vertices })
    }

    pub fn from_coords(coords: [(f64, f64); 4]) -> Result<Self> {
        Self::new(coords.map(Point::from))
    }

    pub fn vertices(&self) -> [Point; 4] {
        self.vertices
    }

    /// Signed area (positive for counterclockwise order).
    pub fn signed_area(&self) -> f64 {
        let v = &self.vertices;
        0.5 * (0..4).map(|i| v[i].cross(v[(i + 1) % 4])).sum::<f64>()
    }

    pub fn is_clockwise(&self) -> bool {
        self.signed_area() < 0.0
    }

    /// Same quadrilateral listed clockwise, keeping the first vertex.
    pub fn to_clockwise(&self) -> ConvexQuad {
        if self.is_clockwise() {
            *self
        } else {
            let [a, b, c, d] = self.vertices;
            ConvexQuad { vertices: [a, d, c, b] }
        }
    }

    pub fn diameter(&self) -> f64 {
        diameter_of(&self.vertices)
    }

    /// Sides as (start, end) pairs; side `i` runs from vertex `i` to `i+1`.
    pub fn sides(&self) -> [(Point, Point); 4] {
        let v = self.vertices;
        [(v[0], v[1]), (v[1], v[2]), (v[2], v[3]), (v[3], v[0])]
    }

    pub fn transformed(&self, t: &Similarity) -> ConvexQuad {
        ConvexQuad { vertices: self.vertices.map(|p| t.apply(p)) }
    }

    pub fn is_parallelogram(&self, tol: Tolerance) -> bool {
        let [s0, s1, s2, s3] = self.sides();
        sides_parallel(s0, s2, tol.rel) && sides_parallel(s1, s3, tol.rel)
    }

    pub fn is_trapezoid(&self, tol: Tolerance) -> bool {
        let [s0, s1, s2, s3] = self.sides();
        sides_parallel(s0, s2, tol.rel) || sides_parallel(s1, s3, tol.rel)
    }

    /// Quadrilateral of side midpoints, in the same vertex order.
    pub fn midpoint_quad(&self) -> ConvexQuad {
        let mids = self.sides().map(|(a, b)| a.midpoint(b));
        ConvexQuad { vertices: mids }
    }

    /// Intersection of the diagonals `v0 v2` and `v1 v3`.
    pub fn diagonal_intersection(&self) -> Point {
        let [a, b, c, d] = self.vertices;
        let r = c - a;
        let s = d - b;
        let denom = r.cross(s);
        let u = (b - a).cross(s) / denom;
        a + r * u
    }

    /// Circle through all four vertices, if they are concyclic within `tol`.
    pub fn circumcircle(&self, tol: Tolerance) -> Option<(Point, f64)> {
        let [a, b, c, d] = self.vertices;
        let (center, radius) = circle_through(a, b, c, tol.rel)?;
        if (center.dist(d) - radius).abs() <= tol.rel * radius.max(self.diameter()) {
            Some((center, radius))
        } else {
            None
        }
    }
}

fn turn_crosses(v: &[Point; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (i, c) in out.iter_mut().enumerate() {
        let e1 = v[(i + 1) % 4] - v[i];
        let e2 = v[(i + 2) % 4] - v[(i + 1) % 4];
        *c = e1.cross(e2);
    }
    out
}

fn diameter_of(v: &[Point]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            d = d.max(v[i].dist(v[j]));
        }
    }
    d
}

fn sides_parallel(a: (Point, Point), b: (Point, Point), tol: f64) -> bool {
    let da = a.1 - a.0;
    let db = b.1 - b.0;
    da.cross(db).abs() <= tol * da.norm() * db.norm()
}

/// Polynomial expressions in `(s,t,v,w)` that the closed forms are built from.
///
/// `n = vt - ws`, `beta = s² + t²`, `i = t³ - t² + s²(t+1)`,
/// `h = s v beta - t i`, `l = (v - s) beta + 2st`,
/// `cyc = beta v - s(v² + w²) - n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities {
    pub n: f64,
    pub beta: f64,
    pub i: f64,
    pub h: f64,
    pub l: f64,
    pub cyc: f64,
}

/// A quadrilateral in normal form together with the similarity that carries
/// the normal form back onto the source quadrilateral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalQuad {
    pub s: f64,
    pub t: f64,
    pub v: f64,
    pub w: f64,
    pub to_original: Similarity,
}

impl CanonicalQuad {
    /// Normal form with the identity pose, validating the normal-form
    /// constraints. Parallelograms are accepted here; the operations that
    /// cannot handle them reject them individually.
    pub fn new(s: f64, t: f64, v: f64, w: f64) -> Result<Self> {
        Self::with_pose(s, t, v, w, Similarity::IDENTITY, Tolerance::default())
    }

    pub fn with_pose(
        s: f64,
        t: f64,
        v: f64,
        w: f64,
        to_original: Similarity,
        tol: Tolerance,
    ) -> Result<Self> {
        let violation = |msg: &str| Err(Error::ConstraintViolation(msg.to_string()));
        if ![s, t, v, w].iter().all(|x| x.is_finite()) {
            return violation("non-finite parameter");
        }
        if !(s > 0.0 && t > 0.0 && v > 0.0) {
            return violation("s, t, v must be positive");
        }
        if t < w {
            return violation("t >= w required");
        }
        if approx_eq(s, v, tol.rel) {
            if t <= w {
                return violation("trapezoid requires t > w");
            }
            return Ok(Self { s, t, v: s, w, to_original });
        }
        let n = v * t - w * s;
        if n + s - v <= 0.0 || n <= 0.0 {
            return violation("convexity requires N + s - v > 0 and N > 0");
        }
        if approx_eq(n, v, tol.rel) {
            return violation("sides S2 and S4 are parallel (N = v)");
        }
        Ok(Self { s, t, v, w, to_original })
    }

    pub fn vertices(&self) -> [Point; 4] {
        [Point::new(0.0, 0.0), Point::new(0.0, 1.0), Point::new(self.s, self.t), Point::new(self.v, self.w)]
    }

    /// Vertices mapped back to the original pose.
    pub fn original_vertices(&self) -> [Point; 4] {
        self.vertices().map(|p| self.to_original.apply(p))
    }

    pub fn quad(&self) -> ConvexQuad {
        ConvexQuad { vertices: self.vertices() }
    }

    pub fn diameter(&self) -> f64 {
        diameter_of(&self.vertices())
    }

    pub fn derived(&self) -> DerivedQuantities {
        let (s, t, v, w) = (self.s, self.t, self.v, self.w);
        let n = v * t - w * s;
        let beta = s * s + t * t;
        let i = t * t * t - t * t + s * s * (t + 1.0);
        let h = s * v * beta - t * i;
        let l = (v - s) * beta + 2.0 * s * t;
        let cyc = beta * v - s * (v * v + w * w) - n;
        DerivedQuantities { n, beta, i, h, l, cyc }
    }

    /// `tau(r) = (s - v) r + v`.
    pub fn tau(&self, r: f64) -> f64 {
        (self.s - self.v) * r + self.v
    }

    /// True when `S1` is parallel to `S3` (`v == s`), the only parallel pair
    /// the normal form admits.
    pub fn is_trapezoid(&self, tol: Tolerance) -> bool {
        let [s0, s1, s2, s3] = self.quad().sides();
        sides_parallel(s0, s2, tol.rel) || sides_parallel(s1, s3, tol.rel)
    }

    pub fn is_parallelogram(&self, tol: Tolerance) -> bool {
        self.quad().is_parallelogram(tol)
    }

    pub fn is_cyclic(&self, tol: Tolerance) -> bool {
        let (s, v, w) = (self.s, self.v, self.w);
        let d = self.derived();
        let scale = 1f64.max((d.beta * v).abs()).max((s * (v * v + w * w)).abs()).max(d.n.abs());
        d.cyc.abs() <= tol.rel * scale
    }

    pub fn is_orthodiagonal(&self, tol: Tolerance) -> bool {
        let target = 1.0 - self.s * self.v / self.t;
        approx_eq(self.w, target, tol.rel)
    }

    pub fn diagonal_intersection(&self) -> Point {
        let n = self.derived().n;
        let k = self.v / (n + self.s);
        Point::new(k * self.s, k * self.t)
    }

    /// Circumcenter `EP = ((beta - t) / 2s, 1/2)` of a cyclic quadrilateral.
    pub fn circumcenter(&self, tol: Tolerance) -> Result<Point> {
        if !self.is_cyclic(tol) {
            return Err(Error::NotCyclic);
        }
        Ok(self.circumcenter_unchecked())
    }

    /// Center of the circle through `(0,0), (0,1), (s,t)`; equals `EP` when
    /// the quadrilateral is cyclic.
    pub fn circumcenter_unchecked(&self) -> Point {
        let beta = self.s * self.s + self.t * self.t;
        Point::new((beta - self.t) / (2.0 * self.s), 0.5)
    }

    pub fn midpoints(&self) -> [Point; 4] {
        let (s, t, v, w) = (self.s, self.t, self.v, self.w);
        [
            Point::new(0.0, 0.5),
            Point::new(0.5 * s, 0.5 * (1.0 + t)),
            Point::new(0.5 * (s + v), 0.5 * (t + w)),
            Point::new(0.5 * v, 0.5 * w),
        ]
    }

    /// Center of the circle through the side midpoints of an orthodiagonal
    /// quadrilateral.
    pub fn midpoint_circumcenter(&self, tol: Tolerance) -> Result<Point> {
        if !self.is_orthodiagonal(tol) {
            return Err(Error::NotOrthodiagonal);
        }
        let [m1, m2, m3, _] = self.midpoints();
        let (center, _) = circle_through(m1, m2, m3, tol.rel).ok_or(Error::CollinearMidpoints)?;
        Ok(center)
    }
}

/// Moves `q` onto the normal form.
///
/// Starting vertices are tried in input order, first walking forward through
/// the vertex list and then backward; the first labelling satisfying the
/// normal-form constraints wins. For trapezoids the labelling must put a
/// parallel pair on `S1` and `S3`.
pub fn canonicalize(q: &ConvexQuad, tol: Tolerance) -> Result<CanonicalQuad> {
    let trapezoid = q.is_trapezoid(tol);
    let v = q.vertices();
    for &backward in &[false, true] {
        for start in 0..4 {
            let idx = |k: usize| {
                if backward {
                    (start + 4 - k) % 4
                } else {
                    (start + k) % 4
                }
            };
            let labelled = [v[idx(0)], v[idx(1)], v[idx(2)], v[idx(3)]];
            if trapezoid && !sides_parallel((labelled[0], labelled[1]), (labelled[2], labelled[3]), tol.rel)
            {
                continue;
            }
            if let Some(cq) = normal_form(&labelled, trapezoid, tol) {
                return Ok(cq);
            }
        }
    }
    Err(Error::Degenerate)
}

fn normal_form(labelled: &[Point; 4], trapezoid: bool, tol: Tolerance) -> Option<CanonicalQuad> {
    let origin = labelled[0];
    let up = labelled[1] - origin;
    let u = up.norm();
    // Rotation taking (0, u) onto `up`.
    let rotation = up.y.atan2(up.x) - std::f64::consts::FRAC_PI_2;
    let rotate_only = Similarity { scale: u, rotation, translation: origin, reflect: false };
    let p3 = rotate_only.apply_inverse(labelled[2]);
    let p4 = rotate_only.apply_inverse(labelled[3]);
    let reflect = p3.x < 0.0;
    let to_original = Similarity { reflect, ..rotate_only };
    let (p3, p4) = if reflect { (Point::new(-p3.x, p3.y), Point::new(-p4.x, p4.y)) } else { (p3, p4) };
    if p3.y < p4.y {
        return None;
    }
    // S1 parallel to S3 was checked by the caller; pin v to s exactly.
    let v = if trapezoid { p3.x } else { p4.x };
    CanonicalQuad::with_pose(p3.x, p3.y, v, p4.y, to_original, tol).ok()
}
