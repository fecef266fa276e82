//! Plane points, similarity transforms and the shared tolerance configuration.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

/// Relative tolerances used by the predicates.
///
/// `rel` scales every equality test in the predicates (cyclic, orthodiagonal,
/// parallel sides, tangency). `focus` is the relative distance, in units of the
/// quadrilateral diameter, below which a focus is considered to coincide with
/// `EP` or `IP`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub focus: f64,
}

impl Tolerance {
    pub const DEFAULT_REL: f64 = 1e-9;
    pub const DEFAULT_FOCUS: f64 = 1e-6;

    pub fn with_rel(rel: f64) -> Self {
        Self { rel, ..Self::default() }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { rel: Self::DEFAULT_REL, focus: Self::DEFAULT_FOCUS }
    }
}

/// `|a - b| <= tol * max(1, |a|, |b|)`
pub(crate) fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn midpoint(self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z.re, z.im)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Self {
        Point::from_complex(z)
    }
}

impl From<Point> for Complex64 {
    fn from(p: Point) -> Self {
        p.to_complex()
    }
}

/// A similarity of the plane.
///
/// `apply(p) = translation + scale * R(rotation) * M(p)` where `M` is the
/// reflection `(x, y) -> (-x, y)` when `reflect` is set and the identity
/// otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Similarity {
    pub scale: f64,
    pub rotation: f64,
    pub translation: Point,
    pub reflect: bool,
}

impl Default for Similarity {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl Similarity {
    pub const IDENTITY: Similarity =
        Similarity { scale: 1.0, rotation: 0.0, translation: Point::ORIGIN, reflect: false };

    pub fn new(scale: f64, rotation: f64, translation: Point, reflect: bool) -> Self {
        assert!(scale > 0.0 && scale.is_finite(), "similarity scale must be positive");
        Self { scale, rotation, translation, reflect }
    }

    /// Linear part as a row-major 2x2 matrix.
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        let (sin, cos) = self.rotation.sin_cos();
        let k = self.scale;
        let m = if self.reflect { -1.0 } else { 1.0 };
        [[k * cos * m, -k * sin], [k * sin * m, k * cos]]
    }

    pub fn apply(&self, p: Point) -> Point {
        let [[a, b], [c, d]] = self.matrix();
        Point::new(a * p.x + b * p.y + self.translation.x, c * p.x + d * p.y + self.translation.y)
    }

    pub fn apply_inverse(&self, p: Point) -> Point {
        let q = p - self.translation;
        let (sin, cos) = self.rotation.sin_cos();
        let x = (cos * q.x + sin * q.y) / self.scale;
        let y = (-sin * q.x + cos * q.y) / self.scale;
        if self.reflect {
            Point::new(-x, y)
        } else {
            Point::new(x, y)
        }
    }

    pub fn inverse(&self) -> Similarity {
        // M R(a) has inverse R(-a) M = M R(a) when reflecting.
        let rotation = if self.reflect { self.rotation } else { -self.rotation };
        let mut inv = Similarity {
            scale: 1.0 / self.scale,
            rotation,
            translation: Point::ORIGIN,
            reflect: self.reflect,
        };
        let t = inv.apply(self.translation);
        inv.translation = Point::new(-t.x, -t.y);
        inv
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Similarity) -> Similarity {
        // R(a) M R(b) M = R(a - b); R(a) R(b) M = R(a + b) M; and
        // R(a) M R(b) = R(a - b) M.
        let rotation =
            if self.reflect { self.rotation - other.rotation } else { self.rotation + other.rotation };
        let mut out = Similarity {
            scale: self.scale * other.scale,
            rotation,
            translation: Point::ORIGIN,
            reflect: self.reflect != other.reflect,
        };
        out.translation = self.apply(other.translation);
        out
    }
}

/// Center and radius of the circle through three points, `None` when they are
/// (numerically) collinear.
pub fn circle_through(a: Point, b: Point, c: Point, tol: f64) -> Option<(Point, f64)> {
    let ab = b - a;
    let ac = c - a;
    let d = 2.0 * ab.cross(ac);
    let scale = ab.norm() * ac.norm();
    if d.abs() <= tol * scale || scale == 0.0 {
        return None;
    }
    let ab2 = ab.dot(ab);
    let ac2 = ac.dot(ac);
    let ux = (ac.y * ab2 - ab.y * ac2) / d;
    let uy = (ab.x * ac2 - ac.x * ab2) / d;
    let center = Point::new(a.x + ux, a.y + uy);
    Some((center, ux.hypot(uy)))
}
