//! General conics `A x² + B xy + C y² + D x + E y + F = 0`.
//!
//! Ellipse quantities are read off the coefficients through
//! `Δ = 4AC - B²` and `δ = C D² + A E² - B D E - F Δ`; the conic is a real
//! ellipse iff both are positive once the coefficients are signed so that
//! `A > 0`.

use crate::error::{Error, Result};
use crate::geom::{Point, Similarity};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

/// Intermediate quantities of the coefficient foci formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocalTerms {
    pub mu: f64,
    pub m: f64,
    pub k_a: f64,
    pub k_c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseGeometry {
    pub center: Point,
    pub semi_major: f64,
    pub semi_minor: f64,
    /// Direction of the major axis, in `(-π/2, π/2]`.
    pub rotation: f64,
    /// `(F1, F2)` with `F2` the rightmost focus (uppermost on a tie).
    pub foci: (Point, Point),
    pub big_delta: f64,
    pub small_delta: f64,
}

impl EllipseGeometry {
    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.semi_major * self.semi_minor
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TangencyKind {
    Secant,
    Tangent,
    Disjoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangencyResult {
    pub kind: TangencyKind,
    /// Contact point, present for tangent lines.
    pub point: Option<Point>,
    /// Line parameter of the contact point: `p1 + param (p2 - p1)`.
    pub param: Option<f64>,
}

impl TangencyResult {
    /// Tangent with the contact point on the closed segment `p1 p2`.
    pub fn touches_segment(&self, tol: f64) -> bool {
        match (self.kind, self.param) {
            (TangencyKind::Tangent, Some(u)) => (-tol..=1.0 + tol).contains(&u),
            _ => false,
        }
    }
}

impl Conic {
    /// Builds a conic, signing the coefficients so that `A >= 0` (or `C > 0`
    /// when `A == 0`).
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Result<Self> {
        if a == 0.0 && b == 0.0 && c == 0.0 {
            return Err(Error::ZeroQuadraticPart);
        }
        let flip = a < 0.0 || (a == 0.0 && (c < 0.0 || (c == 0.0 && b < 0.0)));
        let conic = Self { a, b, c, d, e, f };
        Ok(if flip { conic.scaled(-1.0) } else { conic })
    }

    pub fn from_array(k: [f64; 6]) -> Result<Self> {
        Self::new(k[0], k[1], k[2], k[3], k[4], k[5])
    }

    pub fn coefficients(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    pub fn scaled(&self, k: f64) -> Conic {
        let [a, b, c, d, e, f] = self.coefficients().map(|x| x * k);
        Conic { a, b, c, d, e, f }
    }

    /// Scales so the largest-magnitude coefficient is ±1, keeping `A >= 0`.
    pub fn normalized(&self) -> Conic {
        let max = self.coefficients().iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let n = self.scaled(1.0 / max);
        // `A >= 0` is preserved by a positive factor, re-zero negative zeros
        let [a, b, c, d, e, f] = n.coefficients().map(|x| if x == 0.0 { 0.0 } else { x });
        Conic { a, b, c, d, e, f }
    }

    /// Largest deviation between the normalized coefficient vectors; zero when
    /// the two conics are scalar multiples of each other.
    pub fn proportionality_error(&self, other: &Conic) -> f64 {
        let p = self.normalized().coefficients();
        let q = other.normalized().coefficients();
        p.iter().zip(q.iter()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    pub fn eval(&self, p: Point) -> f64 {
        let (x, y) = (p.x, p.y);
        self.a * x * x + self.b * x * y + self.c * y * y + self.d * x + self.e * y + self.f
    }

    /// `Δ = 4AC - B²`
    pub fn big_delta(&self) -> f64 {
        4.0 * self.a * self.c - self.b * self.b
    }

    /// `δ = C D² + A E² - B D E - F Δ`
    pub fn small_delta(&self) -> f64 {
        let Conic { a, b, c, d, e, f } = *self;
        c * d * d + a * e * e - b * d * e - f * self.big_delta()
    }

    pub fn is_real_ellipse(&self) -> bool {
        let Conic { a, .. } = *self;
        let s = if a < 0.0 { self.scaled(-1.0) } else { *self };
        s.big_delta() > 0.0 && s.small_delta() > 0.0
    }

    pub fn center(&self) -> Result<Point> {
        let delta = self.big_delta();
        let scale = self.a.abs().max(self.c.abs()).max(self.b.abs());
        if delta.abs() <= 1e-14 * scale * scale {
            return Err(Error::DegenerateConic);
        }
        let Conic { a, b, c, d, e, .. } = *self;
        Ok(Point::new((b * e - 2.0 * c * d) / delta, (b * d - 2.0 * a * e) / delta))
    }

    /// `μ, M, k_A, k_C` computed term by term.
    pub fn focal_terms(&self) -> Result<FocalTerms> {
        if !self.is_real_ellipse() {
            return Err(Error::NotEllipse);
        }
        let s = if self.a < 0.0 { self.scaled(-1.0) } else { *self };
        let delta = s.big_delta();
        let mu = 4.0 * s.small_delta() / (delta * delta);
        let m = (s.a - s.c).powi(2) + s.b * s.b;
        let root = m.sqrt();
        Ok(FocalTerms {
            mu,
            m,
            k_a: 0.5 * mu * (s.c - s.a + root),
            k_c: 0.5 * mu * (s.a - s.c + root),
        })
    }

    /// Foci `(F1, F2)` of a real ellipse, `F2` the rightmost (uppermost when
    /// the foci share an x-coordinate). A circle returns its center twice.
    pub fn foci(&self) -> Result<(Point, Point)> {
        let terms = self.focal_terms()?;
        let center = self.center()?;
        let s = if self.a < 0.0 { self.scaled(-1.0) } else { *self };
        // The smaller of k_A, k_C loses digits to cancellation; recover it from
        // k_A k_C = μ² B² / 4.
        let prod = 0.25 * terms.mu * terms.mu * s.b * s.b;
        let (k_a, k_c) = if s.c >= s.a {
            let k_a = terms.k_a;
            (k_a, if k_a > 0.0 { prod / k_a } else { 0.0 })
        } else {
            let k_c = terms.k_c;
            (if k_c > 0.0 { prod / k_c } else { 0.0 }, k_c)
        };
        let (dx, dy) = (k_a.max(0.0).sqrt(), k_c.max(0.0).sqrt());
        let (f1, f2) = if s.b != 0.0 {
            let sg = s.b.signum();
            (
                Point::new(center.x - dx, center.y + sg * dy),
                Point::new(center.x + dx, center.y - sg * dy),
            )
        } else if s.a > s.c {
            (Point::new(center.x, center.y - dy), Point::new(center.x, center.y + dy))
        } else {
            (Point::new(center.x - dx, center.y), Point::new(center.x + dx, center.y))
        };
        Ok(order_foci(f1, f2))
    }

    /// Center, semi-axes, orientation and foci of a real ellipse.
    pub fn geometry(&self) -> Result<EllipseGeometry> {
        if !self.is_real_ellipse() {
            return Err(Error::NotEllipse);
        }
        let s = if self.a < 0.0 { self.scaled(-1.0) } else { *self };
        let big_delta = s.big_delta();
        let small_delta = s.small_delta();
        let root = ((s.a - s.c).powi(2) + s.b * s.b).sqrt();
        let lam_small = 0.5 * (s.a + s.c - root);
        let lam_big = 0.5 * (s.a + s.c + root);
        // λ_small λ_big = Δ/4; use the product to avoid cancellation.
        let lam_small = if lam_small > 0.5 * lam_big { lam_small } else { 0.25 * big_delta / lam_big };
        let level = small_delta / big_delta;
        let semi_major = (level / lam_small).sqrt();
        let semi_minor = (level / lam_big).sqrt();
        let mut rotation = 0.5 * (s.b.atan2(s.a - s.c) + std::f64::consts::PI);
        if rotation > std::f64::consts::FRAC_PI_2 {
            rotation -= std::f64::consts::PI;
        }
        Ok(EllipseGeometry {
            center: self.center()?,
            semi_major,
            semi_minor,
            rotation,
            foci: self.foci()?,
            big_delta,
            small_delta,
        })
    }

    /// `(a, b, area)` with `area = 2π δ / Δ^{3/2}`.
    pub fn semi_axes_and_area(&self) -> Result<(f64, f64, f64)> {
        let g = self.geometry()?;
        let area = 2.0 * std::f64::consts::PI * g.small_delta / g.big_delta.powf(1.5);
        Ok((g.semi_major, g.semi_minor, area))
    }

    /// Ellipse with the given center, semi-axes and major-axis direction.
    pub fn from_geometry(center: Point, semi_major: f64, semi_minor: f64, rotation: f64) -> Conic {
        let (sin, cos) = rotation.sin_cos();
        let (a2, b2) = (semi_major * semi_major, semi_minor * semi_minor);
        // (u/a)² + (v/b)² = 1 with u, v the rotated offsets, multiplied by a²b².
        let a = b2 * cos * cos + a2 * sin * sin;
        let b = 2.0 * (b2 - a2) * sin * cos;
        let c = b2 * sin * sin + a2 * cos * cos;
        let unit = Conic { a, b, c, d: 0.0, e: 0.0, f: -a2 * b2 };
        unit.translated(center)
    }

    /// The conic moved by `+offset`.
    pub fn translated(&self, offset: Point) -> Conic {
        self.compose_affine([[1.0, 0.0], [0.0, 1.0]], Point::new(-offset.x, -offset.y))
    }

    /// `φ(M X + b)` as a conic in `X`.
    pub fn compose_affine(&self, m: [[f64; 2]; 2], b: Point) -> Conic {
        let Conic { a, b: bb, c, d, e, f } = *self;
        let q = [[a, 0.5 * bb], [0.5 * bb, c]];
        // M^T Q M
        let mut qm = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                qm[i][j] = (0..2)
                    .map(|k| (0..2).map(|l| m[k][i] * q[k][l] * m[l][j]).sum::<f64>())
                    .sum();
            }
        }
        let bv = [b.x, b.y];
        let lin = [d, e];
        // 2 b^T Q M + L M
        let mut new_lin = [0.0; 2];
        for (j, out) in new_lin.iter_mut().enumerate() {
            let mut acc = 0.0;
            for k in 0..2 {
                let qb: f64 = (0..2).map(|l| bv[l] * q[l][k]).sum();
                acc += (2.0 * qb + lin[k]) * m[k][j];
            }
            *out = acc;
        }
        let qbb: f64 = (0..2).map(|k| (0..2).map(|l| bv[k] * q[k][l] * bv[l]).sum::<f64>()).sum();
        Conic {
            a: qm[0][0],
            b: 2.0 * qm[0][1],
            c: qm[1][1],
            d: new_lin[0],
            e: new_lin[1],
            f: qbb + d * b.x + e * b.y + f,
        }
    }

    /// Image of the conic under the similarity `t`.
    pub fn transformed(&self, t: &Similarity) -> Conic {
        let inv = t.inverse();
        let out = self.compose_affine(inv.matrix(), inv.translation);
        Conic::new(out.a, out.b, out.c, out.d, out.e, out.f).unwrap_or(out)
    }

    /// Classifies the line through `p1, p2` against the conic. The
    /// discriminant of the restricted quadratic is compared against
    /// `tol * max(β², |4αγ|)`.
    pub fn line_tangency(&self, p1: Point, p2: Point, tol: f64) -> Result<TangencyResult> {
        let dir = p2 - p1;
        if dir.norm() == 0.0 {
            return Err(Error::DegenerateLine);
        }
        let Conic { a, b, c, d, e, .. } = *self;
        let alpha = a * dir.x * dir.x + b * dir.x * dir.y + c * dir.y * dir.y;
        let beta = 2.0 * a * p1.x * dir.x
            + b * (p1.x * dir.y + p1.y * dir.x)
            + 2.0 * c * p1.y * dir.y
            + d * dir.x
            + e * dir.y;
        let gamma = self.eval(p1);
        let disc = beta * beta - 4.0 * alpha * gamma;
        let scale = (beta * beta).max((4.0 * alpha * gamma).abs());
        let none = |kind| TangencyResult { kind, point: None, param: None };
        if disc.abs() <= tol * scale {
            if alpha == 0.0 {
                return Ok(none(TangencyKind::Secant));
            }
            let u = -beta / (2.0 * alpha);
            Ok(TangencyResult { kind: TangencyKind::Tangent, point: Some(p1 + dir * u), param: Some(u) })
        } else if disc > 0.0 {
            Ok(none(TangencyKind::Secant))
        } else {
            Ok(none(TangencyKind::Disjoint))
        }
    }
}

/// Orders a focus pair so the second is the rightmost, uppermost on a tie.
pub fn order_foci(p: Point, q: Point) -> (Point, Point) {
    let tie = (p.x - q.x).abs() <= 1e-12 * 1f64.max(p.x.abs()).max(q.x.abs());
    let q_second = if tie { q.y >= p.y } else { q.x > p.x };
    if q_second {
        (p, q)
    } else {
        (q, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex() -> Conic {
        Conic::new(649.0, 216.0, 1936.0, -2996.0, -2992.0, 1156.0).unwrap()
    }

    fn trap() -> Conic {
        Conic::new(3.0, 0.0, 4.0, -6.0, -4.0, 1.0).unwrap()
    }

    fn near(p: Point, x: f64, y: f64, tol: f64) -> bool {
        (p.x - x).abs() < tol && (p.y - y).abs() < tol
    }

    #[test]
    fn real_ellipse_predicate() {
        assert!(Conic::new(1.0, 0.0, 1.0, 0.0, 0.0, -1.0).unwrap().is_real_ellipse());
        assert!(!Conic::new(1.0, 0.0, 1.0, 0.0, 0.0, 1.0).unwrap().is_real_ellipse());
        assert!(ex().is_real_ellipse());
        // hyperbola, parabola
        assert!(!Conic::new(1.0, 0.0, -1.0, 0.0, 0.0, -1.0).unwrap().is_real_ellipse());
        assert!(!Conic::new(1.0, 0.0, 0.0, 0.0, -1.0, 0.0).unwrap().is_real_ellipse());
        // negated coefficients describe the same ellipse
        assert!(ex().scaled(-3.0).is_real_ellipse());
    }

    #[test]
    fn zero_quadratic_part_rejected() {
        assert_eq!(Conic::new(0.0, 0.0, 0.0, 1.0, 1.0, 1.0), Err(Error::ZeroQuadraticPart));
    }

    #[test]
    fn sign_normalization() {
        let c = Conic::new(-1.0, 2.0, -3.0, 0.0, 0.0, 1.0).unwrap();
        assert_eq!(c.a, 1.0);
        assert_eq!(c.b, -2.0);
        let c = Conic::new(0.0, 1.0, -2.0, 0.0, 0.0, 1.0).unwrap();
        assert_eq!(c.c, 2.0);
    }

    #[test]
    fn centers() {
        let c = Conic::new(0.25, 0.0, 1.0, 0.0, 0.0, -1.0).unwrap();
        assert!(near(c.center().unwrap(), 0.0, 0.0, 1e-15));
        assert!(near(ex().center().unwrap(), 2.2, 0.65, 1e-12));
        assert!(near(trap().center().unwrap(), 1.0, 0.5, 1e-15));
        // gradient vanishes at the center
        let p = ex().center().unwrap();
        let c = ex();
        assert!((2.0 * c.a * p.x + c.b * p.y + c.d).abs() < 1e-9);
        assert!((c.b * p.x + 2.0 * c.c * p.y + c.e).abs() < 1e-9);
        let parabola = Conic::new(1.0, 2.0, 1.0, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(parabola.center(), Err(Error::DegenerateConic));
    }

    #[test]
    fn foci_axis_aligned() {
        let c = Conic::new(1.0, 0.0, 4.0, 0.0, 0.0, -4.0).unwrap();
        let (f1, f2) = c.foci().unwrap();
        let r3 = 3f64.sqrt();
        assert!(near(f1, -r3, 0.0, 1e-12));
        assert!(near(f2, r3, 0.0, 1e-12));
        // vertical major axis: F2 uppermost
        let c = Conic::new(4.0, 0.0, 1.0, 0.0, 0.0, -4.0).unwrap();
        let (f1, f2) = c.foci().unwrap();
        assert!(near(f1, 0.0, -r3, 1e-12));
        assert!(near(f2, 0.0, r3, 1e-12));
    }

    #[test]
    fn foci_of_trapezoid_and_example_ellipses() {
        let (f1, f2) = trap().foci().unwrap();
        assert!(near(f1, 0.5, 0.5, 1e-12));
        assert!(near(f2, 1.5, 0.5, 1e-12));
        let (f1, f2) = ex().foci().unwrap();
        assert!(near(f1, 0.4, 0.8, 1e-12));
        assert!(near(f2, 4.0, 0.5, 1e-12));
    }

    #[test]
    fn circle_foci_coincide_with_center() {
        let c = Conic::new(1.0, 0.0, 1.0, -2.0, -4.0, 1.0).unwrap();
        let (f1, f2) = c.foci().unwrap();
        assert!(near(f1, 1.0, 2.0, 1e-15) && near(f2, 1.0, 2.0, 1e-15));
    }

    #[test]
    fn focal_terms_product_identity() {
        let t = ex().focal_terms().unwrap();
        let c = ex();
        let expected = 0.25 * t.mu * t.mu * c.b * c.b;
        assert!((t.k_a * t.k_c - expected).abs() <= 1e-9 * expected);
    }

    #[test]
    fn not_ellipse_errors() {
        let h = Conic::new(1.0, 0.0, -1.0, 0.0, 0.0, -1.0).unwrap();
        assert_eq!(h.foci(), Err(Error::NotEllipse));
        assert_eq!(h.semi_axes_and_area(), Err(Error::NotEllipse));
    }

    #[test]
    fn axes_and_area() {
        let (a, b, area) = Conic::new(1.0, 0.0, 4.0, 0.0, 0.0, -4.0).unwrap().semi_axes_and_area().unwrap();
        assert!((a - 2.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
        assert!((area - 2.0 * std::f64::consts::PI).abs() < 1e-12);
        let (a, b, _) = trap().semi_axes_and_area().unwrap();
        assert!((a * a * b * b - 0.75).abs() < 1e-12);
    }

    #[test]
    fn constructed_ellipse_round_trip() {
        let c = Conic::from_geometry(Point::new(1.5, -2.0), 3.0, 1.25, 0.6);
        let g = c.geometry().unwrap();
        assert!(near(g.center, 1.5, -2.0, 1e-12));
        assert!((g.semi_major - 3.0).abs() < 1e-12);
        assert!((g.semi_minor - 1.25).abs() < 1e-12);
        assert!((g.rotation - 0.6).abs() < 1e-12);
        let focal = (9.0f64 - 1.5625).sqrt();
        let (f1, f2) = g.foci;
        assert!(near(f2, 1.5 + focal * 0.6f64.cos(), -2.0 + focal * 0.6f64.sin(), 1e-12));
        assert!(near(f1, 1.5 - focal * 0.6f64.cos(), -2.0 - focal * 0.6f64.sin(), 1e-12));
    }

    #[test]
    fn tangency_oracle() {
        let circle = Conic::new(1.0, 0.0, 1.0, 0.0, 0.0, -1.0).unwrap();
        let t = circle.line_tangency(Point::new(1.0, -1.0), Point::new(1.0, 1.0), 1e-9).unwrap();
        assert_eq!(t.kind, TangencyKind::Tangent);
        assert!(near(t.point.unwrap(), 1.0, 0.0, 1e-15));
        assert!(t.touches_segment(0.0));
        let t = circle.line_tangency(Point::new(2.0, -1.0), Point::new(2.0, 1.0), 1e-9).unwrap();
        assert_eq!(t.kind, TangencyKind::Disjoint);
        let t = circle.line_tangency(Point::new(0.0, -1.0), Point::new(0.0, 1.0), 1e-9).unwrap();
        assert_eq!(t.kind, TangencyKind::Secant);
        assert_eq!(
            circle.line_tangency(Point::new(0.0, 0.0), Point::new(0.0, 0.0), 1e-9),
            Err(Error::DegenerateLine)
        );
    }

    #[test]
    fn example_ellipse_touches_every_side() {
        let v = [Point::new(0.0, 0.0), Point::new(0.0, 1.0), Point::new(2.0, 4.0), Point::new(6.8, -2.4)];
        for i in 0..4 {
            let t = ex().line_tangency(v[i], v[(i + 1) % 4], 1e-9).unwrap();
            assert_eq!(t.kind, TangencyKind::Tangent, "side {i}");
            let u = t.param.unwrap();
            assert!(u > 0.0 && u < 1.0);
        }
    }

    #[test]
    fn similarity_moves_foci() {
        let t = Similarity::new(2.0, 0.3, Point::new(-1.0, 4.0), true);
        let moved = ex().transformed(&t);
        let (f1, f2) = moved.foci().unwrap();
        let a = t.apply(Point::new(0.4, 0.8));
        let b = t.apply(Point::new(4.0, 0.5));
        let ok = (f1.dist(a) < 1e-9 && f2.dist(b) < 1e-9) || (f1.dist(b) < 1e-9 && f2.dist(a) < 1e-9);
        assert!(ok);
    }
}
