//! Foci of inscribed ellipses as roots of complex quadratics.
//!
//! For weights `t1 + t2 + t3 = 1` with `t1 t2 t3 > 0`, the zeros of
//! `F(z) = Σ t_k / (z - z_k)` are the foci of an ellipse tangent to the three
//! side lines of the triangle `z1 z2 z3` (Marden). Applied to the triangle cut
//! out by sides `S1, S3, S4` of `Q(s,t,v,w)`, this gives the foci of every
//! member of the inscribed family as the roots of an explicit quadratic.

use num_complex::Complex64;

use crate::conic::{order_foci, Conic};
use crate::error::{Error, Result};
use crate::geom::{Point, Tolerance};
use crate::inscribed::InellipseParam;
use crate::quad::CanonicalQuad;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleWeights {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
}

impl TriangleWeights {
    pub fn new(t1: f64, t2: f64, t3: f64) -> Result<Self> {
        let w = Self { t1, t2, t3 };
        if w.is_valid(1e-12) {
            Ok(w)
        } else {
            Err(Error::InvalidWeights)
        }
    }

    pub fn sum(&self) -> f64 {
        self.t1 + self.t2 + self.t3
    }

    pub fn product(&self) -> f64 {
        self.t1 * self.t2 * self.t3
    }

    fn is_valid(&self, tol: f64) -> bool {
        (self.sum() - 1.0).abs() <= tol && self.product() > 0.0
    }
}

/// Monic quadratic `p(z) = z² + c1 z + c0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FociQuadratic {
    pub c1: Complex64,
    pub c0: Complex64,
}

impl FociQuadratic {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        (z + self.c1) * z + self.c0
    }

    /// Magnitude scale of `p` at `z`, for relative residuals.
    pub fn scale_at(&self, z: Complex64) -> f64 {
        z.norm_sqr() + self.c1.norm() * z.norm() + self.c0.norm()
    }

    /// Both roots. The larger-magnitude root comes from the quadratic formula
    /// with the sign that avoids cancellation; the other from `z1 z2 = c0`.
    pub fn roots(&self) -> (Complex64, Complex64) {
        let disc = (self.c1 * self.c1 - 4.0 * self.c0).sqrt();
        // choose sign so that |c1 + sign * disc| is maximal
        let sq = if (self.c1.conj() * disc).re >= 0.0 { disc } else { -disc };
        let q = -0.5 * (self.c1 + sq);
        if q.norm() == 0.0 {
            return (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        }
        (q, self.c0 / q)
    }

    /// Roots as plane points, ordered like conic foci (rightmost second).
    pub fn foci(&self) -> (Point, Point) {
        let (a, b) = self.roots();
        order_foci(Point::from(a), Point::from(b))
    }
}

/// `p(z) = z² + ((-sv + ((N - s) r - vt) i) / τ) z + r s (-w + v i) / τ`.
pub fn foci_quadratic(cq: &CanonicalQuad, r: InellipseParam) -> Result<FociQuadratic> {
    if cq.is_trapezoid(Tolerance::default()) {
        return Err(Error::TrapezoidInput);
    }
    Ok(family_quadratic(cq, r.value()))
}

pub(crate) fn family_quadratic(cq: &CanonicalQuad, r: f64) -> FociQuadratic {
    let (s, t, v, w) = (cq.s, cq.t, cq.v, cq.w);
    let n = v * t - w * s;
    let tau = cq.tau(r);
    FociQuadratic {
        c1: Complex64::new(-s * v, (n - s) * r - v * t) / tau,
        c0: Complex64::new(-w, v) * (r * s / tau),
    }
}

/// Foci quadratic of the cyclic trapezoid `Q(s, t, s, 1 - t)`:
/// `p(z) = z² + (-s + (2rt - 2r - t) i) z + i (s + i (1 - t)) r`.
pub fn foci_quadratic_trapezoid(s: f64, t: f64, r: InellipseParam) -> Result<FociQuadratic> {
    if !(s > 0.0 && t > 0.5) || (t - 1.0).abs() <= Tolerance::DEFAULT_REL {
        return Err(Error::InvalidTrapezoid(format!("s = {s}, t = {t}")));
    }
    let r = r.value();
    let i = Complex64::i();
    Ok(FociQuadratic {
        c1: Complex64::new(-s, 2.0 * r * t - 2.0 * r - t),
        c0: i * Complex64::new(s, 1.0 - t) * r,
    })
}

/// Foci quadratic of member `r` of any normal form.
pub fn family_foci_quadratic(cq: &CanonicalQuad, r: InellipseParam) -> FociQuadratic {
    family_quadratic(cq, r.value())
}

/// Vertices of the triangle bounded by the side lines `S1, S3, S4`:
/// `z1 = S1 ∩ S3`, `z2 = S1 ∩ S4 = 0`, `z3 = S3 ∩ S4 = v + wi`.
pub fn side_triangle(cq: &CanonicalQuad) -> Result<[Complex64; 3]> {
    if cq.is_trapezoid(Tolerance::default()) {
        return Err(Error::TrapezoidInput);
    }
    let (s, t, v, w) = (cq.s, cq.t, cq.v, cq.w);
    Ok([
        Complex64::new(0.0, t - s * (t - w) / (s - v)),
        Complex64::new(0.0, 0.0),
        Complex64::new(v, w),
    ])
}

/// Weights of [`side_triangle`] whose Marden zeros are the foci of member `r`.
pub fn t_weights(cq: &CanonicalQuad, r: InellipseParam) -> Result<TriangleWeights> {
    if cq.is_trapezoid(Tolerance::default()) {
        return Err(Error::TrapezoidInput);
    }
    let (s, v) = (cq.s, cq.v);
    let r = r.value();
    let n = cq.derived().n;
    let denom = n * cq.tau(r);
    let t1 = s * ((s - v) * r + n) / denom;
    let t2 = s * (v - s) * r / denom;
    Ok(TriangleWeights { t1, t2, t3: 1.0 - t1 - t2 })
}

/// Monic numerator of `F(z) = Σ t_k / (z - z_k)` (monic because the weights
/// sum to one).
pub fn marden_quadratic(z: [Complex64; 3], wts: &TriangleWeights) -> FociQuadratic {
    let [z1, z2, z3] = z;
    let (t1, t2, t3) = (wts.t1, wts.t2, wts.t3);
    let c1 = -(t1 * (z2 + z3) + t2 * (z1 + z3) + t3 * (z1 + z2));
    let c0 = t1 * z2 * z3 + t2 * z1 * z3 + t3 * z1 * z2;
    FociQuadratic { c1, c0 }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MardenFoci {
    pub foci: (Complex64, Complex64),
    /// Contact points on the side lines opposite `z1`, `z2`, `z3`.
    pub tangency: [Complex64; 3],
}

/// Zeros of `F` and the contact points
/// `ζ1 = (t2 z3 + t3 z2)/(t2 + t3)`, `ζ2 = (t1 z3 + t3 z1)/(t1 + t3)`,
/// `ζ3 = (t1 z2 + t2 z1)/(t1 + t2)`.
pub fn marden_foci(z: [Complex64; 3], wts: &TriangleWeights) -> Result<MardenFoci> {
    let [z1, z2, z3] = z;
    let a = z2 - z1;
    let b = z3 - z1;
    let cross = a.re * b.im - a.im * b.re;
    if cross.abs() <= 1e-12 * a.norm() * b.norm() || a.norm() == 0.0 || b.norm() == 0.0 {
        return Err(Error::CollinearVertices);
    }
    if !wts.is_valid(1e-9) {
        return Err(Error::InvalidWeights);
    }
    let (t1, t2, t3) = (wts.t1, wts.t2, wts.t3);
    let tangency = [
        (t2 * z3 + t3 * z2) / (t2 + t3),
        (t1 * z3 + t3 * z1) / (t1 + t3),
        (t1 * z2 + t2 * z1) / (t1 + t2),
    ];
    Ok(MardenFoci { foci: marden_quadratic(z, wts).roots(), tangency })
}

/// Ellipse inscribed in the triangle `(0,0), (1,0), (0,1)` touching the legs
/// at `T1 = (t, 0)` and `T2 = (0, w)`; returns the conic and `[T1, T2, T3]`.
pub fn unit_triangle_inellipse(w: f64, t: f64) -> Result<(Conic, [Point; 3])> {
    let inside = |x: f64| x > 0.0 && x < 1.0;
    if !inside(w) {
        return Err(Error::ParamOutOfRange(w));
    }
    if !inside(t) {
        return Err(Error::ParamOutOfRange(t));
    }
    let conic = Conic {
        a: w * w,
        b: -2.0 * w * t * (2.0 * w * t - 2.0 * w - 2.0 * t + 1.0),
        c: t * t,
        d: -2.0 * w * w * t,
        e: -2.0 * t * t * w,
        f: t * t * w * w,
    };
    let den = t + (1.0 - 2.0 * t) * w;
    let t3 = Point::new(t * (1.0 - w) / den, w * (1.0 - t) / den);
    Ok((conic, [Point::new(t, 0.0), Point::new(0.0, w), t3]))
}

/// Weights for the unit triangle `z = (0, i, 1)` whose contact points are
/// those of [`unit_triangle_inellipse`].
pub fn unit_triangle_weights(w: f64, t: f64) -> TriangleWeights {
    let den = t + (1.0 - t) * w;
    TriangleWeights { t1: t * w / den, t2: t * (1.0 - w) / den, t3: (1.0 - t) * w / den }
}
