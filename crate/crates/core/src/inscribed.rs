//! The one-parameter family of ellipses inscribed in `Q(s,t,v,w)`.
//!
//! Member `r` touches side `S1` at `(0, r)`. Coefficients, center and area are
//! closed-form in `r`; the maximal-area member is found numerically.

use crate::conic::Conic;
use crate::error::{Error, Result};
use crate::geom::{Point, Tolerance};
use crate::quad::CanonicalQuad;

/// Selector `r` of a member of the inscribed family.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct InellipseParam(f64);

impl InellipseParam {
    /// Members closer than this to either end of `(0,1)` collapse onto a
    /// vertex and are rejected.
    pub const EDGE: f64 = 1e-12;

    pub fn new(r: f64) -> Result<Self> {
        if r.is_finite() && (Self::EDGE..=1.0 - Self::EDGE).contains(&r) {
            Ok(Self(r))
        } else {
            Err(Error::ParamOutOfRange(r))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Inscribed ellipse of a non-trapezoid normal form.
pub fn inscribed_conic(cq: &CanonicalQuad, r: InellipseParam) -> Result<Conic> {
    if cq.is_trapezoid(Tolerance::default()) {
        return Err(Error::TrapezoidInput);
    }
    Ok(family_conic(cq, r.value()))
}

/// Center `(sv / 2τ, ((s - N) r + vt) / 2τ)` of member `r`.
pub fn inscribed_center(cq: &CanonicalQuad, r: InellipseParam) -> Result<Point> {
    if cq.is_trapezoid(Tolerance::default()) {
        return Err(Error::TrapezoidInput);
    }
    Ok(family_center(cq, r.value()))
}

pub(crate) fn family_center(cq: &CanonicalQuad, r: f64) -> Point {
    let (s, t, v) = (cq.s, cq.t, cq.v);
    let n = cq.derived().n;
    let tau = cq.tau(r);
    Point::new(s * v / (2.0 * tau), ((s - n) * r + v * t) / (2.0 * tau))
}

/// General coefficient formula. It remains valid for `v == s`, which is
/// how trapezoids that are not cyclic are handled by [`family_member`].
pub(crate) fn family_conic(cq: &CanonicalQuad, r: f64) -> Conic {
    let (s, t, v, w) = (cq.s, cq.t, cq.v, cq.w);
    let n = v * t - w * s;
    let r2 = r * r;
    let a = ((w - 1.0).powi(2) * s * s - 2.0 * v * (w * t + t - 2.0 * w) * s + t * t * v * v) * r2
        + 2.0 * v * (s * t - 2.0 * w * s - t * n) * r
        + t * t * v * v;
    let b = -2.0 * v * s * (2.0 * (v - s) * r2 + (s - 2.0 * v - n) * r + v * t);
    let c = s * s * v * v;
    let d = 2.0 * s * v * r * ((n - s) * r - n + s * w);
    let e = -2.0 * s * s * v * v * r;
    let f = s * s * v * v * r2;
    Conic { a, b, c, d, e, f }
}

fn validate_cyclic_trapezoid(s: f64, t: f64) -> Result<()> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidTrapezoid(format!("s = {s} must be positive")));
    }
    if !(t > 0.5 && t.is_finite()) {
        return Err(Error::InvalidTrapezoid(format!("t = {t} must exceed 1/2")));
    }
    if (t - 1.0).abs() <= Tolerance::DEFAULT_REL {
        return Err(Error::InvalidTrapezoid("t = 1 is a rectangle".into()));
    }
    Ok(())
}

/// Inscribed ellipse of the cyclic trapezoid `Q(s, t, s, 1 - t)`.
pub fn inscribed_conic_trapezoid(s: f64, t: f64, r: InellipseParam) -> Result<Conic> {
    validate_cyclic_trapezoid(s, t)?;
    let r = r.value();
    let tm1 = t - 1.0;
    Ok(Conic {
        a: 4.0 * tm1 * tm1 * r * r - 4.0 * tm1 * tm1 * r + t * t,
        b: 2.0 * s * t * (2.0 * r - 1.0),
        c: s * s,
        d: 2.0 * r * s * (2.0 * tm1 * r - 3.0 * t + 2.0),
        e: -2.0 * s * s * r,
        f: s * s * r * r,
    })
}

/// Member `r` of the inscribed family for any normal form, dispatching cyclic
/// trapezoids to the trapezoid coefficients.
pub fn family_member(cq: &CanonicalQuad, r: InellipseParam) -> Conic {
    let tol = Tolerance::default();
    if cq.is_trapezoid(tol) && cq.is_cyclic(tol) && !cq.is_parallelogram(tol) {
        if let Ok(c) = inscribed_conic_trapezoid(cq.s, cq.t, r) {
            return c;
        }
    }
    family_conic(cq, r.value())
}

/// `ln(area)` of member `r`; `area = 2π δ / Δ^{3/2}`.
fn log_area(cq: &CanonicalQuad, r: f64) -> f64 {
    let c = family_conic(cq, r);
    (2.0 * std::f64::consts::PI).ln() + c.small_delta().ln() - 1.5 * c.big_delta().ln()
}

/// Area of member `r`.
pub fn family_area(cq: &CanonicalQuad, r: InellipseParam) -> f64 {
    log_area(cq, r.value()).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxArea {
    pub r: InellipseParam,
    pub area: f64,
}

const GRID: usize = 256;
const R_TOL: f64 = 1e-10;

/// Member of maximal area.
///
/// The area is smooth on `(0,1)` and vanishes at both ends. A coarse grid
/// brackets the maximum, golden-section search narrows the bracket, and
/// bisection on a central-difference derivative of `ln(area)` pins `r` down
/// to `1e-10`.
pub fn max_area_param(cq: &CanonicalQuad) -> MaxArea {
    let lo_edge = InellipseParam::EDGE;
    let hi_edge = 1.0 - InellipseParam::EDGE;
    let grid = |i: usize| (i as f64 + 0.5) / GRID as f64;
    let best = (0..GRID)
        .map(|i| (i, log_area(cq, grid(i))))
        .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    let mut lo = if best.0 == 0 { lo_edge } else { grid(best.0 - 1) };
    let mut hi = if best.0 == GRID - 1 { hi_edge } else { grid(best.0 + 1) };

    let f = |r: f64| log_area(cq, r);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-6 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }

    let slope = |r: f64| {
        let h = 1e-5f64.min(0.5 * (r - lo_edge)).min(0.5 * (hi_edge - r));
        (f(r + h) - f(r - h)) / (2.0 * h)
    };
    let mut a = (lo - 1e-6).max(lo_edge);
    let mut b = (hi + 1e-6).min(hi_edge);
    let mut r = 0.5 * (a + b);
    if slope(a) > 0.0 && slope(b) < 0.0 {
        while b - a > R_TOL {
            let mid = 0.5 * (a + b);
            if slope(mid) > 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        r = 0.5 * (a + b);
    }
    let r = r.clamp(lo_edge, hi_edge);
    MaxArea { r: InellipseParam(r), area: f(r).exp() }
}
