//! Besant quadrilaterals and Besant ellipses.
//!
//! A cyclic quadrilateral is Besant when some inscribed ellipse has a focus at
//! the circumcenter `EP`. This happens exactly for orthodiagonal cyclic
//! quadrilaterals, and then the other focus is the diagonal intersection `IP`.
//! In normal form the Besant member is `r = v / (s + v)`; for the isosceles
//! trapezoid `Q(t, t, t, 1 - t)` it is `r = 1/2`.

use crate::conic::Conic;
use crate::error::{Error, Result};
use crate::geom::{Point, Tolerance};
use crate::inscribed::{family_conic, family_member, InellipseParam};
use crate::marden::family_quadratic;
use crate::quad::{canonicalize, CanonicalQuad, ConvexQuad};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesantReason {
    Ok,
    Parallelogram,
    NotCyclic,
    NotOrthodiagonal,
}

impl BesantReason {
    pub fn as_str(self) -> &'static str {
        match self {
            BesantReason::Ok => "Ok",
            BesantReason::Parallelogram => "Parallelogram",
            BesantReason::NotCyclic => "NotCyclic",
            BesantReason::NotOrthodiagonal => "NotOrthodiagonal",
        }
    }
}

/// Outcome of [`classify_besant`]; points and the ellipse are in the pose of
/// the input quadrilateral.
#[derive(Debug, Clone, PartialEq)]
pub struct BesantResult {
    pub is_besant: bool,
    pub reason: BesantReason,
    pub canonical: CanonicalQuad,
    pub ellipse: Option<Conic>,
    pub r_canonical: Option<f64>,
    pub ep: Option<Point>,
    pub ip: Point,
    pub center: Option<Point>,
}

pub fn classify_besant(q: &ConvexQuad, tol: Tolerance) -> Result<BesantResult> {
    let cq = canonicalize(q, tol)?;
    let pose = cq.to_original;
    let ip = pose.apply(cq.diagonal_intersection());
    let ep = cq.circumcenter(tol).ok().map(|p| pose.apply(p));
    let reject = |reason| {
        Ok(BesantResult {
            is_besant: false,
            reason,
            canonical: cq,
            ellipse: None,
            r_canonical: None,
            ep,
            ip,
            center: None,
        })
    };
    if cq.is_parallelogram(tol) {
        return reject(BesantReason::Parallelogram);
    }
    if ep.is_none() {
        return reject(BesantReason::NotCyclic);
    }
    if !cq.is_orthodiagonal(tol) {
        return reject(BesantReason::NotOrthodiagonal);
    }
    let (conic, r) = besant_ellipse(&cq, tol)?;
    let ellipse = conic.transformed(&pose);
    let center = conic.center().ok().map(|p| pose.apply(p));
    Ok(BesantResult {
        is_besant: true,
        reason: BesantReason::Ok,
        canonical: cq,
        ellipse: Some(ellipse),
        r_canonical: Some(r.value()),
        ep,
        ip,
        center,
    })
}

/// The Besant ellipse of a cyclic orthodiagonal non-parallelogram, in the
/// normal-form frame, with its family parameter.
pub fn besant_ellipse(cq: &CanonicalQuad, tol: Tolerance) -> Result<(Conic, InellipseParam)> {
    if cq.is_parallelogram(tol) {
        return Err(Error::NotBesant(BesantReason::Parallelogram));
    }
    if !cq.is_cyclic(tol) {
        return Err(Error::NotBesant(BesantReason::NotCyclic));
    }
    if !cq.is_orthodiagonal(tol) {
        return Err(Error::NotBesant(BesantReason::NotOrthodiagonal));
    }
    if cq.is_trapezoid(tol) {
        if (cq.s - cq.t).abs() > tol.rel * cq.s.max(cq.t) {
            return Err(Error::NonIsoscelesTrapezoid);
        }
        let half = InellipseParam::new(0.5)?;
        let conic = crate::inscribed::inscribed_conic_trapezoid(cq.t, cq.t, half)?;
        return Ok((conic, half));
    }
    let r = InellipseParam::new(cq.v / (cq.s + cq.v))?;
    Ok((family_conic(cq, r.value()), r))
}

/// Cyclic orthodiagonal normal form determined by `(s, t)`:
/// `v = t I / (s β)`, `w = 1 - s v / t`.
pub fn generate_besant_quad(s: f64, t: f64) -> Result<CanonicalQuad> {
    if !(s > 0.0 && t > 0.0) {
        return Err(Error::ConstraintViolation("s, t must be positive".into()));
    }
    let beta = s * s + t * t;
    let i = t * t * t - t * t + s * s * (t + 1.0);
    let v = t * i / (s * beta);
    let w = 1.0 - s * v / t;
    let cq = CanonicalQuad::new(s, t, v, w)?;
    if cq.is_trapezoid(Tolerance::default()) {
        return Err(Error::ConstraintViolation("s = v: degenerates to the trapezoid family".into()));
    }
    Ok(cq)
}

/// Numerical check of the focus statements for one inscribed member.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub r: f64,
    pub foci: (Point, Point),
    pub ep: Point,
    pub ip: Point,
    pub focus_at_ep: bool,
    pub focus_at_ip: bool,
    /// `None` when neither focus is at `EP` or `IP` (the statement is vacuous).
    pub other_focus_matches: Option<bool>,
    pub orthodiagonal: Option<bool>,
    pub midpoint_quad_cyclic: Option<bool>,
    pub center_is_midpoint_circumcenter: Option<bool>,
}

impl VerificationReport {
    pub fn applicable(&self) -> bool {
        self.focus_at_ep || self.focus_at_ip
    }

    /// `None` if vacuous, otherwise whether every clause holds.
    pub fn all_pass(&self) -> Option<bool> {
        if !self.applicable() {
            return None;
        }
        Some(
            [
                self.other_focus_matches,
                self.orthodiagonal,
                self.midpoint_quad_cyclic,
                self.center_is_midpoint_circumcenter,
            ]
            .iter()
            .all(|c| *c == Some(true)),
        )
    }
}

/// Checks, for member `r` of a cyclic non-parallelogram: if a focus sits at
/// `EP` (or `IP`), the other sits at `IP` (or `EP`), the quadrilateral is
/// orthodiagonal, its midpoint quadrilateral is cyclic, and the ellipse center
/// is the center of that circle.
pub fn verify_theorem_besant(
    cq: &CanonicalQuad,
    r: InellipseParam,
    tol: Tolerance,
) -> Result<VerificationReport> {
    if cq.is_parallelogram(tol) {
        return Err(Error::NotBesant(BesantReason::Parallelogram));
    }
    let ep = cq.circumcenter(tol)?;
    let ip = cq.diagonal_intersection();
    let conic = family_member(cq, r);
    let (f1, f2) = conic.foci()?;
    let diam = cq.diameter();
    let eps = tol.focus * diam;
    if f1.dist(f2) <= eps {
        return Err(Error::CircleEllipse);
    }
    let at = |p: Point| f1.dist(p) <= eps || f2.dist(p) <= eps;
    let focus_at_ep = at(ep);
    let focus_at_ip = at(ip);
    let mut report = VerificationReport {
        r: r.value(),
        foci: (f1, f2),
        ep,
        ip,
        focus_at_ep,
        focus_at_ip,
        other_focus_matches: None,
        orthodiagonal: None,
        midpoint_quad_cyclic: None,
        center_is_midpoint_circumcenter: None,
    };
    if !report.applicable() {
        return Ok(report);
    }
    report.other_focus_matches = Some(pair_residual((f1, f2), (ep, ip)) <= eps);
    report.orthodiagonal = Some(cq.is_orthodiagonal(tol));
    report.midpoint_quad_cyclic = Some(cq.quad().midpoint_quad().circumcircle(tol).is_some());
    let center = conic.center()?;
    report.center_is_midpoint_circumcenter =
        Some(cq.midpoint_circumcenter(tol).map(|c0| c0.dist(center) <= eps).unwrap_or(false));
    Ok(report)
}

/// Distance between two unordered point pairs.
pub fn pair_residual(a: (Point, Point), b: (Point, Point)) -> f64 {
    let straight = a.0.dist(b.0).max(a.1.dist(b.1));
    let crossed = a.0.dist(b.1).max(a.1.dist(b.0));
    straight.min(crossed)
}

/// Which points the foci are matched against in [`scan_focus_match`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FocusTarget {
    /// Some focus at `EP`.
    Ep,
    /// Some focus at `IP`.
    Ip,
    /// Foci equal to `{EP, IP}`.
    Both,
}

/// Result of scanning the inscribed family for members whose foci hit a target.
#[derive(Debug, Clone, PartialEq)]
pub struct FocusScan {
    /// Smallest residual over the raw grid.
    pub grid_min: f64,
    /// Refined local minima `(r, residual)`, best first.
    pub candidates: Vec<(f64, f64)>,
    /// Residual of the runner-up: the second refined minimum, or when there is
    /// only one, the best grid value outside its refinement bracket.
    pub runner_up: f64,
    /// Number of refined minima within `tol.focus * diameter`.
    pub matches: usize,
}

impl FocusScan {
    pub fn best(&self) -> Option<(f64, f64)> {
        self.candidates.first().copied()
    }
}

/// Evaluates the focus residual on `n` evenly spaced interior `r` values,
/// refines every local minimum by golden-section search, and counts those
/// that reach the target.
pub fn scan_focus_match(
    cq: &CanonicalQuad,
    target: FocusTarget,
    n: usize,
    tol: Tolerance,
) -> Result<FocusScan> {
    let ep = cq.circumcenter(tol)?;
    let ip = cq.diagonal_intersection();
    let residual = |r: f64| {
        let (a, b) = family_quadratic(cq, r).foci();
        match target {
            FocusTarget::Ep => a.dist(ep).min(b.dist(ep)),
            FocusTarget::Ip => a.dist(ip).min(b.dist(ip)),
            FocusTarget::Both => pair_residual((a, b), (ep, ip)),
        }
    };
    let n = n.max(3);
    let grid: Vec<f64> = (1..=n).map(|i| i as f64 / (n + 1) as f64).collect();
    let values: Vec<f64> = grid.iter().map(|&r| residual(r)).collect();
    let grid_min = values.iter().copied().fold(f64::INFINITY, f64::min);

    let mut brackets = Vec::new();
    for i in 0..n {
        let left = if i == 0 { f64::INFINITY } else { values[i - 1] };
        let right = if i + 1 == n { f64::INFINITY } else { values[i + 1] };
        if values[i] <= left && values[i] < right {
            let lo = if i == 0 { InellipseParam::EDGE } else { grid[i - 1] };
            let hi = if i + 1 == n { 1.0 - InellipseParam::EDGE } else { grid[i + 1] };
            brackets.push((i, lo, hi));
        }
    }
    let mut candidates: Vec<(f64, f64, usize)> = brackets
        .iter()
        .map(|&(i, lo, hi)| {
            let r = golden_min(&residual, lo, hi, 1e-14);
            let res = residual(r);
            if res <= values[i] {
                (r, res, i)
            } else {
                (grid[i], values[i], i)
            }
        })
        .collect();
    candidates.sort_by(|a, b| a.1.total_cmp(&b.1));
    candidates.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-9);

    let runner_up = match candidates.len() {
        0 => f64::INFINITY,
        1 => {
            let i = candidates[0].2;
            values
                .iter()
                .enumerate()
                .filter(|(j, _)| j.abs_diff(i) > 1)
                .map(|(_, v)| *v)
                .fold(f64::INFINITY, f64::min)
        }
        _ => candidates[1].1,
    };
    let eps = tol.focus * cq.diameter();
    let matches = candidates.iter().filter(|c| c.1 <= eps).count();
    Ok(FocusScan {
        grid_min,
        candidates: candidates.into_iter().map(|(r, res, _)| (r, res)).collect(),
        runner_up,
        matches,
    })
}

fn golden_min(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        x1
    } else {
        x2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: Tolerance = Tolerance { rel: 1e-9, focus: 1e-6 };

    fn ex_quad() -> ConvexQuad {
        ConvexQuad::from_coords([(0.0, 0.0), (0.0, 1.0), (2.0, 4.0), (6.8, -2.4)]).unwrap()
    }

    fn near(p: Point, x: f64, y: f64, tol: f64) -> bool {
        (p.x - x).abs() < tol && (p.y - y).abs() < tol
    }

    #[test]
    fn example_is_besant() {
        let res = classify_besant(&ex_quad(), TOL).unwrap();
        assert!(res.is_besant);
        assert_eq!(res.reason, BesantReason::Ok);
        assert!((res.r_canonical.unwrap() - 17.0 / 22.0).abs() < 1e-12);
        assert!(near(res.ep.unwrap(), 4.0, 0.5, 1e-12));
        assert!(near(res.ip, 0.4, 0.8, 1e-12));
        assert!(near(res.center.unwrap(), 2.2, 0.65, 1e-12));
        let printed = Conic::new(649.0, 216.0, 1936.0, -2996.0, -2992.0, 1156.0).unwrap();
        assert!(res.ellipse.unwrap().proportionality_error(&printed) < 1e-12);
    }

    #[test]
    fn unit_square_is_parallelogram() {
        let q = ConvexQuad::from_coords([(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)]).unwrap();
        let res = classify_besant(&q, TOL).unwrap();
        assert!(!res.is_besant);
        assert_eq!(res.reason, BesantReason::Parallelogram);
        assert!(res.ellipse.is_none());
    }

    #[test]
    fn cyclic_not_orthodiagonal() {
        // fourth vertex on the circumcircle of the first three at a generic angle
        let cq0 = CanonicalQuad::new(1.0, 2.0, 1.5, 0.0).unwrap();
        let center = cq0.circumcenter_unchecked();
        let radius = center.norm();
        let ang = -1.2f64;
        let p4 = center + Point::new(ang.cos(), ang.sin()) * radius;
        let q = ConvexQuad::new([Point::new(0.0, 0.0), Point::new(0.0, 1.0), Point::new(1.0, 2.0), p4])
            .unwrap();
        let res = classify_besant(&q, TOL).unwrap();
        assert_eq!(res.reason, BesantReason::NotOrthodiagonal);
        let d1 = Point::new(1.0, 2.0);
        let d2 = p4 - Point::new(0.0, 1.0);
        assert!(d1.dot(d2).abs() > 1e-3);
    }

    #[test]
    fn not_cyclic() {
        let q = ConvexQuad::from_coords([(0.0, 0.0), (0.0, 1.0), (2.0, 4.0), (6.8, -2.0)]).unwrap();
        let res = classify_besant(&q, TOL).unwrap();
        assert_eq!(res.reason, BesantReason::NotCyclic);
        assert!(res.ep.is_none());
    }

    #[test]
    fn trapezoid_besant_ellipse() {
        let cq = CanonicalQuad::new(2.0, 2.0, 2.0, -1.0).unwrap();
        let (c, r) = besant_ellipse(&cq, TOL).unwrap();
        assert_eq!(r.value(), 0.5);
        let printed = Conic::new(3.0, 0.0, 4.0, -6.0, -4.0, 1.0).unwrap();
        assert!(c.proportionality_error(&printed) < 1e-15);
    }

    #[test]
    fn besant_ellipse_errors() {
        let cq = CanonicalQuad::new(2.0, 4.0, 6.8, -2.0).unwrap();
        assert_eq!(besant_ellipse(&cq, TOL), Err(Error::NotBesant(BesantReason::NotCyclic)));
        let rect = CanonicalQuad::new(1.0, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(besant_ellipse(&rect, TOL), Err(Error::NotBesant(BesantReason::Parallelogram)));
        // cyclic trapezoid, s != t: not orthodiagonal
        let cq = CanonicalQuad::new(1.5, 2.0, 1.5, -1.0).unwrap();
        assert_eq!(besant_ellipse(&cq, TOL), Err(Error::NotBesant(BesantReason::NotOrthodiagonal)));
    }

    #[test]
    fn generator_reproduces_example() {
        let cq = generate_besant_quad(2.0, 4.0).unwrap();
        assert!((cq.v - 6.8).abs() < 1e-12);
        assert!((cq.w + 2.4).abs() < 1e-12);
        assert!(cq.is_cyclic(TOL) && cq.is_orthodiagonal(TOL));
    }

    #[test]
    fn generator_rejects_isosceles_and_invalid() {
        assert!(matches!(generate_besant_quad(1.0, 1.0), Err(Error::ConstraintViolation(_))));
        assert!(matches!(generate_besant_quad(2.5, 2.5), Err(Error::ConstraintViolation(_))));
        assert!(matches!(generate_besant_quad(-1.0, 1.0), Err(Error::ConstraintViolation(_))));
    }

    #[test]
    fn verification_at_besant_member() {
        let cq = generate_besant_quad(2.0, 4.0).unwrap();
        let rep = verify_theorem_besant(&cq, InellipseParam::new(17.0 / 22.0).unwrap(), TOL).unwrap();
        assert!(rep.focus_at_ep && rep.focus_at_ip);
        assert_eq!(rep.all_pass(), Some(true));
    }

    #[test]
    fn verification_vacuous_elsewhere() {
        let cq = generate_besant_quad(2.0, 4.0).unwrap();
        let rep = verify_theorem_besant(&cq, InellipseParam::new(0.5).unwrap(), TOL).unwrap();
        assert!(!rep.applicable());
        assert_eq!(rep.all_pass(), None);
    }

    #[test]
    fn scan_finds_unique_member() {
        let cq = generate_besant_quad(2.0, 4.0).unwrap();
        let scan = scan_focus_match(&cq, FocusTarget::Both, 10001, TOL).unwrap();
        assert_eq!(scan.matches, 1);
        let (r, res) = scan.best().unwrap();
        assert!((r - 17.0 / 22.0).abs() < 1e-9);
        assert!(scan.runner_up >= 1e4 * res.max(f64::MIN_POSITIVE));
        for target in [FocusTarget::Ep, FocusTarget::Ip] {
            let s = scan_focus_match(&cq, target, 2001, TOL).unwrap();
            assert_eq!(s.matches, 1);
            assert!((s.best().unwrap().0 - 17.0 / 22.0).abs() < 1e-9);
        }
    }

    #[test]
    fn pair_residual_is_order_free() {
        let a = (Point::new(0.0, 0.0), Point::new(1.0, 0.0));
        let b = (Point::new(1.0, 0.0), Point::new(0.0, 0.0));
        assert_eq!(pair_residual(a, b), 0.0);
    }
}
