//! Per-quadrilateral computations and the serialized run report.

use besant::inscribed::{family_area, family_member, max_area_param};
use besant::marden::family_foci_quadratic;
use besant::quad::canonicalize;
use besant::{classify_besant, CanonicalQuad, Conic, ConvexQuad, InellipseParam, Point, Tolerance};
use serde::Serialize;

use crate::input::QuadInput;
use crate::svg::Figure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Classify,
    Besant,
    Inscribe,
    MaxArea,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Besant => "besant",
            Command::Inscribe => "inscribe",
            Command::MaxArea => "maxarea",
        }
    }
}

/// Rounds to 12 significant digits so that reports are stable across
/// platforms; negative zero becomes zero.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let y: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

fn pt(p: Point) -> [f64; 2] {
    [round12(p.x), round12(p.y)]
}

fn pair(p: (Point, Point)) -> [[f64; 2]; 2] {
    [pt(p.0), pt(p.1)]
}

fn coefficients(c: &Conic) -> [f64; 6] {
    c.normalized().coefficients().map(round12)
}

#[derive(Debug, Serialize)]
pub struct Canonical {
    pub s: f64,
    pub t: f64,
    pub v: f64,
    pub w: f64,
}

#[derive(Debug, Serialize)]
pub struct Flags {
    pub cyclic: bool,
    pub orthodiagonal: bool,
    pub trapezoid: bool,
    pub parallelogram: bool,
    pub besant: bool,
}

#[derive(Debug, Serialize)]
pub struct MaxAreaReport {
    pub r: f64,
    pub area: f64,
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub residual: f64,
}

fn check(name: &'static str, pass: bool, residual: f64) -> Check {
    Check { name, pass, residual: round12(residual) }
}

/// Field order here is the key order of the JSON output.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub label: Option<String>,
    pub input: Vec<[f64; 2]>,
    pub canonical: Canonical,
    pub flags: Flags,
    pub reason: &'static str,
    pub ep: Option<[f64; 2]>,
    pub ip: [f64; 2],
    pub center: Option<[f64; 2]>,
    pub conic: Option<[f64; 6]>,
    pub foci: Option<[[f64; 2]; 2]>,
    pub r: Option<f64>,
    pub max_area: MaxAreaReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub foci_by_quadratic: Option<[[f64; 2]; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_route_residual: Option<f64>,
    pub checks: Vec<Check>,
}

pub struct Outcome {
    pub report: RunReport,
    pub figure: Figure,
}

/// Relative discriminant of the conic restricted to the line `p1 p2` and the
/// parameter of the double root.
fn side_contact(c: &Conic, p1: Point, p2: Point) -> (f64, f64) {
    let d = p2 - p1;
    let alpha = c.a * d.x * d.x + c.b * d.x * d.y + c.c * d.y * d.y;
    let beta = 2.0 * c.a * p1.x * d.x + c.b * (p1.x * d.y + p1.y * d.x) + 2.0 * c.c * p1.y * d.y + c.d * d.x + c.e * d.y;
    let gamma = c.eval(p1);
    let disc = beta * beta - 4.0 * alpha * gamma;
    let scale = (beta * beta).max((4.0 * alpha * gamma).abs()).max(f64::MIN_POSITIVE);
    (disc.abs() / scale, -beta / (2.0 * alpha))
}

fn diagonal_cos(cq: &CanonicalQuad) -> f64 {
    let [a, b, c, d] = cq.vertices();
    let (d1, d2) = (c - a, d - b);
    (d1.dot(d2) / (d1.norm() * d2.norm())).abs()
}

fn cyclic_residual(cq: &CanonicalQuad) -> f64 {
    let [a, b, c, d] = cq.vertices();
    besant::geom::circle_through(a, b, c, 0.0)
        .map(|(o, rad)| (d.dist(o) - rad).abs() / cq.diameter())
        .unwrap_or(f64::INFINITY)
}

pub fn run(cmd: Command, input: &QuadInput, r: Option<f64>, tol: Tolerance) -> besant::Result<Outcome> {
    let q = ConvexQuad::new(input.vertices)?.to_clockwise();
    let cq = canonicalize(&q, tol)?;
    let pose = cq.to_original;
    let diam = q.diameter();
    let classified = classify_besant(&q, tol)?;

    let max = max_area_param(&cq);
    let mut checks = vec![
        check("cyclic", cq.is_cyclic(tol), cyclic_residual(&cq)),
        check("orthodiagonal", cq.is_orthodiagonal(tol), diagonal_cos(&cq)),
    ];
    let mut figure = Figure {
        vertices: q.vertices(),
        circumcircle: classified.ep.map(|ep| (ep, ep.dist(q.vertices()[0]))),
        ellipse: None,
        markers: Vec::new(),
    };
    let mut report = RunReport {
        command: cmd.name(),
        label: input.label.clone(),
        input: input.vertices.iter().map(|p| pt(*p)).collect(),
        canonical: Canonical { s: round12(cq.s), t: round12(cq.t), v: round12(cq.v), w: round12(cq.w) },
        flags: Flags {
            cyclic: cq.is_cyclic(tol),
            orthodiagonal: cq.is_orthodiagonal(tol),
            trapezoid: cq.is_trapezoid(tol),
            parallelogram: cq.is_parallelogram(tol),
            besant: classified.is_besant,
        },
        reason: classified.reason.as_str(),
        ep: classified.ep.map(pt),
        ip: pt(classified.ip),
        center: None,
        conic: None,
        foci: None,
        r: None,
        max_area: MaxAreaReport { r: round12(max.r.value()), area: round12(max.area * pose.scale * pose.scale) },
        foci_by_quadratic: None,
        cross_route_residual: None,
        checks: Vec::new(),
    };

    match cmd {
        Command::Classify | Command::Besant => {
            if let (Some(ellipse), Some(ep)) = (classified.ellipse, classified.ep) {
                let foci = ellipse.foci()?;
                let center = classified.center.unwrap_or(ep.midpoint(classified.ip));
                let c0 = pose.apply(cq.midpoint_circumcenter(tol)?);
                let gap = besant::besant::pair_residual(foci, (ep, classified.ip));
                checks.push(check("besant_foci", gap <= tol.focus * diam, gap / diam));
                checks.push(check("besant_center", center.dist(c0) <= tol.focus * diam, center.dist(c0) / diam));
                report.center = Some(pt(center));
                report.conic = Some(coefficients(&ellipse));
                report.foci = Some(pair(foci));
                report.r = classified.r_canonical.map(round12);
                figure.ellipse = Some(ellipse);
                figure.markers = vec![("EP", ep), ("IP", classified.ip), ("C", center)];
            } else {
                figure.markers = classified.ep.iter().map(|&ep| ("EP", ep)).collect();
                figure.markers.push(("IP", classified.ip));
            }
        }
        Command::Inscribe | Command::MaxArea => {
            let param = match cmd {
                Command::Inscribe => InellipseParam::new(r.unwrap_or(f64::NAN))?,
                _ => max.r,
            };
            let local = family_member(&cq, param);
            let conic = local.transformed(&pose);
            let (f1, f2) = local.foci()?;
            let foci = besant::conic::order_foci(pose.apply(f1), pose.apply(f2));
            let center = pose.apply(local.center()?);
            report.center = Some(pt(center));
            report.conic = Some(coefficients(&conic));
            report.foci = Some(pair(foci));
            report.r = Some(round12(param.value()));
            figure.ellipse = Some(conic);
            figure.markers = vec![("C", center), ("F1", foci.0), ("F2", foci.1)];

            let mut worst_disc = 0f64;
            let mut inside = true;
            for (p1, p2) in cq.quad().sides() {
                let (disc, u) = side_contact(&local, p1, p2);
                worst_disc = worst_disc.max(disc);
                inside &= u > 0.0 && u < 1.0;
            }
            checks.push(check("tangent_to_sides", inside && worst_disc <= 1e-8, worst_disc));

            if cmd == Command::Inscribe {
                let (g1, g2) = family_foci_quadratic(&cq, param).foci();
                let by_quadratic = besant::conic::order_foci(pose.apply(g1), pose.apply(g2));
                let gap = besant::besant::pair_residual(foci, by_quadratic) / diam;
                report.foci_by_quadratic = Some(pair(by_quadratic));
                report.cross_route_residual = Some(round12(gap));
                checks.push(check("cross_route_foci", gap <= 1e-8, gap));
            } else {
                let area = |r: f64| InellipseParam::new(r).map(|p| family_area(&cq, p)).unwrap_or(0.0);
                let here = family_area(&cq, param);
                let neighbour = area(param.value() - 0.01).max(area(param.value() + 0.01));
                checks.push(check("local_maximum", here >= neighbour, (neighbour - here).max(0.0) / here));
            }
        }
    }
    report.checks = checks;
    Ok(Outcome { report, figure })
}
