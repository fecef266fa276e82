//! SVG 1.1 figures: outline, diagonals, circumcircle, ellipse and markers.
//!
//! Geometry is drawn in mathematical orientation (y up) by negating y.

use std::fmt::Write;

use besant::{Conic, Point};

pub struct Figure {
    pub vertices: [Point; 4],
    pub circumcircle: Option<(Point, f64)>,
    pub ellipse: Option<Conic>,
    pub markers: Vec<(&'static str, Point)>,
}

fn num(x: f64) -> String {
    let y: f64 = format!("{x:.9e}").parse().unwrap_or(x);
    if y == 0.0 {
        "0".into()
    } else {
        y.to_string()
    }
}

fn flip(p: Point) -> Point {
    Point::new(p.x, -p.y)
}

/// Bounding box `(min, max)` in the flipped frame.
fn bounds(fig: &Figure) -> (Point, Point) {
    let mut pts: Vec<Point> = fig.vertices.iter().map(|&p| flip(p)).collect();
    pts.extend(fig.markers.iter().map(|m| flip(m.1)));
    if let Some((c, r)) = fig.circumcircle {
        let c = flip(c);
        pts.push(Point::new(c.x - r, c.y - r));
        pts.push(Point::new(c.x + r, c.y + r));
    }
    let min = pts.iter().fold(Point::new(f64::INFINITY, f64::INFINITY), |m, p| Point::new(m.x.min(p.x), m.y.min(p.y)));
    let max = pts.iter().fold(Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY), |m, p| {
        Point::new(m.x.max(p.x), m.y.max(p.y))
    });
    (min, max)
}

fn line(out: &mut String, class: &str, a: Point, b: Point, stroke: f64) {
    let (a, b) = (flip(a), flip(b));
    let _ = writeln!(
        out,
        r#"  <line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke-width="{}"/>"#,
        num(a.x),
        num(a.y),
        num(b.x),
        num(b.y),
        num(stroke)
    );
}

pub fn render(fig: &Figure) -> String {
    let (min, max) = bounds(fig);
    let span = (max.x - min.x).max(max.y - min.y);
    let pad = 0.1 * span;
    let (x0, y0) = (min.x - pad, min.y - pad);
    let (w, h) = (max.x - min.x + 2.0 * pad, max.y - min.y + 2.0 * pad);
    let stroke = 0.004 * span;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" width="600" height="{}">"#,
        num(x0),
        num(y0),
        num(w),
        num(h),
        num((600.0 * h / w).round())
    );
    out.push_str("  <g fill=\"none\" stroke=\"black\">\n");
    let v = fig.vertices;
    for i in 0..4 {
        line(&mut out, "side", v[i], v[(i + 1) % 4], stroke);
    }
    let _ = writeln!(
        out,
        r#"  </g>
  <g fill="none" stroke="gray" stroke-dasharray="{} {}">"#,
        num(4.0 * stroke),
        num(2.0 * stroke)
    );
    line(&mut out, "diagonal", v[0], v[2], stroke);
    line(&mut out, "diagonal", v[1], v[3], stroke);
    out.push_str("  </g>\n");

    if let Some((c, r)) = fig.circumcircle {
        let c = flip(c);
        let _ = writeln!(
            out,
            r#"  <circle class="circumcircle" cx="{}" cy="{}" r="{}" fill="none" stroke="steelblue" stroke-width="{}"/>"#,
            num(c.x),
            num(c.y),
            num(r),
            num(stroke)
        );
    }

    if let Some(g) = fig.ellipse.and_then(|e| e.geometry().ok()) {
        let axis = Point::new(g.rotation.cos(), g.rotation.sin()) * g.semi_major;
        let (p, q) = (flip(g.center + axis), flip(g.center - axis));
        let rot = -g.rotation.to_degrees();
        let (a, b) = (num(g.semi_major), num(g.semi_minor));
        let _ = writeln!(
            out,
            r#"  <path class="ellipse" d="M {px} {py} A {a} {b} {rot} 0 1 {qx} {qy} A {a} {b} {rot} 0 1 {px} {py} Z" fill="none" stroke="crimson" stroke-width="{sw}"/>"#,
            px = num(p.x),
            py = num(p.y),
            qx = num(q.x),
            qy = num(q.y),
            rot = num(rot),
            sw = num(stroke)
        );
    }

    let size = 0.015 * span;
    for (label, p) in &fig.markers {
        let p = flip(*p);
        let _ = writeln!(
            out,
            r#"  <rect class="marker" x="{}" y="{}" width="{}" height="{}" fill="black"/>"#,
            num(p.x - 0.5 * size),
            num(p.y - 0.5 * size),
            num(size),
            num(size)
        );
        let _ = writeln!(
            out,
            r#"  <text class="label" x="{}" y="{}" font-size="{}">{label}</text>"#,
            num(p.x + size),
            num(p.y - size),
            num(3.0 * size)
        );
    }
    out.push_str("</svg>\n");
    out
}
