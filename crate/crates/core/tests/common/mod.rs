#![allow(dead_code)]

use std::f64::consts::PI;

use besant::{generate_besant_quad, CanonicalQuad, ConvexQuad, Point, Similarity, Tolerance};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const TOL: Tolerance = Tolerance { rel: 1e-9, focus: 1e-6 };

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn similarity(rng: &mut StdRng) -> Similarity {
    Similarity::new(
        10f64.powf(rng.random_range(-1.0..1.0)),
        rng.random_range(-PI..PI),
        Point::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0)),
        rng.random_bool(0.5),
    )
}

/// Smallest turn relative to the squared diameter; keeps samples away from
/// near-degenerate quads.
fn well_shaped(q: &ConvexQuad) -> bool {
    let v = q.vertices();
    let d2 = q.diameter().powi(2);
    (0..4).all(|i| {
        let (a, b, c) = (v[i], v[(i + 1) % 4], v[(i + 2) % 4]);
        (b - a).cross(c - b).abs() > 1e-2 * d2
    })
}

fn polar(center: Point, radius: f64, angle: f64) -> Point {
    center + Point::new(angle.cos(), angle.sin()) * radius
}

fn sorted_angles(rng: &mut StdRng, min_gap: f64) -> [f64; 4] {
    loop {
        let mut a: [f64; 4] = std::array::from_fn(|_| rng.random_range(0.0..2.0 * PI));
        a.sort_by(f64::total_cmp);
        let gaps_ok = (0..4).all(|i| {
            let next = if i == 3 { a[0] + 2.0 * PI } else { a[i + 1] };
            next - a[i] > min_gap
        });
        if gaps_ok {
            return a;
        }
    }
}

/// Strictly convex quad with random radii on a star-shaped outline.
pub fn convex_quad(rng: &mut StdRng) -> ConvexQuad {
    loop {
        let center = Point::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let angles = sorted_angles(rng, 0.3);
        let v = angles.map(|a| polar(center, rng.random_range(0.5..3.0), a));
        if let Ok(q) = ConvexQuad::new(v) {
            if well_shaped(&q) && !q.is_trapezoid(TOL) {
                return q;
            }
        }
    }
}

/// Cyclic, not a parallelogram; orthodiagonal only by accident of measure zero.
pub fn cyclic_quad(rng: &mut StdRng) -> ConvexQuad {
    loop {
        let center = Point::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let radius = rng.random_range(0.5..5.0);
        let v = sorted_angles(rng, 0.3).map(|a| polar(center, radius, a));
        if let Ok(q) = ConvexQuad::new(v) {
            if well_shaped(&q) && !q.is_parallelogram(TOL) {
                return q;
            }
        }
    }
}

/// Cosine of the angle between the diagonals.
pub fn diagonal_cos(q: &ConvexQuad) -> f64 {
    let v = q.vertices();
    let d1 = v[2] - v[0];
    let d2 = v[3] - v[1];
    d1.dot(d2) / (d1.norm() * d2.norm())
}

/// Cyclic and clearly not orthodiagonal.
pub fn cyclic_non_orthodiagonal(rng: &mut StdRng) -> ConvexQuad {
    loop {
        let q = cyclic_quad(rng);
        if diagonal_cos(&q).abs() > 0.05 {
            return q;
        }
    }
}

/// Diagonals along `u` and `u⊥` through `o`, with arms `a, b, c, d`.
fn cross_quad(o: Point, theta: f64, [a, b, c, d]: [f64; 4]) -> [Point; 4] {
    let u = Point::new(theta.cos(), theta.sin());
    let n = Point::new(-u.y, u.x);
    [o + u * a, o + n * b, o - u * c, o - n * d]
}

/// Orthodiagonal, generically not cyclic.
pub fn orthodiagonal_quad(rng: &mut StdRng) -> ConvexQuad {
    loop {
        let o = Point::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let arms = std::array::from_fn(|_| rng.random_range(0.3..3.0));
        if let Ok(q) = ConvexQuad::new(cross_quad(o, rng.random_range(-PI..PI), arms)) {
            if well_shaped(&q) && !q.is_parallelogram(TOL) {
                return q;
            }
        }
    }
}

/// Cyclic and orthodiagonal (intersecting chords: `a c = b d`), not a square.
pub fn cyclic_orthodiagonal_quad(rng: &mut StdRng) -> ConvexQuad {
    loop {
        let o = Point::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let (a, b, c) = (
            rng.random_range(0.3..3.0),
            rng.random_range(0.3..3.0),
            rng.random_range(0.3..3.0),
        );
        let d = a * c / b;
        if let Ok(q) = ConvexQuad::new(cross_quad(o, rng.random_range(-PI..PI), [a, b, c, d])) {
            if well_shaped(&q) && !q.is_parallelogram(TOL) {
                return q;
            }
        }
    }
}

/// Normal form from the Besant generator over random `(s, t)`.
pub fn besant_quad(rng: &mut StdRng) -> CanonicalQuad {
    loop {
        let s: f64 = rng.random_range(0.2..5.0);
        let t = rng.random_range(0.2..5.0);
        if (s - t).abs() < 1e-3 {
            continue;
        }
        if let Ok(cq) = generate_besant_quad(s, t) {
            if well_shaped(&cq.quad()) {
                return cq;
            }
        }
    }
}

/// Random valid normal form that is not a trapezoid.
pub fn canonical_quad(rng: &mut StdRng) -> CanonicalQuad {
    loop {
        let s = rng.random_range(0.1..4.0);
        let t = rng.random_range(0.1..4.0);
        let v = rng.random_range(0.1..6.0);
        let w = rng.random_range(-4.0..t);
        if let Ok(cq) = CanonicalQuad::new(s, t, v, w) {
            if well_shaped(&cq.quad()) && !cq.is_trapezoid(TOL) {
                return cq;
            }
        }
    }
}

pub fn same_pair(a: (Point, Point), b: (Point, Point)) -> f64 {
    let straight = a.0.dist(b.0).max(a.1.dist(b.1));
    let crossed = a.0.dist(b.1).max(a.1.dist(b.0));
    straight.min(crossed)
}
