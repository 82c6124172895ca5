//! Seeded generators for the verification suites.
//!
//! Every sample draws from its own ChaCha8 stream: the 64-bit seed keys the
//! generator and `(suite, sample_id)` selects the stream, so a sample does
//! not depend on how many samples came before it or on thread scheduling.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::barycentric::{solve_n, ReferenceTriangle};
use crate::construct::InscribedTriangle;
use crate::geom::{Circle, Point, Vector};
use crate::quad::{turn_areas, ConvexQuadrilateral};

/// Generators resample when `|MN| < NEAR_PARALLELOGRAM·scale`.
pub const NEAR_PARALLELOGRAM: f64 = 1e-6;
/// Smallest angular gap between neighbouring tangency or vertex angles.
pub const MIN_GAP: f64 = 0.2;

pub fn sample_rng(seed: u64, suite: u32, sample_id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((suite as u64) << 40) ^ sample_id);
    rng
}

fn well_conditioned(q: &ConvexQuadrilateral) -> bool {
    let s2 = q.scale() * q.scale();
    q.m().distance(q.n()) >= NEAR_PARALLELOGRAM * q.scale()
        && turn_areas(&q.vertices()).iter().all(|&t| t >= 1e-4 * s2)
}

fn random_circle<R: Rng>(rng: &mut R) -> Circle {
    Circle {
        center: Point::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0)),
        radius: 10f64.powf(rng.random_range(-1.0..1.0)),
    }
}

/// Sorted angles in `[0, 2π)` whose circular gaps all lie in `[min_gap, max_gap]`.
fn sorted_angles<R: Rng, const N: usize>(rng: &mut R, min_gap: f64, max_gap: f64) -> [f64; N] {
    loop {
        let mut t: [f64; N] = std::array::from_fn(|_| rng.random_range(0.0..TAU));
        t.sort_by(f64::total_cmp);
        let ok = (0..N).all(|i| {
            let gap = if i + 1 < N {
                t[i + 1] - t[i]
            } else {
                t[0] + TAU - t[N - 1]
            };
            (min_gap..=max_gap).contains(&gap)
        });
        if ok {
            return t;
        }
    }
}

/// A random strictly convex, non-parallelogram quadrilateral: four points
/// at sorted angles and random radii around a random center, randomly
/// scaled, rotated and translated.
pub fn random_convex_quad<R: Rng>(rng: &mut R) -> ConvexQuadrilateral {
    loop {
        let angles: [f64; 4] = sorted_angles(rng, 0.1, TAU);
        let frame = random_circle(rng);
        let spin = rng.random_range(0.0..TAU);
        let v = angles.map(|t| {
            let r = frame.radius * rng.random_range(0.3..1.0);
            frame.center + Vector::new((t + spin).cos(), (t + spin).sin()) * r
        });
        if let Ok(q) = ConvexQuadrilateral::from_array(v) {
            if well_conditioned(&q) {
                return q;
            }
        }
    }
}

/// Vertices of the quadrilateral cut out by the tangents to `circle` at
/// `angles` (sorted, gaps below π): `A` is where the last and first tangents
/// meet, `B` the first and second, and so on.
pub fn circumscribed_vertices(circle: &Circle, angles: [f64; 4]) -> [Point; 4] {
    let corner = |t1: f64, t2: f64| {
        let mut gap = t2 - t1;
        if gap < 0.0 {
            gap += TAU;
        }
        let mid = t1 + gap / 2.0;
        circle.center + Vector::new(mid.cos(), mid.sin()) * (circle.radius / (gap / 2.0).cos())
    };
    [
        corner(angles[3], angles[0]),
        corner(angles[0], angles[1]),
        corner(angles[1], angles[2]),
        corner(angles[2], angles[3]),
    ]
}

pub fn tangential_quad<R: Rng>(rng: &mut R) -> (ConvexQuadrilateral, Circle) {
    loop {
        let circle = random_circle(rng);
        let angles = sorted_angles(rng, MIN_GAP + 0.05, PI - MIN_GAP);
        if let Ok(q) = ConvexQuadrilateral::from_array(circumscribed_vertices(&circle, angles)) {
            if well_conditioned(&q) {
                return (q, circle);
            }
        }
    }
}

pub fn cyclic_quad<R: Rng>(rng: &mut R) -> (ConvexQuadrilateral, Circle) {
    loop {
        let circle = random_circle(rng);
        let angles: [f64; 4] = sorted_angles(rng, MIN_GAP, TAU);
        if let Ok(q) = ConvexQuadrilateral::from_array(angles.map(|t| circle.point_at(t))) {
            if well_conditioned(&q) {
                return (q, circle);
            }
        }
    }
}

/// Random triangle on a random circle, vertex angles at least `MIN_GAP`
/// apart, labels in random cyclic order.
pub fn inscribed_triangle<R: Rng>(rng: &mut R) -> InscribedTriangle {
    let circle = random_circle(rng);
    let mut angles: [f64; 3] = sorted_angles(rng, MIN_GAP, TAU);
    if rng.random_bool(0.5) {
        angles.swap(0, 2);
    }
    angles.rotate_left(rng.random_range(0..3));
    InscribedTriangle::from_angles(circle.center, circle.radius, angles)
        .expect("separated angles give a proper triangle")
}

/// The tangential quadrilateral on the unit circle with tangency angles
/// `0.3, 1.7, 3.0, 4.9`, with side `DA` pivoted about `A` by `delta`. Sides
/// `AB`, `BC`, `CD` stay tangent to the circle.
pub fn pivoted_fourth_side(delta: f64) -> ConvexQuadrilateral {
    let circle = Circle {
        center: Point::new(0.0, 0.0),
        radius: 1.0,
    };
    let angles = [0.3, 1.7, 3.0, 4.9];
    let [a, b, c, d] = circumscribed_vertices(&circle, angles);
    let (s, co) = delta.sin_cos();
    let da = d - a;
    let dir = Vector::new(co * da.x - s * da.y, s * da.x + co * da.y);
    // new D: intersection of the rotated ray from A with line CD
    let cd = d - c;
    let t = (c - a).cross(cd) / dir.cross(cd);
    ConvexQuadrilateral::from_vertices(a, b, c, a + dir * t).expect("small pivots keep convexity")
}

/// Parameters `(triangle, k, m)` for the coincident-incenter algebra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarySample {
    pub tri: ReferenceTriangle,
    pub k: f64,
    pub m: f64,
    pub kind: BaryKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaryKind {
    Generic,
    /// `k = ±a`
    ForcedTangential,
    /// `m = b/c`
    ForcedCyclicSlope,
    /// `m` is the root of the bracket factor.
    ForcedCyclicBracket,
    /// `k = ±a` with the bracket root for `m`.
    ForcedBicentric,
}

fn random_reference_triangle<R: Rng>(rng: &mut R) -> ReferenceTriangle {
    loop {
        let s: [f64; 3] = std::array::from_fn(|_| rng.random_range(1.0..5.0));
        if let Ok(t) = ReferenceTriangle::new(s[0], s[1], s[2]) {
            let p = s[0] + s[1] + s[2];
            // keep away from flat triangles
            if s.iter().all(|&x| p - 2.0 * x > 0.1 * p) {
                return t;
            }
        }
    }
}

fn random_m<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let m: f64 = rng.random_range(-4.0..4.0);
        if m.abs() > 0.05 && (m + 1.0).abs() > 0.05 {
            return m;
        }
    }
}

fn bracket_root(tri: &ReferenceTriangle, k: f64) -> f64 {
    let (b, c) = (tri.b, tri.c);
    b * (b - c + k) / (c * (b - c - k))
}

/// Draws a sample of the given kind, resampling until the collinearity
/// denominator is at least `1e-6` and every factor that is not meant to
/// vanish stays clear of zero.
pub fn bary_sample<R: Rng>(rng: &mut R, kind: BaryKind) -> BarySample {
    loop {
        let tri = random_reference_triangle(rng);
        let (a, b, c) = (tri.a, tri.b, tri.c);
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let free_k = loop {
            let k = rng.random_range(-(b + c)..(b + c));
            if (k.abs() - a).abs() > 0.05 * a {
                break k;
            }
        };
        let (k, m) = match kind {
            BaryKind::Generic => (free_k, random_m(rng)),
            BaryKind::ForcedTangential => (sign * a, random_m(rng)),
            BaryKind::ForcedCyclicSlope => (free_k, b / c),
            BaryKind::ForcedCyclicBracket => (free_k, bracket_root(&tri, free_k)),
            BaryKind::ForcedBicentric => (sign * a, bracket_root(&tri, sign * a)),
        };
        if !m.is_finite() || m.abs() > 50.0 || (m + 1.0).abs() < 0.05 {
            continue;
        }
        let denominator = (b - c + k) + (b - c - k) * m;
        if denominator.abs() < 1e-6 || solve_n(&tri, k, m).is_err() {
            continue;
        }
        // the factors not forced to zero must be clearly nonzero
        let lead = b * (b - c + k);
        let tail = (b - c - k) * c * m;
        let slope_zero = (b - c * m).abs() < 0.05 * (b + c * m.abs());
        let bracket_zero = (lead - tail).abs() < 0.05 * (lead.abs() + tail.abs());
        let ok = match kind {
            BaryKind::Generic | BaryKind::ForcedTangential => !slope_zero && !bracket_zero,
            BaryKind::ForcedCyclicSlope => !bracket_zero,
            BaryKind::ForcedCyclicBracket | BaryKind::ForcedBicentric => !slope_zero,
        };
        if ok {
            return BarySample { tri, k, m, kind };
        }
    }
}
