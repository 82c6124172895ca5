//! Bicentric quadrilaterals from a triangle inscribed in a circle.
//!
//! Given `ABC` on `⊙O(R)`, the fourth vertex `D` is sought on the arc `CA`
//! that avoids `B` so that `AB + CD = BC + DA`. Two independent routes are
//! provided: bisection on the arc for the hyperbola condition
//! `b − a = c − d`, and the ruler-and-compass chord
//! `|DB′| = 2R·sin((C − A)/2)·tan(B/2)` measured from the arc midpoint `B′`.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{GeometryError, Result};
use crate::geom::{
    circumcircle, intersect_lines, scale_of, Circle, Line, Point, Vector, TOL_COINCIDENT,
};
use crate::quad::ConvexQuadrilateral;

/// Arc-parameter margin kept clear of `C` and `A`.
pub const ARC_MARGIN: f64 = 1e-9;
pub const MAX_BISECTION_STEPS: usize = 200;
/// Bisection stops once `|g| ≤ ROOT_TOL·R`.
pub const ROOT_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InscribedTriangle {
    pub a: Point,
    pub b: Point,
    pub c: Point,
    pub circle: Circle,
    /// Polar angles of `A, B, C` around the center.
    pub angles: [f64; 3],
}

/// The arc from `C` to `A` that does not contain `B`, parametrized by
/// `s ∈ [0, 1]` (`s = 0` at `C`, `s = 1` at `A`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinorArc {
    pub circle: Circle,
    pub start: f64,
    /// Signed central angle swept from `C` to `A`.
    pub sweep: f64,
}

impl MinorArc {
    pub fn point_at(&self, s: f64) -> Point {
        self.circle.point_at(self.start + s * self.sweep)
    }
}

fn ccw_offset(from: f64, to: f64) -> f64 {
    (to - from).rem_euclid(TAU)
}

impl InscribedTriangle {
    pub fn from_points(a: Point, b: Point, c: Point) -> Result<Self> {
        let circle = circumcircle(a, b, c)?;
        let angles = [a, b, c].map(|p| circle.angle_of(p));
        Ok(Self {
            a,
            b,
            c,
            circle,
            angles,
        })
    }

    /// Vertices at polar angles (radians) on the circle `center`, `radius`.
    pub fn from_angles(center: Point, radius: f64, angles: [f64; 3]) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(GeometryError::NonPositiveRadius(radius));
        }
        let circle = Circle { center, radius };
        let [a, b, c] = angles.map(|t| circle.point_at(t));
        // rejects repeated angles
        circumcircle(a, b, c)?;
        Ok(Self {
            a,
            b,
            c,
            circle,
            angles,
        })
    }

    pub fn radius(&self) -> f64 {
        self.circle.radius
    }

    pub fn arc_ca(&self) -> MinorArc {
        let [ta, tb, tc] = self.angles;
        let to_a = ccw_offset(tc, ta);
        let to_b = ccw_offset(tc, tb);
        let sweep = if to_b > to_a { to_a } else { -(TAU - to_a) };
        MinorArc {
            circle: self.circle,
            start: tc,
            sweep,
        }
    }

    /// Midpoint `B′` of the arc `CA` not containing `B`.
    pub fn b_prime(&self) -> Point {
        self.arc_ca().point_at(0.5)
    }

    /// Interior angles at `A`, `B`, `C`.
    pub fn interior_angles(&self) -> [f64; 3] {
        let v = [self.a, self.b, self.c];
        std::array::from_fn(|i| {
            let u = v[(i + 1) % 3] - v[i];
            let w = v[(i + 2) % 3] - v[i];
            u.cross(w).abs().atan2(u.dot(w))
        })
    }

    /// `g(D) = (b − a) − (c − d)` for `D` on the arc; zero at the bicentric
    /// vertex.
    pub fn hyperbola_residual(&self, d: Point) -> f64 {
        let ab = self.a.distance(self.b);
        let bc = self.b.distance(self.c);
        let cd = self.c.distance(d);
        let da = d.distance(self.a);
        (bc - ab) - (cd - da)
    }

    /// Same triangle with `A` and `C` exchanged.
    fn mirrored(&self) -> Self {
        let [ta, tb, tc] = self.angles;
        Self {
            a: self.c,
            b: self.b,
            c: self.a,
            circle: self.circle,
            angles: [tc, tb, ta],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Hyperbola,
    Euclidean,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstructionResult {
    pub d: Point,
    pub method: Method,
    /// `∠CBD` in radians.
    pub theta: f64,
    /// `|DB′|`
    pub chord_dbprime: f64,
}

impl ConstructionResult {
    fn new(t: &InscribedTriangle, d: Point, method: Method) -> Self {
        let u = t.c - t.b;
        let w = d - t.b;
        Self {
            d,
            method,
            theta: u.cross(w).abs().atan2(u.dot(w)),
            chord_dbprime: d.distance(t.b_prime()),
        }
    }

    pub fn quadrilateral(&self, t: &InscribedTriangle) -> Result<ConvexQuadrilateral> {
        ConvexQuadrilateral::from_vertices(t.a, t.b, t.c, self.d)
    }
}

pub fn bicentric_d_hyperbola(t: &InscribedTriangle) -> Result<ConstructionResult> {
    let arc = t.arc_ca();
    let g = |s: f64| t.hyperbola_residual(arc.point_at(s));
    let (mut lo, mut hi) = (ARC_MARGIN, 1.0 - ARC_MARGIN);
    let (g_start, g_end) = (g(lo), g(hi));
    if g_start.is_nan() || g_end.is_nan() || g_start.signum() == g_end.signum() {
        return Err(GeometryError::NoBracket { g_start, g_end });
    }
    let tol = ROOT_TOL * t.radius();
    let mut g_lo = g_start;
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..MAX_BISECTION_STEPS {
        mid = 0.5 * (lo + hi);
        let g_mid = g(mid);
        if g_mid.abs() <= tol || mid <= lo || mid >= hi {
            break;
        }
        if g_mid.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    Ok(ConstructionResult::new(
        t,
        arc.point_at(mid),
        Method::Hyperbola,
    ))
}

/// `2R·sin((C − A)/2)·tan(B/2)` for interior angles `A, B, C`.
pub fn chord_length(radius: f64, angle_a: f64, angle_b: f64, angle_c: f64) -> f64 {
    2.0 * radius * ((angle_c - angle_a) / 2.0).sin() * (angle_b / 2.0).tan()
}

pub fn bicentric_d_euclidean(t: &InscribedTriangle) -> ConstructionResult {
    let ab = t.a.distance(t.b);
    let bc = t.b.distance(t.c);
    let arc = t.arc_ca();
    let mid_angle = arc.start + 0.5 * arc.sweep;
    let d = match ab.partial_cmp(&bc) {
        Some(Ordering::Greater) | Some(Ordering::Less) => {
            // toward C when AB > BC, toward A otherwise
            let toward_c = ab > bc;
            let [ka, kb, kc] = t.interior_angles();
            let chord = if toward_c {
                chord_length(t.radius(), ka, kb, kc)
            } else {
                chord_length(t.radius(), kc, kb, ka)
            };
            let central = 2.0 * (chord / (2.0 * t.radius())).clamp(-1.0, 1.0).asin();
            let step = if toward_c { -central } else { central };
            t.circle.point_at(mid_angle + step * arc.sweep.signum())
        }
        _ => t.circle.point_at(mid_angle),
    };
    ConstructionResult::new(t, d, Method::Euclidean)
}

/// Auxiliary points of the ruler-and-compass construction. With `AB > BC`
/// the pivot is `A`: the perpendicular from `B′` to `AB` meets the circle
/// again at `E`, and the perpendicular to `EA` at `A` meets `EB′` at `F`.
/// With `AB < BC` the roles of `A` and `C` are exchanged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChordConstruction {
    pub b_prime: Point,
    pub pivot: Point,
    pub e: Point,
    pub f: Point,
    /// `|F · pivot|`, the length transferred from `B′` to locate `D`.
    pub transferred: f64,
}

/// `None` for an isosceles triangle (`AB = BC`), where `E` falls on the pivot.
pub fn chord_construction(t: &InscribedTriangle) -> Option<ChordConstruction> {
    let ab = t.a.distance(t.b);
    let bc = t.b.distance(t.c);
    if (ab - bc).abs() <= 1e-12 * t.radius() {
        return None;
    }
    let tri = if ab > bc { *t } else { t.mirrored() };
    let b_prime = tri.b_prime();
    let o = tri.circle.center;
    let u = (tri.b - tri.a).perp().normalized();
    let e = b_prime + u * (-2.0 * (b_prime - o).dot(u));
    let ea = tri.a - e;
    let perp_at_pivot = Line::from_point_direction(tri.a, ea.perp());
    let eb = Line::from_point_direction(e, b_prime - e);
    let f = intersect_lines(&perp_at_pivot, &eb).ok()?.finite()?;
    Some(ChordConstruction {
        b_prime,
        pivot: tri.a,
        e,
        f,
        transferred: f.distance(tri.a),
    })
}

/// Whether `p` lies on the branch through `through` of the hyperbola with
/// foci `focus_a`, `focus_c`: `|PC| − |PA|` must equal the signed difference
/// at `through`, within `tol·scale`.
pub fn hyperbola_branch_membership(
    focus_a: Point,
    focus_c: Point,
    through: Point,
    p: Point,
    tol: f64,
) -> Result<bool> {
    let scale = scale_of(&[focus_a, focus_c, through, p]);
    let foci = focus_a.distance(focus_c);
    if foci <= TOL_COINCIDENT * scale || foci == 0.0 {
        return Err(GeometryError::CoincidentFoci);
    }
    let diff = |x: Point| x.distance(focus_c) - x.distance(focus_a);
    Ok((diff(p) - diff(through)).abs() <= tol * scale)
}

/// Rigid motion applied to every point of a triangle; used by the
/// equivariance checks.
pub fn transform_triangle(
    t: &InscribedTriangle,
    rotation: f64,
    shift: Vector,
) -> Result<InscribedTriangle> {
    let (s, c) = rotation.sin_cos();
    let f = |p: Point| Point::new(c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y);
    InscribedTriangle::from_points(f(t.a), f(t.b), f(t.c))
}
