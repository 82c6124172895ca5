//! The two incenters of a convex quadrilateral.
//!
//! `I1` is where the internal bisector of the angle at `E = AB ∩ DC` crosses
//! the Newton line; it is equidistant (`r1`) from sides `AB` and `CD`. `I2`
//! is the analogous point for `F = AD ∩ BC` and sides `BC`, `DA`. Because
//! both lie on the Newton line, the area splits as `(a + c)·r1 / 2` and as
//! `(b + d)·r2 / 2`, which gives `area = p·r / 2` with `r` the harmonic mean
//! of `r1` and `r2`.

use serde::Serialize;

use crate::error::{GeometryError, Result};
use crate::geom::{
    distance_point_line, internal_bisector_direction, intersect_lines, signed_area_triangle, Line,
    MeetPoint, Point, Vector,
};
use crate::quad::ConvexQuadrilateral;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IncenterPair {
    pub i1: Point,
    pub r1: f64,
    pub i2: Point,
    pub r2: f64,
    pub r_harmonic: f64,
    /// `AB ∥ DC`: `I1` was pinned to `I2`.
    pub e_parallel: bool,
    /// `AD ∥ BC`: `I2` was pinned to `I1`.
    pub f_parallel: bool,
    pub i1_inside: bool,
    pub i2_inside: bool,
}

/// Harmonic mean `2·r1·r2 / (r1 + r2)` of two positive radii.
pub fn harmonic_inradius(r1: f64, r2: f64) -> Result<f64> {
    for r in [r1, r2] {
        if !r.is_finite() || r <= 0.0 {
            return Err(GeometryError::NonPositiveRadius(r));
        }
    }
    Ok(2.0 * r1 * r2 / (r1 + r2))
}

/// Direction of the bisector at a meet point. A finite apex is aimed at the
/// midpoints of the two sides it spans; an apex at infinity degenerates to
/// the common direction of the parallel sides.
fn bisector_at(
    apex: MeetPoint,
    side1: (Point, Point),
    side2: (Point, Point),
) -> Result<(Point, Vector)> {
    match apex {
        MeetPoint::Finite(e) => {
            let t1 = side1.0.midpoint(side1.1);
            let t2 = side2.0.midpoint(side2.1);
            Ok((e, internal_bisector_direction(e, t1, t2)?))
        }
        MeetPoint::AtInfinity(dir) => {
            let mid = side1
                .0
                .midpoint(side1.1)
                .midpoint(side2.0.midpoint(side2.1));
            Ok((mid, dir))
        }
    }
}

/// Internal bisectors at `E` and `F` as (point, unit direction). For a meet
/// point at infinity this is the mid-parallel of the two parallel sides.
pub fn bisectors(q: &ConvexQuadrilateral) -> Result<[(Point, Vector); 2]> {
    let (e, f) = q.opposite_side_meets();
    Ok([
        bisector_at(e, q.side(0), (q.d(), q.c()))?,
        bisector_at(f, (q.a(), q.d()), (q.b(), q.c()))?,
    ])
}

fn on_newton_line(apex: char, origin: Point, dir: Vector, newton: &Line) -> Result<Point> {
    let bisector = Line::from_point_direction(origin, dir);
    match intersect_lines(&bisector, newton) {
        Ok(MeetPoint::Finite(p)) => Ok(p),
        Ok(MeetPoint::AtInfinity(_)) | Err(GeometryError::IdenticalLines) => {
            Err(GeometryError::BisectorParallelToNewtonLine { apex })
        }
        Err(e) => Err(e),
    }
}

pub fn incenter_pair(q: &ConvexQuadrilateral) -> Result<IncenterPair> {
    let (e, f) = q.opposite_side_meets();
    let newton = q.newton_line();
    let [(e_origin, e_dir), (f_origin, f_dir)] = bisectors(q)?;

    let e_parallel = e.is_at_infinity();
    let f_parallel = f.is_at_infinity();
    let (i1, i2) = match (e_parallel, f_parallel) {
        (false, false) => (
            on_newton_line('E', e_origin, e_dir, &newton)?,
            on_newton_line('F', f_origin, f_dir, &newton)?,
        ),
        (true, false) => {
            let i2 = on_newton_line('F', f_origin, f_dir, &newton)?;
            (i2, i2)
        }
        (false, true) => {
            let i1 = on_newton_line('E', e_origin, e_dir, &newton)?;
            (i1, i1)
        }
        (true, true) => unreachable!("parallelograms are rejected at construction"),
    };

    let r1 = distance_point_line(i1, &q.side_line(0));
    let r2 = distance_point_line(i2, &q.side_line(1));
    Ok(IncenterPair {
        i1,
        r1,
        i2,
        r2,
        r_harmonic: harmonic_inradius(r1, r2)?,
        e_parallel,
        f_parallel,
        i1_inside: q.contains(i1),
        i2_inside: q.contains(i2),
    })
}

/// The area identity and its two halves, all as relative residuals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaIdentity {
    pub area: f64,
    pub perimeter: f64,
    pub r_harmonic: f64,
    /// `|area − p·r/2| / area`.
    pub residual: f64,
    /// `|a + c − area/r1| / p`.
    pub ac_residual: f64,
    /// `|b + d − area/r2| / p`.
    pub bd_residual: f64,
}

pub fn area_identity(q: &ConvexQuadrilateral) -> Result<AreaIdentity> {
    let pair = incenter_pair(q)?;
    Ok(area_identity_with(q, &pair))
}

pub fn area_identity_with(q: &ConvexQuadrilateral, pair: &IncenterPair) -> AreaIdentity {
    let m = q.metrics();
    let p = m.perimeter;
    AreaIdentity {
        area: m.area,
        perimeter: p,
        r_harmonic: pair.r_harmonic,
        residual: (m.area - p * pair.r_harmonic / 2.0).abs() / m.area,
        ac_residual: (m.a + m.c - m.area / pair.r1).abs() / p,
        bd_residual: (m.b + m.d - m.area / pair.r2).abs() / p,
    }
}

pub fn area_identity_residual(q: &ConvexQuadrilateral) -> Result<f64> {
    Ok(area_identity(q)?.residual)
}

/// `(OAB) − (OBC) + (OCD) − (ODA)` in signed areas; zero exactly on the
/// Newton line.
pub fn leon_anne_residual(q: &ConvexQuadrilateral, o: Point) -> f64 {
    let [a, b, c, d] = q.vertices();
    signed_area_triangle(o, a, b) - signed_area_triangle(o, b, c) + signed_area_triangle(o, c, d)
        - signed_area_triangle(o, d, a)
}
