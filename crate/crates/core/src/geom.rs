//! Cartesian 2D primitives: points, vectors, normalized lines, circles and
//! the handful of predicates the rest of the crate is built on.
//!
//! Absolute tolerances are always taken relative to a `scale`, the diagonal
//! of the bounding box of the points taking part in an operation, so the
//! predicates behave the same at any unit of length.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};

/// Threshold on `|cross|` of two unit normals below which lines are parallel.
pub const TOL_PARALLEL: f64 = 1e-12;
/// Relative distance below which two points are the same point.
pub const TOL_COINCIDENT: f64 = 1e-12;
/// Relative signed area (in units of `scale²`) below which a triangle is flat.
pub const TOL_AREA: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vector {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(self, other: Point) -> f64 {
        (other - self).norm()
    }

    pub fn midpoint(self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    /// `self + t·(other − self)`.
    pub fn lerp(self, other: Point, t: f64) -> Point {
        self + (other - self) * t
    }

    pub fn to_vector(self) -> Vector {
        Vector::new(self.x, self.y)
    }
}

impl Vector {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Vector) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Vector) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Unit vector in the same direction. Zero stays zero.
    pub fn normalized(self) -> Vector {
        let n = self.norm();
        if n == 0.0 {
            self
        } else {
            self * (1.0 / n)
        }
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Vector {
        Vector::new(-self.y, self.x)
    }
}

impl Sub for Point {
    type Output = Vector;
    fn sub(self, rhs: Point) -> Vector {
        Vector::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Add<Vector> for Point {
    type Output = Point;
    fn add(self, rhs: Vector) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub<Vector> for Point {
    type Output = Point;
    fn sub(self, rhs: Vector) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(self, rhs: Vector) -> Vector {
        Vector::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vector {
    type Output = Vector;
    fn sub(self, rhs: Vector) -> Vector {
        Vector::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;
    fn mul(self, rhs: f64) -> Vector {
        Vector::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector::new(-self.x, -self.y)
    }
}

/// Diagonal of the axis-aligned bounding box of `points`.
pub fn scale_of(points: &[Point]) -> f64 {
    let mut min = Point::new(f64::INFINITY, f64::INFINITY);
    let mut max = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        min.x = min.x.min(p.x);
        min.y = min.y.min(p.y);
        max.x = max.x.max(p.x);
        max.y = max.y.max(p.y);
    }
    if points.is_empty() {
        0.0
    } else {
        (max - min).norm()
    }
}

/// Half the cross product of `q − p` and `r − p`; positive iff `p, q, r` turn
/// counterclockwise.
pub fn signed_area_triangle(p: Point, q: Point, r: Point) -> f64 {
    0.5 * (q - p).cross(r - p)
}

/// A line `nx·x + ny·y + c = 0` with `(nx, ny)` a unit vector. The larger of
/// `|nx|`, `|ny|` is kept positive (ties favour `nx`), so two constructions of
/// the same line compare equal up to rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Line {
    pub nx: f64,
    pub ny: f64,
    pub c: f64,
}

impl Line {
    fn canonical(nx: f64, ny: f64, c: f64) -> Line {
        let lead = if nx.abs() >= ny.abs() { nx } else { ny };
        if lead < 0.0 {
            Line {
                nx: -nx,
                ny: -ny,
                c: -c,
            }
        } else {
            Line { nx, ny, c }
        }
    }

    /// Line through `p` along `direction` (which must be nonzero).
    pub fn from_point_direction(p: Point, direction: Vector) -> Line {
        let n = direction.perp().normalized();
        Line::canonical(n.x, n.y, -(n.x * p.x + n.y * p.y))
    }

    pub fn normal(&self) -> Vector {
        Vector::new(self.nx, self.ny)
    }

    /// Unit direction along the line.
    pub fn direction(&self) -> Vector {
        Vector::new(self.ny, -self.nx)
    }

    /// Signed implicit value `nx·x + ny·y + c`.
    pub fn eval(&self, p: Point) -> f64 {
        self.nx * p.x + self.ny * p.y + self.c
    }

    /// Foot of the perpendicular from the origin.
    pub fn anchor(&self) -> Point {
        Point::new(-self.c * self.nx, -self.c * self.ny)
    }
}

/// Line through two distinct points.
///
/// Coincidence is judged against the larger of the pair's extent and its
/// largest coordinate magnitude, since the extent of two points is their
/// distance.
pub fn line_through(p: Point, q: Point) -> Result<Line> {
    if !p.is_finite() || !q.is_finite() {
        return Err(GeometryError::NonFinite);
    }
    let d = q - p;
    let distance = d.norm();
    let magnitude = p.x.abs().max(p.y.abs()).max(q.x.abs()).max(q.y.abs());
    if distance <= TOL_COINCIDENT * magnitude.max(distance) || distance == 0.0 {
        return Err(GeometryError::CoincidentPoints { distance });
    }
    Ok(Line::from_point_direction(p, d))
}

/// Where two lines meet: a finite point, or a point at infinity carried as
/// the shared unit direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MeetPoint {
    Finite(Point),
    AtInfinity(Vector),
}

impl MeetPoint {
    pub fn finite(self) -> Option<Point> {
        match self {
            MeetPoint::Finite(p) => Some(p),
            MeetPoint::AtInfinity(_) => None,
        }
    }

    pub fn is_at_infinity(self) -> bool {
        matches!(self, MeetPoint::AtInfinity(_))
    }
}

pub fn intersect_lines(l1: &Line, l2: &Line) -> Result<MeetPoint> {
    let det = l1.nx * l2.ny - l1.ny * l2.nx;
    if det.abs() <= TOL_PARALLEL {
        let sign = if l1.normal().dot(l2.normal()) >= 0.0 {
            1.0
        } else {
            -1.0
        };
        let gap = (l1.c - sign * l2.c).abs();
        if gap <= TOL_COINCIDENT * l1.c.abs().max(l2.c.abs()) || gap == 0.0 {
            return Err(GeometryError::IdenticalLines);
        }
        return Ok(MeetPoint::AtInfinity(l1.direction()));
    }
    let x = (l1.ny * l2.c - l2.ny * l1.c) / det;
    let y = (l2.nx * l1.c - l1.nx * l2.c) / det;
    Ok(MeetPoint::Finite(Point::new(x, y)))
}

pub fn distance_point_line(p: Point, line: &Line) -> f64 {
    line.eval(p).abs()
}

/// Unit direction of the internal bisector of the angle at `apex` spanned by
/// the rays toward `toward1` and `toward2`.
pub fn internal_bisector_direction(apex: Point, toward1: Point, toward2: Point) -> Result<Vector> {
    for t in [toward1, toward2] {
        let distance = apex.distance(t);
        if distance == 0.0 {
            return Err(GeometryError::CoincidentPoints { distance });
        }
    }
    let u1 = (toward1 - apex).normalized();
    let u2 = (toward2 - apex).normalized();
    let sum = u1 + u2;
    if sum.norm() <= TOL_PARALLEL {
        return Err(GeometryError::DegenerateAngle);
    }
    Ok(sum.normalized())
}

pub fn internal_bisector(apex: Point, toward1: Point, toward2: Point) -> Result<Line> {
    let dir = internal_bisector_direction(apex, toward1, toward2)?;
    Ok(Line::from_point_direction(apex, dir))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn point_at(&self, angle: f64) -> Point {
        self.center + Vector::new(angle.cos(), angle.sin()) * self.radius
    }

    /// Polar angle of `p` around the center, in `(-π, π]`.
    pub fn angle_of(&self, p: Point) -> f64 {
        let d = p - self.center;
        d.y.atan2(d.x)
    }
}

pub fn circumcircle(p: Point, q: Point, r: Point) -> Result<Circle> {
    let scale = scale_of(&[p, q, r]);
    let area = signed_area_triangle(p, q, r);
    if area.is_nan() || area.abs() <= TOL_AREA * scale * scale {
        return Err(GeometryError::CollinearPoints { area });
    }
    // Work relative to p to limit cancellation.
    let b = q - p;
    let c = r - p;
    let d = 2.0 * b.cross(c);
    let bb = b.dot(b);
    let cc = c.dot(c);
    let ux = (c.y * bb - b.y * cc) / d;
    let uy = (b.x * cc - c.x * bb) / d;
    let offset = Vector::new(ux, uy);
    Ok(Circle {
        center: p + offset,
        radius: offset.norm(),
    })
}
