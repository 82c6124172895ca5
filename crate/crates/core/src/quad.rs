//! Strictly convex, non-parallelogram quadrilaterals and their derived
//! geometry: sides, diagonals, diagonal midpoints, Newton line and the meet
//! points of opposite sides.

use serde::Serialize;

use crate::error::{GeometryError, Result};
use crate::geom::{
    intersect_lines, line_through, scale_of, signed_area_triangle, Line, Point, TOL_AREA,
    TOL_COINCIDENT,
};

pub use crate::geom::MeetPoint;

/// Vertices `A, B, C, D` in counterclockwise order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexQuadrilateral {
    vertices: [Point; 4],
    reversed: bool,
    scale: f64,
}

/// Side lengths `a = AB, b = BC, c = CD, d = DA`, diagonals `e = AC`,
/// `f = BD`, perimeter and area.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metrics {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
    pub perimeter: f64,
    pub area: f64,
}

/// Signed areas of the four consecutive vertex triples `ABC, BCD, CDA, DAB`.
pub fn turn_areas(v: &[Point; 4]) -> [f64; 4] {
    std::array::from_fn(|i| signed_area_triangle(v[i], v[(i + 1) % 4], v[(i + 2) % 4]))
}

impl ConvexQuadrilateral {
    /// Validates strict convexity and rejects parallelograms. Clockwise input
    /// is reversed to `A, D, C, B`, keeping `A` first.
    pub fn from_vertices(a: Point, b: Point, c: Point, d: Point) -> Result<Self> {
        let mut vertices = [a, b, c, d];
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let scale = scale_of(&vertices);
        let tol = TOL_AREA * scale * scale;
        let turns = turn_areas(&vertices);
        let reversed = if turns.iter().all(|&t| t > tol) {
            false
        } else if turns.iter().all(|&t| t < -tol) {
            vertices.swap(1, 3);
            true
        } else {
            return Err(GeometryError::NotConvex);
        };

        let m = vertices[0].midpoint(vertices[2]);
        let n = vertices[1].midpoint(vertices[3]);
        if m.distance(n) <= TOL_COINCIDENT * scale {
            return Err(GeometryError::Parallelogram);
        }
        Ok(Self {
            vertices,
            reversed,
            scale,
        })
    }

    pub fn from_array(v: [Point; 4]) -> Result<Self> {
        Self::from_vertices(v[0], v[1], v[2], v[3])
    }

    pub fn vertices(&self) -> [Point; 4] {
        self.vertices
    }

    pub fn a(&self) -> Point {
        self.vertices[0]
    }

    pub fn b(&self) -> Point {
        self.vertices[1]
    }

    pub fn c(&self) -> Point {
        self.vertices[2]
    }

    pub fn d(&self) -> Point {
        self.vertices[3]
    }

    /// True when the input was clockwise and got reordered.
    pub fn was_reversed(&self) -> bool {
        self.reversed
    }

    /// Bounding-box diagonal of the vertices.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Midpoint of diagonal `AC`.
    pub fn m(&self) -> Point {
        self.a().midpoint(self.c())
    }

    /// Midpoint of diagonal `BD`.
    pub fn n(&self) -> Point {
        self.b().midpoint(self.d())
    }

    pub fn newton_line(&self) -> Line {
        line_through(self.m(), self.n()).expect("parallelograms are rejected at construction")
    }

    /// Side `i` as a segment: 0 = AB, 1 = BC, 2 = CD, 3 = DA.
    pub fn side(&self, i: usize) -> (Point, Point) {
        (self.vertices[i % 4], self.vertices[(i + 1) % 4])
    }

    pub fn side_line(&self, i: usize) -> Line {
        let (p, q) = self.side(i);
        line_through(p, q).expect("strict convexity keeps vertices distinct")
    }

    /// Signed distance from `p` to side `i`, positive on the interior side.
    pub fn inward_distance(&self, i: usize, p: Point) -> f64 {
        let (s, t) = self.side(i);
        2.0 * signed_area_triangle(s, t, p) / s.distance(t)
    }

    pub fn area(&self) -> f64 {
        let v = &self.vertices;
        let twice: f64 = (0..4)
            .map(|i| {
                let (p, q) = (v[i], v[(i + 1) % 4]);
                p.x * q.y - q.x * p.y
            })
            .sum();
        0.5 * twice
    }

    pub fn metrics(&self) -> Metrics {
        let [a, b, c, d] = self.vertices;
        let sides = [a.distance(b), b.distance(c), c.distance(d), d.distance(a)];
        Metrics {
            a: sides[0],
            b: sides[1],
            c: sides[2],
            d: sides[3],
            e: a.distance(c),
            f: b.distance(d),
            perimeter: sides.iter().sum(),
            area: self.area(),
        }
    }

    /// `E = AB ∩ DC` and `F = AD ∩ BC`, either of which may lie at infinity.
    pub fn opposite_side_meets(&self) -> (MeetPoint, MeetPoint) {
        let meet = |i: usize, j: usize| {
            intersect_lines(&self.side_line(i), &self.side_line(j))
                .expect("opposite sides of a convex quadrilateral are distinct lines")
        };
        (meet(0, 2), meet(3, 1))
    }

    /// Strictly inside all four counterclockwise sides.
    pub fn contains(&self, p: Point) -> bool {
        (0..4).all(|i| {
            let (s, t) = self.side(i);
            signed_area_triangle(s, t, p) > 0.0
        })
    }

    /// The same quadrilateral labelled from `B`: `(B, C, D, A)`.
    pub fn relabeled(&self) -> Self {
        let [a, b, c, d] = self.vertices;
        Self {
            vertices: [b, c, d, a],
            reversed: self.reversed,
            scale: self.scale,
        }
    }
}
