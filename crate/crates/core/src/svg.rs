//! Static SVG figures: a 1000×1000 viewport with the geometry fitted inside
//! a 5% margin and the y axis pointing up.

use std::fmt::Write;

use crate::construct::InscribedTriangle;
use crate::geom::{Circle, MeetPoint, Point, Vector};
use crate::incenters::bisectors;
use crate::quad::ConvexQuadrilateral;
use crate::report::{AnalysisReport, ConstructReport};

pub const SIZE: f64 = 1000.0;
pub const MARGIN: f64 = 0.05;

/// World-to-viewport mapping plus an SVG body under construction.
pub struct Canvas {
    min: Point,
    zoom: f64,
    offset: Vector,
    body: String,
}

impl Canvas {
    /// Fits the bounding box of `points` and `circles` into the viewport.
    pub fn fit(points: &[Point], circles: &[Circle]) -> Self {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut grow = |p: Point| {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        };
        points.iter().copied().for_each(&mut grow);
        for c in circles {
            grow(c.center + Vector::new(c.radius, c.radius));
            grow(c.center - Vector::new(c.radius, c.radius));
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
        let inner = SIZE * (1.0 - 2.0 * MARGIN);
        let zoom = inner / span;
        // center the shorter dimension
        let offset = Vector::new(
            SIZE * MARGIN + (inner - (hi.x - lo.x) * zoom) / 2.0,
            SIZE * MARGIN + (inner - (hi.y - lo.y) * zoom) / 2.0,
        );
        Self {
            min: lo,
            zoom,
            offset,
            body: String::new(),
        }
    }

    pub fn map(&self, p: Point) -> (f64, f64) {
        let x = (p.x - self.min.x) * self.zoom + self.offset.x;
        let y = (p.y - self.min.y) * self.zoom + self.offset.y;
        (x, SIZE - y)
    }

    /// World length of the viewport diagonal.
    fn reach(&self) -> f64 {
        SIZE * std::f64::consts::SQRT_2 / self.zoom
    }

    pub fn segment(&mut self, p: Point, q: Point, style: &str) {
        let (x1, y1) = self.map(p);
        let (x2, y2) = self.map(q);
        let _ = writeln!(
            self.body,
            r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" {style}/>"#
        );
    }

    /// Line through `p` with direction `dir`, long enough to cross the viewport.
    pub fn full_line(&mut self, p: Point, dir: Vector, style: &str) {
        let center = self.unmap(SIZE / 2.0, SIZE / 2.0);
        let u = dir.normalized();
        // foot of the viewport center on the line
        let foot = p + u * (center - p).dot(u);
        let r = self.reach();
        self.segment(foot - u * r, foot + u * r, style);
    }

    fn unmap(&self, x: f64, y: f64) -> Point {
        Point::new(
            (x - self.offset.x) / self.zoom + self.min.x,
            (SIZE - y - self.offset.y) / self.zoom + self.min.y,
        )
    }

    pub fn polygon(&mut self, pts: &[Point], style: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            self.body,
            r#"<polygon points="{}" {style}/>"#,
            coords.join(" ")
        );
    }

    pub fn circle(&mut self, c: &Circle, style: &str) {
        let (x, y) = self.map(c.center);
        let r = c.radius * self.zoom;
        let _ = writeln!(
            self.body,
            r#"<circle cx="{x:.3}" cy="{y:.3}" r="{r:.3}" fill="none" {style}/>"#
        );
    }

    pub fn dot(&mut self, p: Point, label: &str, color: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(
            self.body,
            r#"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="{color}"/>"#
        );
        if !label.is_empty() {
            let _ = writeln!(
                self.body,
                r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="22" fill="{color}">{label}</text>"#,
                x + 8.0,
                y - 8.0
            );
        }
    }

    pub fn finish(self) -> String {
        format!(
            concat!(
                r#"<?xml version="1.0" encoding="UTF-8"?>"#,
                "\n",
                r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
                "\n",
                r#"<rect width="{s}" height="{s}" fill="white"/>"#,
                "\n{body}</svg>\n"
            ),
            s = SIZE,
            body = self.body
        )
    }
}

const OUTLINE: &str = r#"fill="none" stroke="black" stroke-width="2""#;
const NEWTON: &str = r##"stroke="#1f77b4" stroke-width="1.5" stroke-dasharray="10 6""##;
const BISECTOR: &str = r##"stroke="#2ca02c" stroke-width="1""##;
const CIRCLE_1: &str = r##"stroke="#d62728" stroke-width="1.5""##;
const CIRCLE_2: &str = r##"stroke="#9467bd" stroke-width="1.5" stroke-dasharray="4 3""##;
const THIN: &str = r#"stroke="gray" stroke-width="1""#;

/// Quadrilateral, Newton line, `E`/`F` with their bisectors and both
/// incircle candidates.
pub fn analysis_figure(q: &ConvexQuadrilateral, report: &AnalysisReport) -> String {
    let p = &report.incenters;
    let c1 = Circle {
        center: p.i1,
        radius: p.r1,
    };
    let c2 = Circle {
        center: p.i2,
        radius: p.r2,
    };
    let v = q.vertices();
    let mut canvas = Canvas::fit(&v, &[c1, c2]);

    canvas.polygon(&v, OUTLINE);
    let (m, n) = (q.m(), q.n());
    canvas.full_line(m, n - m, NEWTON);
    if let Ok(bis) = bisectors(q) {
        for (anchor, dir) in bis {
            canvas.full_line(anchor, dir, BISECTOR);
        }
    }
    canvas.circle(&c1, CIRCLE_1);
    canvas.circle(&c2, CIRCLE_2);
    for (meet, label, (s1, s2)) in [(report.e, "E", (0, 2)), (report.f, "F", (3, 1))] {
        if let MeetPoint::Finite(pt) = meet {
            // extend the two sides to their meet point
            canvas.segment(v[s1], pt, THIN);
            canvas.segment(v[s2], pt, THIN);
            canvas.dot(pt, label, "#2ca02c");
        }
    }
    for (pt, label) in v.iter().zip(["A", "B", "C", "D"]) {
        canvas.dot(*pt, label, "black");
    }
    canvas.dot(m, "M", "#1f77b4");
    canvas.dot(n, "N", "#1f77b4");
    canvas.dot(p.i1, "I1", "#d62728");
    canvas.dot(p.i2, "I2", "#9467bd");
    canvas.finish()
}

/// Circumcircle, triangle, `B′`, the constructed `D` and the auxiliary
/// points of the chord construction.
pub fn construction_figure(t: &InscribedTriangle, report: &ConstructReport) -> String {
    let d = report.d();
    let mut canvas = Canvas::fit(&[t.a, t.b, t.c, d], &[t.circle]);
    canvas.circle(&t.circle, THIN);
    canvas.polygon(
        &[t.a, t.b, t.c],
        r#"fill="none" stroke="gray" stroke-width="1.5" stroke-dasharray="6 4""#,
    );
    canvas.polygon(&[t.a, t.b, t.c, d], OUTLINE);
    canvas.segment(t.b, report.b_prime, NEWTON);
    if let Some(cc) = &report.chord_construction {
        canvas.segment(report.b_prime, cc.e, BISECTOR);
        canvas.segment(cc.e, cc.pivot, BISECTOR);
        canvas.segment(cc.pivot, cc.f, BISECTOR);
        canvas.dot(cc.e, "E", "#2ca02c");
        canvas.dot(cc.f, "F", "#2ca02c");
    }
    if let (Some(h), Some(e)) = (report.hyperbola, report.euclidean) {
        canvas.dot(e.d, "", "#9467bd");
        canvas.dot(h.d, "D", "#d62728");
    } else {
        canvas.dot(d, "D", "#d62728");
    }
    canvas.dot(t.a, "A", "black");
    canvas.dot(t.b, "B", "black");
    canvas.dot(t.c, "C", "black");
    canvas.dot(report.b_prime, "B'", "#1f77b4");
    canvas.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_respects_margin() {
        let c = Canvas::fit(&[Point::new(-2.0, 1.0), Point::new(3.0, 11.0)], &[]);
        let (x0, y0) = c.map(Point::new(-2.0, 1.0));
        let (x1, y1) = c.map(Point::new(3.0, 11.0));
        assert!((y0 - 950.0).abs() < 1e-9 && (y1 - 50.0).abs() < 1e-9);
        assert!((x0 + x1 - 1000.0).abs() < 1e-9);
        let back = c.unmap(x1, y1);
        assert!(back.distance(Point::new(3.0, 11.0)) < 1e-12);
    }

    #[test]
    fn analysis_figure_has_all_parts() {
        let input = crate::report::QuadInput {
            vertices: [[0.0, 0.0], [2.0, 2.0], [5.0, 0.0], [2.0, -2.0]],
        };
        let (q, r) = crate::report::analyze(&input).unwrap();
        let svg = analysis_figure(&q, &r);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("<polygon"));
        assert_eq!(svg.matches(r##"fill="none" stroke="#d62728""##).count(), 1);
        for label in [">E<", ">F<", ">I1<", ">I2<", ">M<", ">N<"] {
            assert!(svg.contains(label), "{label}");
        }
    }
}
