//! Tangential / cyclic / bicentric labelling and the structural checks that
//! go with each special case.

use std::fmt;

use serde::Serialize;

use crate::error::{ConsistencyError, Result};
use crate::geom::{circumcircle, distance_point_line};
use crate::incenters::{bisectors, incenter_pair, IncenterPair};
use crate::quad::ConvexQuadrilateral;

/// Relative threshold for every label and consistency check here.
pub const TOL_CLASSIFY: f64 = 1e-9;
/// Third-side tangency below this (relative to scale) triggers the
/// tangential implication.
pub const TOL_THIRD_SIDE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Generic,
    Tangential,
    Cyclic,
    Bicentric,
}

impl Label {
    pub fn from_flags(tangential: bool, cyclic: bool) -> Label {
        match (tangential, cyclic) {
            (true, true) => Label::Bicentric,
            (true, false) => Label::Tangential,
            (false, true) => Label::Cyclic,
            (false, false) => Label::Generic,
        }
    }

    pub fn is_tangential(self) -> bool {
        matches!(self, Label::Tangential | Label::Bicentric)
    }

    pub fn is_cyclic(self) -> bool {
        matches!(self, Label::Cyclic | Label::Bicentric)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Generic => "generic",
            Label::Tangential => "tangential",
            Label::Cyclic => "cyclic",
            Label::Bicentric => "bicentric",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Classification {
    pub label: Label,
    /// `|a + c − b − d| / p`
    pub tangential_residual: f64,
    /// Largest `|dist(V, O) − R| / R` over the vertices, `⊙O(R)` through `A, B, C`.
    pub cyclic_residual: f64,
    /// `|I1 I2| / scale`
    pub incenter_gap: f64,
    /// `|r1 − r2| / max(r1, r2)`
    pub radius_gap: f64,
}

pub fn tangential_residual(q: &ConvexQuadrilateral) -> f64 {
    let m = q.metrics();
    (m.a + m.c - m.b - m.d).abs() / m.perimeter
}

pub fn cyclic_residual(q: &ConvexQuadrilateral) -> f64 {
    let circle = circumcircle(q.a(), q.b(), q.c()).expect("strictly convex: A, B, C not collinear");
    q.vertices()
        .iter()
        .map(|v| (v.distance(circle.center) - circle.radius).abs() / circle.radius)
        .fold(0.0, f64::max)
}

pub fn classify(q: &ConvexQuadrilateral) -> Result<Classification> {
    let pair = incenter_pair(q)?;
    Ok(classify_with(q, &pair))
}

pub fn classify_with(q: &ConvexQuadrilateral, pair: &IncenterPair) -> Classification {
    let tangential_residual = tangential_residual(q);
    let cyclic_residual = cyclic_residual(q);
    Classification {
        label: Label::from_flags(
            tangential_residual <= TOL_CLASSIFY,
            cyclic_residual <= TOL_CLASSIFY,
        ),
        tangential_residual,
        cyclic_residual,
        incenter_gap: pair.i1.distance(pair.i2) / q.scale(),
        radius_gap: (pair.r1 - pair.r2).abs() / pair.r1.max(pair.r2),
    }
}

fn check(name: &'static str, value: f64, tolerance: f64) -> Result<(), ConsistencyError> {
    if value <= tolerance {
        Ok(())
    } else {
        Err(ConsistencyError::Violation {
            check: name,
            value,
            tolerance,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangentialReport {
    pub incenter_gap: f64,
    pub radius_gap: f64,
    /// `|area − p·r1/2| / area`
    pub area_residual: f64,
}

/// For a tangential quadrilateral both incenters are the incircle center and
/// `area = p·r/2` with the single inradius.
pub fn tangential_consistency(
    q: &ConvexQuadrilateral,
) -> Result<TangentialReport, ConsistencyError> {
    let pair = incenter_pair(q)?;
    let class = classify_with(q, &pair);
    if !class.label.is_tangential() {
        return Err(ConsistencyError::WrongClass {
            expected: "tangential",
        });
    }
    let m = q.metrics();
    let report = TangentialReport {
        incenter_gap: class.incenter_gap,
        radius_gap: class.radius_gap,
        area_residual: (m.area - m.perimeter * pair.r1 / 2.0).abs() / m.area,
    };
    check("incenter gap", report.incenter_gap, TOL_CLASSIFY)?;
    check("radius gap", report.radius_gap, TOL_CLASSIFY)?;
    check("area identity with r1", report.area_residual, TOL_CLASSIFY)?;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CyclicReport {
    pub incenter_gap: f64,
    /// Position of `I` on `MN` as `I = M + t·(N − M)`.
    pub t: f64,
    /// `|MI/IN − e/f|`
    pub ratio_error: f64,
    /// `|cos|` of the angle between the bisectors at `E` and `F`.
    pub bisector_dot: f64,
}

/// For a cyclic quadrilateral the incenters coincide at `I` on segment `MN`
/// with `MI : IN = e : f`, and the bisectors at `E` and `F` are perpendicular.
pub fn cyclic_incenter_report(q: &ConvexQuadrilateral) -> Result<CyclicReport, ConsistencyError> {
    let pair = incenter_pair(q)?;
    let class = classify_with(q, &pair);
    if !class.label.is_cyclic() {
        return Err(ConsistencyError::WrongClass { expected: "cyclic" });
    }
    let (m, n) = (q.m(), q.n());
    let mn = n - m;
    let t = (pair.i1 - m).dot(mn) / mn.dot(mn);
    let metrics = q.metrics();
    let ratio_error = (t / (1.0 - t) - metrics.e / metrics.f).abs();
    let [(_, e_dir), (_, f_dir)] = bisectors(q)?;
    let report = CyclicReport {
        incenter_gap: class.incenter_gap,
        t,
        ratio_error,
        bisector_dot: e_dir.dot(f_dir).abs(),
    };
    check("incenter gap", report.incenter_gap, TOL_CLASSIFY)?;
    if !(t > 0.0 && t < 1.0) {
        return Err(ConsistencyError::Violation {
            check: "I strictly inside MN",
            value: t,
            tolerance: 0.0,
        });
    }
    check("MI/IN − e/f", report.ratio_error, TOL_CLASSIFY)?;
    check(
        "bisector perpendicularity",
        report.bisector_dot,
        TOL_CLASSIFY,
    )?;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThirdSideReport {
    /// `min(|d(I1, BC) − r1|, |d(I1, DA) − r1|) / scale`
    pub t3_i1: f64,
    /// `min(|d(I2, AB) − r2|, |d(I2, CD) − r2|) / scale`
    pub t3_i2: f64,
    pub tangential_residual: f64,
}

impl ThirdSideReport {
    pub fn third_side_touched(&self) -> bool {
        self.t3_i1 <= TOL_THIRD_SIDE || self.t3_i2 <= TOL_THIRD_SIDE
    }

    /// A circle touching a third side forces the quadrilateral to be
    /// tangential.
    pub fn implication_holds(&self) -> bool {
        !self.third_side_touched() || self.tangential_residual <= TOL_CLASSIFY
    }
}

pub fn third_side_tangency_check(q: &ConvexQuadrilateral) -> Result<ThirdSideReport> {
    let pair = incenter_pair(q)?;
    Ok(third_side_with(q, &pair))
}

pub fn third_side_with(q: &ConvexQuadrilateral, pair: &IncenterPair) -> ThirdSideReport {
    let gap = |center, r: f64, i: usize, j: usize| {
        let di = (distance_point_line(center, &q.side_line(i)) - r).abs();
        let dj = (distance_point_line(center, &q.side_line(j)) - r).abs();
        di.min(dj) / q.scale()
    };
    ThirdSideReport {
        t3_i1: gap(pair.i1, pair.r1, 1, 3),
        t3_i2: gap(pair.i2, pair.r2, 0, 2),
        tangential_residual: tangential_residual(q),
    }
}
