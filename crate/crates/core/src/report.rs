//! JSON input parsing and the reports printed by the command-line tool.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{classify_with, Classification};
use crate::construct::{
    bicentric_d_euclidean, bicentric_d_hyperbola, chord_construction, ChordConstruction,
    ConstructionResult, InscribedTriangle,
};
use crate::error::GeometryError;
use crate::geom::{MeetPoint, Point};
use crate::incenters::{area_identity_with, incenter_pair, AreaIdentity, IncenterPair};
use crate::quad::{ConvexQuadrilateral, Metrics};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadInput {
    pub vertices: [[f64; 2]; 4],
}

impl QuadInput {
    pub fn points(&self) -> [Point; 4] {
        self.vertices.map(|[x, y]| Point::new(x, y))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum QuadFile {
    Single(QuadInput),
    Batch { batch: Vec<QuadInput> },
    List(Vec<QuadInput>),
}

/// Accepts `{"vertices": …}`, `{"batch": [ … ]}` or a bare array of
/// vertex objects.
pub fn parse_quads(text: &str) -> Result<Vec<QuadInput>, InputError> {
    let file: QuadFile = match serde_json::from_str(text) {
        Ok(f) => f,
        Err(_) => {
            // re-parse as a single quadrilateral for a precise message
            serde_json::from_str::<QuadInput>(text)?;
            return Err(InputError::Invalid("unrecognized input layout".into()));
        }
    };
    let quads = match file {
        QuadFile::Single(q) => vec![q],
        QuadFile::Batch { batch: v } | QuadFile::List(v) => v,
    };
    if quads.is_empty() {
        return Err(InputError::Invalid("batch is empty".into()));
    }
    Ok(quads)
}

pub fn read_to_string(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalysisReport {
    /// Vertices as given, before any orientation fix.
    pub input: QuadInput,
    pub reversed: bool,
    pub metrics: Metrics,
    pub e: MeetPoint,
    pub f: MeetPoint,
    pub incenters: IncenterPair,
    pub classification: Classification,
    pub area_identity: AreaIdentity,
}

pub fn analyze(input: &QuadInput) -> Result<(ConvexQuadrilateral, AnalysisReport), GeometryError> {
    let q = ConvexQuadrilateral::from_array(input.points())?;
    let pair = incenter_pair(&q)?;
    let (e, f) = q.opposite_side_meets();
    let report = AnalysisReport {
        input: *input,
        reversed: q.was_reversed(),
        metrics: q.metrics(),
        e,
        f,
        incenters: pair,
        classification: classify_with(&q, &pair),
        area_identity: area_identity_with(&q, &pair),
    };
    Ok((q, report))
}

fn fmt_point(p: Point) -> String {
    format!("({:.12}, {:.12})", p.x, p.y)
}

fn fmt_meet(m: MeetPoint) -> String {
    match m {
        MeetPoint::Finite(p) => fmt_point(p),
        MeetPoint::AtInfinity(v) => format!("at infinity, direction ({:.12}, {:.12})", v.x, v.y),
    }
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.metrics;
        let p = &self.incenters;
        let c = &self.classification;
        for (name, v) in ["A", "B", "C", "D"].iter().zip(self.input.vertices) {
            writeln!(f, "{name} = ({}, {})", v[0], v[1])?;
        }
        if self.reversed {
            writeln!(f, "input was clockwise; analyzed as A, D, C, B")?;
        }
        writeln!(
            f,
            "sides      a={:.12} b={:.12} c={:.12} d={:.12}",
            m.a, m.b, m.c, m.d
        )?;
        writeln!(f, "diagonals  e={:.12} f={:.12}", m.e, m.f)?;
        writeln!(f, "perimeter  {:.12}", m.perimeter)?;
        writeln!(f, "area       {:.12}", m.area)?;
        writeln!(f, "E = AB ∩ DC  {}", fmt_meet(self.e))?;
        writeln!(f, "F = AD ∩ BC  {}", fmt_meet(self.f))?;
        writeln!(
            f,
            "I1 = {}  r1 = {:.12}{}",
            fmt_point(p.i1),
            p.r1,
            if p.i1_inside { "" } else { "  (outside)" }
        )?;
        writeln!(
            f,
            "I2 = {}  r2 = {:.12}{}",
            fmt_point(p.i2),
            p.r2,
            if p.i2_inside { "" } else { "  (outside)" }
        )?;
        writeln!(f, "r (harmonic) = {:.12}", p.r_harmonic)?;
        writeln!(f, "label      {}", c.label)?;
        writeln!(f, "tangential residual  {:e}", c.tangential_residual)?;
        writeln!(f, "cyclic residual      {:e}", c.cyclic_residual)?;
        writeln!(f, "incenter gap         {:e}", c.incenter_gap)?;
        writeln!(f, "radius gap           {:e}", c.radius_gap)?;
        write!(
            f,
            "area identity residual {:e}",
            self.area_identity.residual
        )
    }
}

/// A triangle given by three points or by a circle and three arc angles in degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TriangleInput {
    Points {
        points: [[f64; 2]; 3],
    },
    Angles {
        radius: f64,
        angles_deg: [f64; 3],
        #[serde(default)]
        center: [f64; 2],
    },
}

impl TriangleInput {
    pub fn triangle(&self) -> Result<InscribedTriangle, GeometryError> {
        match self {
            TriangleInput::Points { points } => {
                let [a, b, c] = points.map(|[x, y]| Point::new(x, y));
                InscribedTriangle::from_points(a, b, c)
            }
            TriangleInput::Angles {
                radius,
                angles_deg,
                center,
            } => InscribedTriangle::from_angles(
                Point::new(center[0], center[1]),
                *radius,
                angles_deg.map(f64::to_radians),
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Hyperbola,
    Euclidean,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstructReport {
    pub triangle: InscribedTriangle,
    pub b_prime: Point,
    pub hyperbola: Option<ConstructionResult>,
    pub euclidean: Option<ConstructionResult>,
    /// `|D_hyperbola D_euclidean| / R` in mode `both`.
    pub disagreement: Option<f64>,
    pub chord_construction: Option<ChordConstruction>,
    pub classification: Classification,
}

impl ConstructReport {
    /// `D` from the hyperbola method when it ran, otherwise the Euclidean one.
    pub fn d(&self) -> Point {
        self.hyperbola
            .or(self.euclidean)
            .expect("at least one method ran")
            .d
    }
}

pub fn construct(t: &InscribedTriangle, mode: Mode) -> Result<ConstructReport, GeometryError> {
    let hyperbola = match mode {
        Mode::Hyperbola | Mode::Both => Some(bicentric_d_hyperbola(t)?),
        Mode::Euclidean => None,
    };
    let euclidean = match mode {
        Mode::Euclidean | Mode::Both => Some(bicentric_d_euclidean(t)),
        Mode::Hyperbola => None,
    };
    let disagreement = match (hyperbola, euclidean) {
        (Some(h), Some(e)) => Some(h.d.distance(e.d) / t.radius()),
        _ => None,
    };
    let d = hyperbola.or(euclidean).expect("mode selects a method").d;
    let q = ConvexQuadrilateral::from_vertices(t.a, t.b, t.c, d)?;
    let pair = incenter_pair(&q)?;
    Ok(ConstructReport {
        triangle: *t,
        b_prime: t.b_prime(),
        hyperbola,
        euclidean,
        disagreement,
        chord_construction: chord_construction(t),
        classification: classify_with(&q, &pair),
    })
}

impl fmt::Display for ConstructReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = &self.triangle;
        writeln!(
            f,
            "circle  center {}  R = {:.12}",
            fmt_point(t.circle.center),
            t.radius()
        )?;
        writeln!(f, "A = {}", fmt_point(t.a))?;
        writeln!(f, "B = {}", fmt_point(t.b))?;
        writeln!(f, "C = {}", fmt_point(t.c))?;
        writeln!(f, "B' = {}", fmt_point(self.b_prime))?;
        for r in [self.hyperbola, self.euclidean].into_iter().flatten() {
            writeln!(f, "[{:?}]", r.method)?;
            writeln!(f, "  D = {}", fmt_point(r.d))?;
            writeln!(
                f,
                "  theta = {:.12} rad ({:.9} deg)",
                r.theta,
                r.theta.to_degrees()
            )?;
            writeln!(f, "  |DB'| = {:.12}", r.chord_dbprime)?;
        }
        if let Some(d) = self.disagreement {
            writeln!(f, "disagreement |D_h D_e| / R = {d:e}")?;
        }
        if let Some(cc) = &self.chord_construction {
            writeln!(
                f,
                "construction  E = {}  F = {}  |F{}| = {:.12}",
                fmt_point(cc.e),
                fmt_point(cc.f),
                if cc.pivot == t.a { "A" } else { "C" },
                cc.transferred
            )?;
        }
        let c = &self.classification;
        writeln!(f, "ABCD label {}", c.label)?;
        writeln!(f, "tangential residual  {:e}", c.tangential_residual)?;
        write!(f, "cyclic residual      {:e}", c.cyclic_residual)
    }
}
