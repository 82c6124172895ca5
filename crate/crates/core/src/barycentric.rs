//! Homogeneous barycentric analysis of quadrilaterals whose two incenters
//! coincide.
//!
//! The reference triangle is `EDA` with `E = (1:0:0)`, `D = (0:1:0)`,
//! `A = (0:0:1)` and side lengths `a = DA`, `b = AE`, `c = ED`. The
//! quadrilateral `ABCD` has `B = (1:0:n)` on `EA`, `C = (1:−mn:0)` on `ED`
//! and `F = (0:m:1)` on `DA`. A common incenter `I_o = (k:b:c)` sits on the
//! bisector at `E`; requiring `I_o` on the Newton line fixes `n`, and
//! requiring it to be equidistant from `BC` and `DA` leaves the factored
//! condition
//!
//! ```text
//! (1 + m)(k² − a²)(b − cm)[b(b − c + k) − (b − c − k)cm] = 0
//! ```

use serde::Serialize;
use thiserror::Error;

use crate::classify::{Label, TOL_CLASSIFY};
use crate::geom::Point;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BaryError {
    #[error("side lengths ({a}, {b}, {c}) violate the strict triangle inequality")]
    InvalidTriangle { a: f64, b: f64, c: f64 },
    #[error("m = −1 puts F at infinity")]
    RejectedMminus1,
    #[error("collinearity denominator vanishes ({0:e})")]
    DegenerateDenominator(f64),
    #[error("both lines are the line at infinity")]
    BothLinesAtInfinity,
    #[error("point is at infinity")]
    PointAtInfinity,
    #[error("placement does not realize the side lengths (worst relative error {0:e})")]
    PlacementMismatch(f64),
}

type Result<T> = std::result::Result<T, BaryError>;

/// Side lengths of `EDA`: `a = DA`, `b = AE`, `c = ED`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReferenceTriangle {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl ReferenceTriangle {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let ok = [a, b, c].iter().all(|x| x.is_finite() && *x > 0.0)
            && a < b + c
            && b < c + a
            && c < a + b;
        if ok {
            Ok(Self { a, b, c })
        } else {
            Err(BaryError::InvalidTriangle { a, b, c })
        }
    }

    fn perimeter(&self) -> f64 {
        self.a + self.b + self.c
    }

    /// Incenter `(a : b : c)`.
    pub fn incenter(&self) -> BaryPoint {
        BaryPoint::new(self.a, self.b, self.c)
    }

    /// Excenter opposite `E`: `(−a : b : c)`.
    pub fn e_excenter(&self) -> BaryPoint {
        BaryPoint::new(-self.a, self.b, self.c)
    }

    /// `E = (0,0)`, `D = (c,0)` and `A` above the x-axis.
    pub fn standard_placement(&self) -> [Point; 3] {
        let (a, b, c) = (self.a, self.b, self.c);
        let ax = (b * b + c * c - a * a) / (2.0 * c);
        let ay = (b * b - ax * ax).max(0.0).sqrt();
        [Point::new(0.0, 0.0), Point::new(c, 0.0), Point::new(ax, ay)]
    }
}

/// Homogeneous triple `(x : y : z)`; compared by proportionality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BaryPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Line `α·x + β·y + γ·z = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BaryLine {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

fn max_abs(t: [f64; 3]) -> f64 {
    t.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

fn norm(t: [f64; 3]) -> f64 {
    t.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn cross(u: [f64; 3], v: [f64; 3]) -> [f64; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn det3(u: [f64; 3], v: [f64; 3], w: [f64; 3]) -> f64 {
    let c = cross(v, w);
    u[0] * c[0] + u[1] * c[1] + u[2] * c[2]
}

impl BaryPoint {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn triple(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::new(s * self.x, s * self.y, s * self.z)
    }

    pub fn coordinate_sum(&self) -> f64 {
        self.x + self.y + self.z
    }

    pub fn is_at_infinity(&self) -> bool {
        self.coordinate_sum().abs() <= 1e-14 * max_abs(self.triple())
    }

    /// Proportional triples, with `tol` relative to the product of norms.
    pub fn proportional(&self, other: &BaryPoint, tol: f64) -> bool {
        let (u, v) = (self.triple(), other.triple());
        norm(cross(u, v)) <= tol * norm(u) * norm(v)
    }
}

impl BaryLine {
    pub const fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn triple(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    pub fn eval(&self, p: &BaryPoint) -> f64 {
        self.alpha * p.x + self.beta * p.y + self.gamma * p.z
    }

    /// Line `DA`: `x = 0`.
    pub const DA: BaryLine = BaryLine::new(1.0, 0.0, 0.0);
}

/// `det(P, Q, R) / (|P|·|Q|·|R|)`: zero iff the three points are collinear.
pub fn collinearity_residual(p: &BaryPoint, q: &BaryPoint, r: &BaryPoint) -> f64 {
    let (u, v, w) = (p.triple(), q.triple(), r.triple());
    det3(u, v, w) / (norm(u) * norm(v) * norm(w))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Configuration {
    pub b: BaryPoint,
    pub c: BaryPoint,
    pub f: BaryPoint,
    /// Midpoint of `AC`.
    pub m: BaryPoint,
    /// Midpoint of `BD`.
    pub n: BaryPoint,
    pub i_o: BaryPoint,
    pub line_bc: BaryLine,
    /// Point at infinity of `BC`.
    pub p_inf: BaryPoint,
    /// `n = 0` puts `B` on `E`.
    pub degenerate: bool,
}

pub fn configuration(tri: &ReferenceTriangle, m: f64, n: f64, k: f64) -> Result<Configuration> {
    if m == -1.0 {
        return Err(BaryError::RejectedMminus1);
    }
    let mn = m * n;
    Ok(Configuration {
        b: BaryPoint::new(1.0, 0.0, n),
        c: BaryPoint::new(1.0, -mn, 0.0),
        f: BaryPoint::new(0.0, m, 1.0),
        m: BaryPoint::new(1.0, -mn, 1.0 - mn),
        n: BaryPoint::new(1.0, 1.0 + n, n),
        i_o: BaryPoint::new(k, tri.b, tri.c),
        line_bc: BaryLine::new(mn, 1.0, -m),
        p_inf: BaryPoint::new(1.0 + m, -m - mn, -1.0 + mn),
        degenerate: n == 0.0,
    })
}

/// The `n` that puts `M`, `N` and `I_o` on one line.
pub fn solve_n(tri: &ReferenceTriangle, k: f64, m: f64) -> Result<f64> {
    let (b, c) = (tri.b, tri.c);
    let denominator = (b - c + k) + (b - c - k) * m;
    if denominator.abs() <= 1e-12 * tri.perimeter() {
        return Err(BaryError::DegenerateDenominator(denominator));
    }
    Ok((b + c - k) / denominator)
}

/// Quadratic form `S` of a line over the reference triangle. Up to a
/// constant it is the squared norm that turns `|line(P)|` into a distance.
pub fn equidistance_s(line: &BaryLine, tri: &ReferenceTriangle) -> f64 {
    let (a2, b2, c2) = (tri.a * tri.a, tri.b * tri.b, tri.c * tri.c);
    let [l1, l2, l3] = line.triple();
    (b2 + c2 - a2) * (l2 - l3).powi(2)
        + (c2 + a2 - b2) * (l3 - l1).powi(2)
        + (a2 + b2 - c2) * (l1 - l2).powi(2)
}

/// `S₂·(L₁·P)² − S₁·(L₂·P)²`, divided by the squared max-magnitudes of
/// `P`, `L₁`, `L₂` and the squared longest side. Zero iff `P` is equidistant
/// from both lines.
pub fn equidistance_residual(
    p: &BaryPoint,
    l1: &BaryLine,
    l2: &BaryLine,
    tri: &ReferenceTriangle,
) -> Result<f64> {
    let s1 = equidistance_s(l1, tri);
    let s2 = equidistance_s(l2, tri);
    if s1 == 0.0 && s2 == 0.0 {
        return Err(BaryError::BothLinesAtInfinity);
    }
    let raw = s2 * l1.eval(p).powi(2) - s1 * l2.eval(p).powi(2);
    let side = tri.a.max(tri.b).max(tri.c);
    let scale = max_abs(p.triple()) * max_abs(l1.triple()) * max_abs(l2.triple()) * side;
    Ok(raw / (scale * scale))
}

/// The four factors of the master equation, each also available relative
/// to its natural magnitude so that a forced zero reads as a rounding-level
/// number regardless of the side lengths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MasterFactors {
    /// `1 + m`
    pub one_plus_m: f64,
    /// `k² − a²`
    pub k2_minus_a2: f64,
    /// `b − c·m`
    pub b_minus_cm: f64,
    /// `b(b − c + k) − (b − c − k)·c·m`
    pub bracket: f64,
    magnitudes: [f64; 4],
}

impl MasterFactors {
    pub fn product(&self) -> f64 {
        self.one_plus_m * self.k2_minus_a2 * self.b_minus_cm * self.bracket
    }

    pub fn relative(&self) -> [f64; 4] {
        let raw = [
            self.one_plus_m,
            self.k2_minus_a2,
            self.b_minus_cm,
            self.bracket,
        ];
        std::array::from_fn(|i| raw[i] / self.magnitudes[i])
    }

    /// Product of the relative factors, in `[−1, 1]`.
    pub fn relative_product(&self) -> f64 {
        self.relative().iter().product()
    }
}

pub fn master_factors(tri: &ReferenceTriangle, k: f64, m: f64) -> Result<MasterFactors> {
    solve_n(tri, k, m)?;
    let (a, b, c) = (tri.a, tri.b, tri.c);
    let lead = b * (b - c + k);
    let tail = (b - c - k) * c * m;
    Ok(MasterFactors {
        one_plus_m: 1.0 + m,
        k2_minus_a2: k * k - a * a,
        b_minus_cm: b - c * m,
        bracket: lead - tail,
        magnitudes: [
            1.0 + m.abs(),
            k * k + a * a,
            b + c * m.abs(),
            (lead.abs() + tail.abs()).max(f64::MIN_POSITIVE),
        ],
    })
}

/// Left side of the master equation.
pub fn theorem8_factor(tri: &ReferenceTriangle, k: f64, m: f64) -> Result<f64> {
    Ok(master_factors(tri, k, m)?.product())
}

/// Equidistance of `I_o` from `BC` and `DA` with `n` taken from the
/// collinearity condition.
pub fn master_residual(tri: &ReferenceTriangle, k: f64, m: f64) -> Result<f64> {
    let n = solve_n(tri, k, m)?;
    let cfg = configuration(tri, m, n, k)?;
    equidistance_residual(&cfg.i_o, &cfg.line_bc, &BaryLine::DA, tri)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionClass {
    Rejected,
    Tangential,
    Cyclic,
    Bicentric,
    Generic,
}

impl SolutionClass {
    /// The Cartesian label a convex realization should carry.
    pub fn expected_label(self) -> Option<Label> {
        match self {
            SolutionClass::Rejected => None,
            SolutionClass::Tangential => Some(Label::Tangential),
            SolutionClass::Cyclic => Some(Label::Cyclic),
            SolutionClass::Bicentric => Some(Label::Bicentric),
            SolutionClass::Generic => Some(Label::Generic),
        }
    }
}

pub fn classify_solution(tri: &ReferenceTriangle, k: f64, m: f64) -> SolutionClass {
    if m == -1.0 {
        return SolutionClass::Rejected;
    }
    let (a, b, c) = (tri.a, tri.b, tri.c);
    let tangential = (k.abs() - a).abs() <= TOL_CLASSIFY * a;
    let lead = b * (b - c + k);
    let tail = (b - c - k) * c * m;
    let cyclic = (b - c * m).abs() <= TOL_CLASSIFY * (b + c * m.abs())
        || (lead - tail).abs() <= TOL_CLASSIFY * (lead.abs() + tail.abs());
    match (tangential, cyclic) {
        (true, true) => SolutionClass::Bicentric,
        (true, false) => SolutionClass::Tangential,
        (false, true) => SolutionClass::Cyclic,
        (false, false) => SolutionClass::Generic,
    }
}

/// `(x·E + y·D + z·A) / (x + y + z)` for a placement `[E, D, A]`.
pub fn bary_to_cartesian(
    tri: &ReferenceTriangle,
    p: &BaryPoint,
    placement: &[Point; 3],
) -> Result<Point> {
    let [e, d, a] = *placement;
    let realized = [d.distance(a), a.distance(e), e.distance(d)];
    let wanted = [tri.a, tri.b, tri.c];
    let worst = (0..3)
        .map(|i| (realized[i] - wanted[i]).abs() / wanted[i])
        .fold(0.0, f64::max);
    if worst.is_nan() || worst > 1e-10 {
        return Err(BaryError::PlacementMismatch(worst));
    }
    if p.is_at_infinity() {
        return Err(BaryError::PointAtInfinity);
    }
    let s = p.coordinate_sum();
    Ok(Point::new(
        (p.x * e.x + p.y * d.x + p.z * a.x) / s,
        (p.x * e.y + p.y * d.y + p.z * a.y) / s,
    ))
}

/// Cartesian `A, B, C, D` of the configuration on the standard placement.
pub fn realize(tri: &ReferenceTriangle, cfg: &Configuration) -> Result<[Point; 4]> {
    let placement = tri.standard_placement();
    let [_, d, a] = placement;
    Ok([
        a,
        bary_to_cartesian(tri, &cfg.b, &placement)?,
        bary_to_cartesian(tri, &cfg.c, &placement)?,
        d,
    ])
}
