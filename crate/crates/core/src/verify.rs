//! Seeded verification suites. Each sample produces a list of named
//! measurements, some bounded by a tolerance and some recorded for the CSV
//! only; a suite passes when every bounded measurement of every sample does.

use std::fmt;
use std::io::Write;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::barycentric::{
    classify_solution, collinearity_residual, configuration, master_factors, master_residual,
    realize, solve_n, BaryPoint, SolutionClass,
};
use crate::classify::{
    classify_with, cyclic_incenter_report, tangential_consistency, tangential_residual,
    third_side_with, Label, TOL_CLASSIFY,
};
use crate::construct::{
    bicentric_d_euclidean, bicentric_d_hyperbola, chord_construction, chord_length,
    hyperbola_branch_membership, transform_triangle, InscribedTriangle,
};
use crate::error::GeometryError;
use crate::geom::{circumcircle, Point, Vector};
use crate::incenters::{area_identity_with, incenter_pair, leon_anne_residual};
use crate::quad::ConvexQuadrilateral;
use crate::sample::{
    bary_sample, cyclic_quad, inscribed_triangle, pivoted_fourth_side, random_convex_quad,
    sample_rng, tangential_quad, BaryKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Area,
    Anne,
    Tangential,
    Cyclic,
    Bicentric,
    Theorem8,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Area,
        Suite::Anne,
        Suite::Tangential,
        Suite::Cyclic,
        Suite::Bicentric,
        Suite::Theorem8,
    ];

    fn stream(self) -> u32 {
        self as u32 + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Area => "area",
            Suite::Anne => "anne",
            Suite::Tangential => "tangential",
            Suite::Cyclic => "cyclic",
            Suite::Bicentric => "bicentric",
            Suite::Theorem8 => "theorem8",
        }
    }

    pub fn default_samples(self) -> u64 {
        match self {
            Suite::Area => 1000,
            Suite::Anne => 100,
            Suite::Tangential | Suite::Cyclic | Suite::Bicentric => 200,
            Suite::Theorem8 => 500,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    AtMost(f64),
    AtLeast(f64),
    /// Recorded, not checked.
    Info,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Measure {
    pub name: &'static str,
    pub value: f64,
    pub bound: Bound,
}

impl Measure {
    pub fn at_most(name: &'static str, value: f64, tol: f64) -> Self {
        Self {
            name,
            value,
            bound: Bound::AtMost(tol),
        }
    }

    pub fn at_least(name: &'static str, value: f64, tol: f64) -> Self {
        Self {
            name,
            value,
            bound: Bound::AtLeast(tol),
        }
    }

    pub fn info(name: &'static str, value: f64) -> Self {
        Self {
            name,
            value,
            bound: Bound::Info,
        }
    }

    /// Boolean condition recorded as 0 (holds) or 1 (violated).
    pub fn flag(name: &'static str, holds: bool) -> Self {
        Self::at_most(name, if holds { 0.0 } else { 1.0 }, 0.0)
    }

    pub fn ok(&self) -> bool {
        match self.bound {
            Bound::AtMost(t) => self.value <= t,
            Bound::AtLeast(t) => self.value >= t,
            Bound::Info => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRecord {
    /// Sample index, or a label such as `sweep` for suite-level extras.
    pub id: String,
    pub measures: Vec<Measure>,
}

impl SampleRecord {
    pub fn passed(&self) -> bool {
        self.measures.iter().all(Measure::ok)
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.measures
            .iter()
            .find(|m| m.name == name)
            .map(|m| m.value)
    }
}

/// Worst value of one named measurement across a suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub name: &'static str,
    pub bound: Bound,
    pub worst: f64,
    pub failures: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub seed: u64,
    pub records: Vec<SampleRecord>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.records.iter().all(SampleRecord::passed)
    }

    pub fn passed_count(&self) -> usize {
        self.records.iter().filter(|r| r.passed()).count()
    }

    pub fn measures<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Measure> + 'a {
        self.records
            .iter()
            .flat_map(|r| r.measures.iter())
            .filter(move |m| m.name == name)
    }

    pub fn summaries(&self) -> Vec<CheckSummary> {
        let mut out: Vec<CheckSummary> = Vec::new();
        for m in self.records.iter().flat_map(|r| r.measures.iter()) {
            let idx = match out.iter().position(|s| s.name == m.name) {
                Some(i) => i,
                None => {
                    let worst = match m.bound {
                        Bound::AtLeast(_) => f64::INFINITY,
                        _ => f64::NEG_INFINITY,
                    };
                    out.push(CheckSummary {
                        name: m.name,
                        bound: m.bound,
                        worst,
                        failures: 0,
                        count: 0,
                    });
                    out.len() - 1
                }
            };
            let s = &mut out[idx];
            s.count += 1;
            if !m.ok() {
                s.failures += 1;
            }
            // NaN counts as worst
            s.worst = match m.bound {
                Bound::AtLeast(_) if m.value.is_nan() || m.value < s.worst => m.value,
                Bound::AtLeast(_) => s.worst,
                _ if m.value.is_nan() || m.value > s.worst => m.value,
                _ => s.worst,
            };
        }
        out
    }
}

pub fn run_suite(suite: Suite, samples: u64, seed: u64) -> SuiteOutcome {
    let mut records: Vec<SampleRecord> = (0..samples)
        .into_par_iter()
        .map(|id| {
            let mut rng = sample_rng(seed, suite.stream(), id);
            let measures = match suite {
                Suite::Area => area_sample(&mut rng),
                Suite::Anne => anne_sample(&mut rng),
                Suite::Tangential => tangential_sample(&mut rng),
                Suite::Cyclic => cyclic_sample(&mut rng),
                Suite::Bicentric => bicentric_sample(&mut rng),
                Suite::Theorem8 => theorem8_sample(&mut rng, id),
            };
            SampleRecord {
                id: id.to_string(),
                measures,
            }
        })
        .collect();
    match suite {
        Suite::Tangential => records.push(SampleRecord {
            id: "sweep".into(),
            measures: pivot_sweep(),
        }),
        Suite::Bicentric => records.push(SampleRecord {
            id: "chord_40_60_80".into(),
            measures: chord_example(),
        }),
        _ => {}
    }
    SuiteOutcome {
        suite,
        seed,
        records,
    }
}

/// RFC 4180 rows `suite,sample_id,quantity,value`.
pub fn write_csv<W: Write>(outcomes: &[SuiteOutcome], writer: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["suite", "sample_id", "quantity", "value"])?;
    for o in outcomes {
        for r in &o.records {
            for m in &r.measures {
                w.write_record([
                    o.suite.name(),
                    r.id.as_str(),
                    m.name,
                    &format!("{:e}", m.value),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.abs().ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Third-side implication plus the raw tangency gaps.
fn third_side_measures(
    q: &ConvexQuadrilateral,
    pair: &crate::incenters::IncenterPair,
) -> [Measure; 3] {
    let r = third_side_with(q, pair);
    [
        Measure::flag("third_side_implication", r.implication_holds()),
        Measure::info("t3_i1", r.t3_i1),
        Measure::info("t3_i2", r.t3_i2),
    ]
}

fn pair_failure(e: GeometryError) -> Vec<Measure> {
    let _ = e;
    vec![Measure::flag("incenter_pair_ok", false)]
}

fn area_sample<R: Rng>(rng: &mut R) -> Vec<Measure> {
    let q = random_convex_quad(rng);
    let pair = match incenter_pair(&q) {
        Ok(p) => p,
        Err(e) => return pair_failure(e),
    };
    let id = area_identity_with(&q, &pair);
    let mut v = vec![
        Measure::at_most("area_identity", id.residual, 1e-9),
        Measure::at_most("ac_identity", id.ac_residual, 1e-9),
        Measure::at_most("bd_identity", id.bd_residual, 1e-9),
        Measure::flag(
            "harmonic_between",
            pair.r1.min(pair.r2) <= pair.r_harmonic * (1.0 + 1e-15)
                && pair.r_harmonic <= pair.r1.max(pair.r2) * (1.0 + 1e-15),
        ),
        Measure::info("i1_inside", pair.i1_inside as u8 as f64),
        Measure::info("i2_inside", pair.i2_inside as u8 as f64),
    ];
    v.extend(third_side_measures(&q, &pair));
    v
}

pub const ANNE_OFFSETS: [f64; 3] = [1e-3, 1e-2, 1e-1];

fn anne_sample<R: Rng>(rng: &mut R) -> Vec<Measure> {
    let q = random_convex_quad(rng);
    let s2 = q.scale() * q.scale();
    let (m, n) = (q.m(), q.n());
    let normal = q.newton_line().normal();
    let mut on_line = 0.0f64;
    let mut slope_err = 0.0f64;
    let mut min_off = f64::INFINITY;
    let mut per_offset = [0.0f64; 3];
    for j in 0..10 {
        let o = m.lerp(n, -1.0 + 3.0 * j as f64 / 9.0);
        on_line = on_line.max(leon_anne_residual(&q, o).abs() / s2);
        let offs: Vec<f64> = ANNE_OFFSETS
            .iter()
            .map(|d| leon_anne_residual(&q, o + normal * (d * q.scale())).abs() / s2)
            .collect();
        for (acc, r) in per_offset.iter_mut().zip(&offs) {
            *acc = acc.max(*r);
        }
        min_off = offs.iter().copied().fold(min_off, f64::min);
        slope_err = slope_err.max((log_log_slope(&ANNE_OFFSETS, &offs) - 1.0).abs());
    }
    let mut v = vec![
        Measure::at_most("on_line_residual", on_line, 1e-10),
        Measure::at_least("off_line_min_residual", min_off, 1e-10),
        Measure::at_most("slope_error", slope_err, 0.05),
        Measure::info("off_line_residual_1e-3", per_offset[0]),
        Measure::info("off_line_residual_1e-2", per_offset[1]),
        Measure::info("off_line_residual_1e-1", per_offset[2]),
    ];
    match incenter_pair(&q) {
        Ok(pair) => {
            let at_incenters = leon_anne_residual(&q, pair.i1)
                .abs()
                .max(leon_anne_residual(&q, pair.i2).abs())
                / s2;
            v.push(Measure::at_most("incenter_residual", at_incenters, 1e-10));
            v.extend(third_side_measures(&q, &pair));
        }
        Err(e) => v.extend(pair_failure(e)),
    }
    v
}

fn tangential_sample<R: Rng>(rng: &mut R) -> Vec<Measure> {
    let (q, circle) = tangential_quad(rng);
    let pair = match incenter_pair(&q) {
        Ok(p) => p,
        Err(e) => return pair_failure(e),
    };
    let class = classify_with(&q, &pair);
    let m = q.metrics();
    let mut v = vec![
        Measure::flag("label_tangential", class.label.is_tangential()),
        Measure::at_most("incenter_gap", class.incenter_gap, 1e-9),
        Measure::at_most("radius_gap", class.radius_gap, 1e-9),
        Measure::at_most(
            "area_with_r1",
            (m.area - m.perimeter * pair.r1 / 2.0).abs() / m.area,
            1e-9,
        ),
        Measure::at_most(
            "i1_on_newton_line",
            q.newton_line().eval(pair.i1).abs() / q.scale(),
            1e-10,
        ),
        Measure::at_most(
            "i1_at_incircle_center",
            pair.i1.distance(circle.center) / q.scale(),
            1e-9,
        ),
        Measure::flag("consistency_report", tangential_consistency(&q).is_ok()),
    ];
    v.extend(third_side_measures(&q, &pair));
    v
}

pub const SWEEP_DELTAS: [f64; 3] = [1e-2, 1e-4, 1e-6];

/// `DA` pivoted about `A` away from tangency: the tangential residual must
/// fall linearly with the pivot angle.
pub fn pivot_sweep() -> Vec<Measure> {
    let residuals: Vec<f64> = SWEEP_DELTAS
        .iter()
        .map(|&d| tangential_residual(&pivoted_fourth_side(d)))
        .collect();
    let mut v = vec![
        Measure::at_most(
            "sweep_slope_error",
            (log_log_slope(&SWEEP_DELTAS, &residuals) - 1.0).abs(),
            0.05,
        ),
        Measure::at_most(
            "sweep_at_zero",
            tangential_residual(&pivoted_fourth_side(0.0)),
            1e-9,
        ),
        Measure::info("sweep_residual_1e-2", residuals[0]),
        Measure::info("sweep_residual_1e-4", residuals[1]),
        Measure::info("sweep_residual_1e-6", residuals[2]),
    ];
    for &d in &SWEEP_DELTAS {
        let q = pivoted_fourth_side(d);
        match incenter_pair(&q) {
            Ok(pair) => v.extend(third_side_measures(&q, &pair)),
            Err(e) => v.extend(pair_failure(e)),
        }
    }
    v
}

fn cyclic_sample<R: Rng>(rng: &mut R) -> Vec<Measure> {
    let (q, _) = cyclic_quad(rng);
    let pair = match incenter_pair(&q) {
        Ok(p) => p,
        Err(e) => return pair_failure(e),
    };
    let class = classify_with(&q, &pair);
    let mut v = vec![Measure::flag("label_cyclic", class.label.is_cyclic())];
    match cyclic_incenter_report(&q) {
        Ok(r) => v.extend([
            Measure::at_most("incenter_gap", r.incenter_gap, 1e-9),
            Measure::flag("i_inside_mn", r.t > 0.0 && r.t < 1.0),
            Measure::at_most("ratio_error", r.ratio_error, 1e-9),
            Measure::at_most("bisector_dot", r.bisector_dot, 1e-9),
        ]),
        Err(_) => v.push(Measure::flag("consistency_report", false)),
    }
    v.extend(third_side_measures(&q, &pair));
    v
}

const GRID: usize = 1000;

/// `g` strictly decreasing from `C` to `A` over a uniform grid of the arc.
fn monotone_on_arc(t: &InscribedTriangle) -> bool {
    let arc = t.arc_ca();
    let g: Vec<f64> = (1..GRID)
        .map(|i| t.hyperbola_residual(arc.point_at(i as f64 / GRID as f64)))
        .collect();
    g.windows(2).all(|w| w[1] < w[0])
}

fn bicentric_sample<R: Rng>(rng: &mut R) -> Vec<Measure> {
    let t = inscribed_triangle(rng);
    let radius = t.radius();
    let hyper = match bicentric_d_hyperbola(&t) {
        Ok(h) => h,
        Err(_) => return vec![Measure::flag("bracket_found", false)],
    };
    let eucl = bicentric_d_euclidean(&t);
    let mut v = vec![
        Measure::flag("bracket_found", true),
        Measure::at_most("methods_agree", hyper.d.distance(eucl.d) / radius, 1e-9),
        Measure::at_most(
            "d_on_circle",
            (hyper.d.distance(t.circle.center) - radius).abs() / radius,
            1e-10,
        ),
        Measure::flag(
            "hyperbola_membership",
            hyperbola_branch_membership(t.a, t.c, t.b, hyper.d, 1e-9).unwrap_or(false),
        ),
        Measure::flag("g_monotone", monotone_on_arc(&t)),
    ];
    if let Some(cc) = chord_construction(&t) {
        v.push(Measure::at_most(
            "construction_chord",
            (cc.transferred - eucl.chord_dbprime).abs() / radius,
            1e-9,
        ));
    }

    match hyper.quadrilateral(&t) {
        Ok(q) => match incenter_pair(&q) {
            Ok(pair) => {
                let class = classify_with(&q, &pair);
                v.extend([
                    Measure::at_most(
                        "tangential_residual",
                        class.tangential_residual,
                        TOL_CLASSIFY,
                    ),
                    Measure::at_most("cyclic_residual", class.cyclic_residual, TOL_CLASSIFY),
                    Measure::flag("label_bicentric", class.label == Label::Bicentric),
                    Measure::flag("tangential_report", tangential_consistency(&q).is_ok()),
                    Measure::flag("cyclic_report", cyclic_incenter_report(&q).is_ok()),
                ]);
                v.extend(third_side_measures(&q, &pair));
            }
            Err(e) => v.extend(pair_failure(e)),
        },
        Err(_) => v.push(Measure::flag("quadrilateral_convex", false)),
    }

    let angle = rng.random_range(0.0..std::f64::consts::TAU);
    let shift = Vector::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
    let (s, c) = angle.sin_cos();
    let moved_d = Point::new(
        c * hyper.d.x - s * hyper.d.y + shift.x,
        s * hyper.d.x + c * hyper.d.y + shift.y,
    );
    let equivariance = transform_triangle(&t, angle, shift)
        .ok()
        .and_then(|tt| bicentric_d_hyperbola(&tt).ok())
        .map_or(f64::INFINITY, |h| h.d.distance(moved_d) / radius);
    v.push(Measure::at_most("equivariance", equivariance, 1e-9));
    v
}

/// `R = 1` with interior angles 40°, 60°, 80°: `|DB′| = 2·sin 20°·tan 30°`.
pub fn chord_example() -> Vec<Measure> {
    let t = InscribedTriangle::from_angles(
        Point::new(0.0, 0.0),
        1.0,
        [0.0, 160f64.to_radians(), 240f64.to_radians()],
    )
    .expect("distinct angles");
    let expected = 2.0 * 20f64.to_radians().sin() * 30f64.to_radians().tan();
    let eucl = bicentric_d_euclidean(&t);
    let [ka, kb, kc] = t.interior_angles();
    vec![
        Measure::at_most(
            "chord_formula",
            (eucl.chord_dbprime - expected).abs(),
            1e-12,
        ),
        Measure::at_most(
            "chord_from_angles",
            (chord_length(1.0, ka, kb, kc) - expected).abs(),
            1e-12,
        ),
        Measure::info("chord", eucl.chord_dbprime),
    ]
}

fn bary_kind_for(id: u64) -> BaryKind {
    match id % 6 {
        0 | 1 => BaryKind::Generic,
        2 => BaryKind::ForcedTangential,
        3 => BaryKind::ForcedCyclicSlope,
        4 => BaryKind::ForcedCyclicBracket,
        _ => BaryKind::ForcedBicentric,
    }
}

fn concyclic_residual(v: &[Point; 4]) -> Option<f64> {
    let c = circumcircle(v[0], v[1], v[2]).ok()?;
    Some((v[3].distance(c.center) - c.radius).abs() / c.radius)
}

fn theorem8_sample<R: Rng>(rng: &mut R, id: u64) -> Vec<Measure> {
    let s = bary_sample(rng, bary_kind_for(id));
    let (tri, k, m) = (s.tri, s.k, s.m);
    let n = solve_n(&tri, k, m).expect("sampler keeps the denominator clear");
    let cfg = configuration(&tri, m, n, k).expect("sampler avoids m = −1");
    let factors = master_factors(&tri, k, m).expect("denominator checked");
    let factor = factors.relative_product();
    let residual = master_residual(&tri, k, m).expect("lines are finite");
    let forced = s.kind != BaryKind::Generic;
    let class = classify_solution(&tri, k, m);

    let expected_class = match s.kind {
        BaryKind::Generic => SolutionClass::Generic,
        BaryKind::ForcedTangential => SolutionClass::Tangential,
        BaryKind::ForcedCyclicSlope | BaryKind::ForcedCyclicBracket => SolutionClass::Cyclic,
        BaryKind::ForcedBicentric => SolutionClass::Bicentric,
    };
    let cyclic_kind = matches!(
        s.kind,
        BaryKind::ForcedCyclicSlope | BaryKind::ForcedCyclicBracket | BaryKind::ForcedBicentric
    );
    let mut v = vec![
        Measure::at_most(
            "collinearity",
            collinearity_residual(&cfg.m, &cfg.n, &cfg.i_o).abs(),
            1e-10,
        ),
        Measure::flag(
            "factor_iff_residual",
            (factor.abs() <= 1e-9) == (residual.abs() <= 1e-9),
        ),
        Measure::info("factor", factor),
        Measure::info("residual", residual),
        Measure::flag("solution_class", class == expected_class),
    ];
    if forced {
        v.push(Measure::at_most("forced_factor", factor.abs(), 1e-14));
    }
    if cyclic_kind {
        let target = BaryPoint::new(tri.b * tri.b - tri.c * tri.c, -tri.b * tri.b, tri.c * tri.c);
        v.push(Measure::flag(
            "p_inf_tangent_direction",
            cfg.p_inf.proportional(&target, 1e-9),
        ));
    }

    let Ok(vertices) = realize(&tri, &cfg) else {
        v.push(Measure::info("realized", 0.0));
        return v;
    };
    v.push(Measure::info("realized", 1.0));
    if cyclic_kind {
        if let Some(r) = concyclic_residual(&vertices) {
            v.push(Measure::at_most("realization_concyclic", r, 1e-9));
        }
    }
    let Ok(q) = ConvexQuadrilateral::from_array(vertices) else {
        v.push(Measure::info("convex", 0.0));
        return v;
    };
    v.push(Measure::info("convex", 1.0));
    let pair = match incenter_pair(&q) {
        Ok(p) => p,
        Err(e) => {
            v.extend(pair_failure(e));
            return v;
        }
    };
    let label = classify_with(&q, &pair);
    v.push(Measure::flag(
        "round_trip_label",
        Some(label.label) == class.expected_label(),
    ));
    if matches!(
        s.kind,
        BaryKind::ForcedTangential | BaryKind::ForcedBicentric
    ) {
        let mt = q.metrics();
        v.push(Measure::at_most(
            "realization_pitot",
            (mt.a + mt.c - mt.b - mt.d).abs() / mt.perimeter,
            1e-9,
        ));
    }
    // coincident incenters exactly when the master equation holds
    v.push(Measure::flag(
        "coincident_iff_forced",
        (label.incenter_gap <= 1e-9) == forced,
    ));
    v.push(Measure::info("incenter_gap", label.incenter_gap));
    v.extend(third_side_measures(&q, &pair));
    v
}
