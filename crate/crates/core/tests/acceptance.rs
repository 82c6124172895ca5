//! Acceptance run: every criterion at its stated tolerance with the default
//! sample counts and seed 42. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use quad_incenters::verify::{run_suite, Bound, Suite, SuiteOutcome};

const SEED: u64 = 42;
const TIME_LIMIT: Duration = Duration::from_secs(60);

struct Verdict {
    passed: bool,
    detail: String,
}

/// All measurements named in `names` pass, and each appears at least `min_count` times.
fn measures_pass(outcome: &SuiteOutcome, names: &[(&str, usize)]) -> Verdict {
    let mut passed = true;
    let mut parts = Vec::new();
    for &(name, min_count) in names {
        let ms: Vec<_> = outcome.measures(name).collect();
        let failures = ms.iter().filter(|m| !m.ok()).count();
        let ok = failures == 0 && ms.len() >= min_count;
        passed &= ok;
        let worst = match ms.first().map(|m| m.bound) {
            Some(Bound::AtLeast(t)) => {
                format!(
                    "min {:.3e} >= {t:.0e}",
                    ms.iter().map(|m| m.value).fold(f64::INFINITY, f64::min)
                )
            }
            Some(Bound::AtMost(t)) => {
                format!(
                    "max {:.3e} <= {t:.0e}",
                    ms.iter().map(|m| m.value).fold(f64::NEG_INFINITY, f64::max)
                )
            }
            _ => "missing".into(),
        };
        let count = if ok {
            String::new()
        } else {
            format!(" ({failures} failing, {} of {min_count})", ms.len())
        };
        parts.push(format!("{name} {worst}{count}"));
    }
    Verdict {
        passed,
        detail: parts.join("; "),
    }
}

fn timed(suite: Suite) -> (SuiteOutcome, Duration) {
    let start = Instant::now();
    let o = run_suite(suite, suite.default_samples(), SEED);
    (o, start.elapsed())
}

fn with_time(mut v: Verdict, elapsed: Duration) -> Verdict {
    if elapsed > TIME_LIMIT {
        v.passed = false;
    }
    v.detail
        .push_str(&format!("; {:.2}s", elapsed.as_secs_f64()));
    v
}

fn verify_csv(seed: u64) -> Vec<u8> {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("verify.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_quadinc"))
        .args([
            "verify",
            "--suite",
            "all",
            "--seed",
            &seed.to_string(),
            "--csv",
        ])
        .arg(&path)
        .stdout(std::process::Stdio::null())
        .status()
        .expect("binary runs");
    assert!(status.success(), "verify exited with {status}");
    std::fs::read(&path).expect("CSV written")
}

fn main() -> ExitCode {
    let (area, t_area) = timed(Suite::Area);
    let (anne, t_anne) = timed(Suite::Anne);
    let (tangential, t_tan) = timed(Suite::Tangential);
    let (cyclic, t_cyc) = timed(Suite::Cyclic);
    let (bicentric, t_bic) = timed(Suite::Bicentric);
    let (theorem8, t_t8) = timed(Suite::Theorem8);

    let mut verdicts: Vec<(&str, Verdict)> = Vec::new();

    verdicts.push((
        "1 area identity",
        with_time(
            measures_pass(
                &area,
                &[
                    ("area_identity", 1000),
                    ("ac_identity", 1000),
                    ("bd_identity", 1000),
                ],
            ),
            t_area,
        ),
    ));
    verdicts.push((
        "2 Léon Anne locus",
        with_time(
            measures_pass(
                &anne,
                &[
                    ("on_line_residual", 100),
                    ("off_line_min_residual", 100),
                    ("slope_error", 100),
                ],
            ),
            t_anne,
        ),
    ));
    verdicts.push((
        "3 tangential case",
        with_time(
            measures_pass(
                &tangential,
                &[
                    ("label_tangential", 200),
                    ("incenter_gap", 200),
                    ("radius_gap", 200),
                    ("area_with_r1", 200),
                    ("i1_on_newton_line", 200),
                ],
            ),
            t_tan,
        ),
    ));

    // third-side implication over every generated quadrilateral
    let all = [&area, &anne, &tangential, &cyclic, &bicentric, &theorem8];
    let total: usize = all
        .iter()
        .map(|o| o.measures("third_side_implication").count())
        .sum();
    let violations: usize = all
        .iter()
        .map(|o| {
            o.measures("third_side_implication")
                .filter(|m| !m.ok())
                .count()
        })
        .sum();
    // one per sample of the quadrilateral suites, three sweep members, and
    // every convex realization of the algebra suite
    let convex = theorem8
        .measures("convex")
        .filter(|m| m.value == 1.0)
        .count();
    let expected = 1000 + 100 + 200 + 3 + 200 + 200 + convex;
    let sweep = measures_pass(
        &tangential,
        &[("sweep_slope_error", 1), ("sweep_at_zero", 1)],
    );
    verdicts.push((
        "4 third-side implication",
        Verdict {
            passed: violations == 0 && total == expected && sweep.passed,
            detail: format!(
                "{violations} violations in {total} quadrilaterals; {}",
                sweep.detail
            ),
        },
    ));

    verdicts.push((
        "5 cyclic case",
        with_time(
            measures_pass(
                &cyclic,
                &[
                    ("incenter_gap", 200),
                    ("i_inside_mn", 200),
                    ("ratio_error", 200),
                    ("bisector_dot", 200),
                ],
            ),
            t_cyc,
        ),
    ));
    verdicts.push((
        "6 bicentric constructions",
        with_time(
            measures_pass(
                &bicentric,
                &[
                    ("bracket_found", 200),
                    ("methods_agree", 200),
                    ("tangential_residual", 200),
                    ("cyclic_residual", 200),
                    ("chord_formula", 1),
                ],
            ),
            t_bic,
        ),
    ));
    let mut t8 = with_time(
        measures_pass(
            &theorem8,
            &[
                ("collinearity", 500),
                ("factor_iff_residual", 500),
                ("forced_factor", 300),
                ("round_trip_label", convex),
            ],
        ),
        t_t8,
    );
    t8.detail
        .push_str(&format!("; {convex} convex realizations of 500"));
    verdicts.push(("7 coincident-incenter algebra", t8));

    let (first, second) = (verify_csv(SEED), verify_csv(SEED));
    verdicts.push((
        "8 determinism",
        Verdict {
            passed: !first.is_empty() && first == second,
            detail: format!("{} bytes, identical: {}", first.len(), first == second),
        },
    ));

    let mut ok = true;
    for (name, v) in &verdicts {
        ok &= v.passed;
        println!(
            "{} criterion {name}: {}",
            if v.passed { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
