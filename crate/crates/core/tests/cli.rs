use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn quadinc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadinc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_generic_quad() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "q.json",
        r#"{"vertices": [[0,0],[4,0],[5,3],[1,4]]}"#,
    );
    let out = quadinc(&["analyze", "--input", &input]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("label      generic"));
    assert!(text.contains("E = AB ∩ DC  (17.000000000000, 0.000000000000)"));
}

#[test]
fn square_exits_with_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "sq.json",
        r#"{"vertices": [[0,0],[1,0],[1,1],[0,1]]}"#,
    );
    let out = quadinc(&["analyze", "--input", &input]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("parallelogram"));
}

#[test]
fn malformed_and_missing_input_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"vertices": [[0,0],[1,0]"#);
    assert_eq!(code(&quadinc(&["analyze", "--input", &bad])), 2);
    let missing = dir.path().join("nope.json");
    assert_eq!(
        code(&quadinc(&["analyze", "--input", missing.to_str().unwrap()])),
        2
    );
    let concave = write(
        dir.path(),
        "cc.json",
        r#"{"vertices": [[0,0],[2,0],[1,0.5],[1,3]]}"#,
    );
    let out = quadinc(&["analyze", "--input", &concave]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not strictly convex"));
}

#[test]
fn json_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "q.json",
        r#"{"vertices": [[0.3,-1.2],[7.5,0.4],[5.1,6.6],[-0.7,3.9]]}"#,
    );
    let first: Value =
        serde_json::from_slice(&quadinc(&["analyze", "--input", &input, "--json"]).stdout).unwrap();
    let echoed = serde_json::json!({ "vertices": first["input"]["vertices"] });
    let again_path = write(dir.path(), "again.json", &echoed.to_string());
    let second: Value =
        serde_json::from_slice(&quadinc(&["analyze", "--input", &again_path, "--json"]).stdout)
            .unwrap();
    compare(&first, &second, "");
}

fn compare(a: &Value, b: &Value, path: &str) {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            assert!(
                (x - y).abs() <= 1e-12 * x.abs().max(1.0),
                "{path}: {x} vs {y}"
            );
        }
        (Value::Object(x), Value::Object(y)) => {
            assert_eq!(x.len(), y.len(), "{path}");
            for (k, v) in x {
                compare(v, &y[k], &format!("{path}.{k}"));
            }
        }
        (Value::Array(x), Value::Array(y)) => {
            assert_eq!(x.len(), y.len(), "{path}");
            for (i, (u, v)) in x.iter().zip(y).enumerate() {
                compare(u, v, &format!("{path}[{i}]"));
            }
        }
        _ => assert_eq!(a, b, "{path}"),
    }
}

#[test]
fn kite_svg_shows_coincident_incenters() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "kite.json",
        r#"{"vertices": [[0,0],[2,2],[5,0],[2,-2]]}"#,
    );
    let svg = dir.path().join("kite.svg");
    let out = quadinc(&[
        "analyze",
        "--input",
        &input,
        "--svg",
        svg.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["classification"]["label"], "tangential");
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains(r#"viewBox="0 0 1000 1000""#));
    let centers: Vec<&str> = text
        .lines()
        .filter(|l| {
            l.contains(r##"fill="none" stroke="#d62728""##)
                || l.contains(r##"fill="none" stroke="#9467bd""##)
        })
        .map(|l| &l[l.find("cx").unwrap()..l.find(" r=").unwrap()])
        .collect();
    assert_eq!(centers.len(), 2);
    assert_eq!(centers[0], centers[1]);
}

#[test]
fn batch_input_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let one = r#"{"vertices": [[0,0],[4,0],[5,3],[1,4]]}"#;
    let kite = r#"{"vertices": [[0,0],[2,2],[5,0],[2,-2]]}"#;
    let input = write(
        dir.path(),
        "b.json",
        &format!(r#"{{"batch": [{one}, {kite}]}}"#),
    );
    let csv = dir.path().join("out.csv");
    let out = quadinc(&["analyze", "--input", &input, "--csv", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("index,ax,ay"));
    assert!(lines[2].contains(",tangential,"));
}

#[test]
fn construct_modes() {
    let out = quadinc(&[
        "construct",
        "--mode",
        "both",
        "--radius",
        "1",
        "--angles",
        "0,100,200",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("ABCD label bicentric"));
    assert!(text.contains("disagreement"));

    let out = quadinc(&[
        "construct",
        "--radius",
        "2",
        "--angles",
        "10,130,200",
        "--json",
    ]);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r["disagreement"].as_f64().unwrap() <= 1e-9);
    assert_eq!(r["classification"]["label"], "bicentric");

    let out = quadinc(&[
        "construct",
        "--mode",
        "euclidean",
        "--points",
        "0,0,1,1,2,2",
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("collinear"));
}

#[test]
fn construct_isosceles_puts_d_at_b_prime() {
    let out = quadinc(&[
        "construct",
        "--radius",
        "1",
        "--angles",
        "0,120,240",
        "--json",
    ]);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    let h = &r["hyperbola"];
    assert!(h["chord_dbprime"].as_f64().unwrap() < 1e-12);
    let bp = &r["b_prime"];
    let dx = h["d"]["x"].as_f64().unwrap() - bp["x"].as_f64().unwrap();
    let dy = h["d"]["y"].as_f64().unwrap() - bp["y"].as_f64().unwrap();
    assert!(dx.hypot(dy) < 1e-12);
}

#[test]
fn construct_from_file_with_svg() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "t.json",
        r#"{"points": [[1,0],[-0.5,0.8660254037844386],[-0.3,-0.9539392014169456]]}"#,
    );
    let svg = dir.path().join("c.svg");
    let out = quadinc(&[
        "construct",
        "--input",
        &input,
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&svg).unwrap();
    for label in [">A<", ">B<", ">C<", ">D<", ">B'<", ">E<", ">F<"] {
        assert!(text.contains(label), "{label}");
    }
}

#[test]
fn verify_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for p in [&a, &b] {
        let out = quadinc(&[
            "verify",
            "--suite",
            "all",
            "--samples",
            "20",
            "--seed",
            "9",
            "--csv",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", stdout(&out));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let c = dir.path().join("c.csv");
    quadinc(&[
        "verify",
        "--suite",
        "all",
        "--samples",
        "20",
        "--seed",
        "10",
        "--csv",
        c.to_str().unwrap(),
    ]);
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&c).unwrap());
}

#[test]
fn verify_rejects_zero_samples() {
    assert_eq!(code(&quadinc(&["verify", "--samples", "0"])), 2);
}
