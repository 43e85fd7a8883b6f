use std::path::PathBuf;
use std::process::{Command, Output};

use szlab::envelope::{Certificate, EnvelopeResult};
use szlab::hull::{HullStatus, HullVerdict};
use szlab::io::from_json;
use szlab::oracle::OracleValue;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn sz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sz")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn functional_on_the_counterexample() {
    let disc = fixture("counterexample.json");
    let o = sz(&["functional", "--disc", &disc, "--which", "I"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "sz/1");
    assert!((v["value"].as_f64().unwrap() - (1.0 + 2f64.ln())).abs() < 1e-12);

    let o = sz(&["functional", "--disc", &disc, "--which", "I", "--method", "quadrature"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["value"].as_f64().unwrap() - (1.0 + 2f64.ln())).abs() < 5e-6);

    // ν needs a factored disc.
    assert_eq!(
        sz(&["functional", "--disc", &disc, "--which", "nu"]).status.code(),
        Some(2)
    );
}

#[test]
fn malformed_geometry_exits_two_with_the_field_path() {
    let o = sz(&["envelope", "--set", &fixture("bad_radius.json"), "--point", "2,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("primitives[0].ball.radius"), "{}", stderr(&o));

    let dir = tempfile::tempdir().unwrap();
    let wrong = dir.path().join("wrong.json");
    std::fs::write(&wrong, r#"{"schema":"sz/9","primitives":[]}"#).unwrap();
    let o = sz(&["envelope", "--set", wrong.to_str().unwrap(), "--point", "2,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("schema"));

    let o = sz(&["envelope", "--set", &fixture("unit_ball.json"), "--point", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn envelope_grid_matches_log_plus_on_the_unit_ball() {
    let set = fixture("unit_ball.json");
    let o = sz(&[
        "envelope-grid",
        "--set",
        &set,
        "--grid",
        "-3:3:5,-2:2:3",
        "--families",
        "ball",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,value,family"));
    let mut rows = 0;
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let (re, im, v): (f64, f64, f64) = (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap());
        let expected = re.hypot(im).ln().max(0.0);
        assert!((v - expected).abs() < 1e-3, "{line}");
        rows += 1;
    }
    assert_eq!(rows, 15);
}

#[test]
fn csv_output_is_reproducible() {
    let set = fixture("two_discs.json");
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = sz(&[
            "envelope-grid",
            "--set",
            &set,
            "--grid",
            "1.5:2.5:2,0:0.5:2",
            "--families",
            "ball,rational",
            "--budget",
            "3",
            "--seed",
            "5",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        std::fs::read(out).unwrap()
    };
    assert_eq!(run("a.csv"), run("b.csv"));
}

#[test]
fn envelope_result_round_trips_and_reproduces() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("result.json");
    let o = sz(&[
        "envelope",
        "--set",
        &fixture("unit_ball.json"),
        "--point",
        "2,0",
        "--families",
        "ball,rational",
        "--budget",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    let r: EnvelopeResult = from_json(&text).unwrap();
    assert!((r.value - 2f64.ln()).abs() < 1e-3);
    let again: EnvelopeResult = from_json(&szlab::io::to_json(&r).unwrap()).unwrap();
    assert_eq!(again, r);
}

#[test]
fn glue_checks_an_emitted_spec() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("glued.json");
    let set = fixture("two_discs.json");
    let o = sz(&[
        "envelope",
        "--set",
        &set,
        "--point",
        "2,0",
        "--families",
        "glued",
        "--budget",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r: EnvelopeResult = from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let Certificate::Glued { spec } = &r.certificate else {
        panic!("expected a glued certificate");
    };
    let spec_path = dir.path().join("spec.json");
    std::fs::write(&spec_path, szlab::io::to_json(spec).unwrap()).unwrap();
    let grid = r.validity.grid.to_string();
    let o = sz(&[
        "glue",
        "--spec",
        spec_path.to_str().unwrap(),
        "--set",
        &set,
        "--grid",
        &grid,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["bound"].as_f64().unwrap() - r.value).abs() < 1e-6);

    // A single disc does not contain the glued boundary.
    let o = sz(&[
        "glue",
        "--spec",
        spec_path.to_str().unwrap(),
        "--set",
        &fixture("unit_ball.json"),
        "--grid",
        &grid,
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn oracle_methods() {
    let set = fixture("unit_ball.json");
    let o = sz(&[
        "oracle", "--set", &set, "--point", "2,0", "--method", "pde", "--grid", "256",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: OracleValue = from_json(&stdout(&o)).unwrap();
    assert!((v.value - 2f64.ln()).abs() <= v.error_estimate);

    let o = sz(&[
        "oracle", "--set", &set, "--point", "0,3", "--method", "poly", "--degree", "1",
    ]);
    let v: OracleValue = from_json(&stdout(&o)).unwrap();
    assert!((v.value - 3f64.ln()).abs() < 1e-6);

    let o = sz(&[
        "oracle",
        "--set",
        &fixture("two_discs.json"),
        "--point",
        "2,0",
        "--method",
        "closed",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn hull_verdicts() {
    let k = fixture("unit_circle.json");
    let o = sz(&["hull", "--compact", &k, "--point", "2,0", "--schedule", "0.1,0.05"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: HullVerdict = from_json(&stdout(&o)).unwrap();
    assert_eq!(v.status, HullStatus::NotInHull);

    let o = sz(&["hull", "--compact", &k, "--point", "0,0", "--schedule", "0.05,0.1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thread_cap_is_validated() {
    let set = fixture("unit_ball.json");
    let args = ["oracle", "--set", set.as_str(), "--point", "2,0", "--method", "closed"];
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_sz"))
            .env("SZ_THREADS", threads)
            .args(args)
            .output()
            .unwrap()
    };
    assert!(run("1").status.success());
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn verify_fixture_suite() {
    let o = sz(&["verify", "--suite", "paper-fixtures"]);
    assert!(o.status.success(), "{}{}", stdout(&o), stderr(&o));
    let table = stdout(&o);
    assert!(table.contains("[PASS] 1. counterexample fixture"), "{table}");
    assert!(table.contains("4 of 4 criteria passed"));
}
