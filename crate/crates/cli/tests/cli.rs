use std::process::{Command as Process, Output};

use p3bundles_cli::{run, Axes, Axis, Command, Format, Params, Request, COLUMNS};
use p3bundles_core::verify::{Formula, Suite};
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Process::new(env!("CARGO_BIN_EXE_p3bundles")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn csv_rows(body: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, COLUMNS);
    r.records().map(|row| row.unwrap().iter().map(String::from).collect()).collect()
}

fn column(row: &[String], name: &str) -> String {
    row[COLUMNS.iter().position(|c| *c == name).unwrap()].clone()
}

#[test]
fn classify_reports_the_cubic_exclusion() {
    let out = bin(&["classify", "--rank", "3", "--nu", "1", "--c1", "0", "--a", "2", "--b", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["schema_version"], 1);
    let records = doc["records"].as_array().unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0]["status"], "NotStable");
    assert_eq!(records[0]["reason"], "k=3,a=2,b=1 exclusion");
    assert_eq!(records[0]["k"], 3);
}

#[test]
fn rank2_quadric_moduli_dimension() {
    let out = bin(&["moduli", "--rank", "2", "--k", "2", "--b", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let record = &json_of(&out)["records"][0];
    assert_eq!(record["dim_M"], 5);
    assert_eq!(record["dim_Y"], 5);
}

#[test]
fn k3_surface_cohomology() {
    let out = bin(&["cohom", "--k", "4", "--a", "2", "--b", "3"]);
    let record = &json_of(&out)["records"][0];
    for (key, value) in [("h0", 16), ("h1", 0), ("h2", 0), ("chi", 16)] {
        assert_eq!(record[key], value, "{key}");
    }
}

#[test]
fn cohom_accepts_negative_twists() {
    let out = bin(&["cohom", "--k", "4", "--a", "0", "--b", "0", "--j", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    let record = &json_of(&out)["records"][0];
    assert_eq!((record["h0"].as_i64(), record["h2"].as_i64()), (Some(0), Some(4)));
}

#[test]
fn empty_sweep_has_no_records() {
    let out = bin(&["sweep", "classify", "--rank", "3", "--k", "3", "--a", "5..4", "--b", "0..3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["records"], Value::Array(vec![]));
}

#[test]
fn interval_columns_are_flattened() {
    let out = bin(&["--format", "csv", "moduli", "--rank", "2", "--k", "4", "--b", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let body = String::from_utf8(out.stdout).unwrap();
    assert!(!body.contains('\r'));
    let rows = csv_rows(&body);
    assert_eq!(rows.len(), 1);
    assert_eq!(column(&rows[0], "h1_end_lo"), "85");
    assert_eq!(column(&rows[0], "h1_end_hi"), "94");
    assert_eq!(column(&rows[0], "h2_end_lo"), "0");
    assert_eq!(column(&rows[0], "h2_end_hi"), "9");
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "csv", "sweep", "moduli", "--rank", "3", "--k", "2..4", "--a", "0..6", "--b", "0..6"];
    let first = bin(&args);
    let second = bin(&args);
    assert_eq!(first.stdout, second.stdout);
    let json_args = &args[2..];
    assert_eq!(bin(json_args).stdout, bin(json_args).stdout);
}

#[test]
fn sweep_is_lexicographic_and_keeps_non_admissible_points() {
    let axes = Axes {
        rank: Some(Axis { lo: 3, hi: 3 }),
        k: Some(Axis { lo: 3, hi: 3 }),
        a: Some(Axis { lo: 0, hi: 3 }),
        b: Some(Axis { lo: -1, hi: 3 }),
        ..Default::default()
    };
    let out = run(&Request::Sweep { command: Command::Moduli, axes }, Format::Csv).unwrap();
    let rows = csv_rows(&out.body);
    assert_eq!(rows.len(), 20);
    let points: Vec<(i64, i64)> =
        rows.iter().map(|r| (column(r, "a").parse().unwrap(), column(r, "b").parse().unwrap())).collect();
    let mut sorted = points.clone();
    sorted.sort();
    assert_eq!(points, sorted);
    let excluded = rows.iter().find(|r| column(r, "a") == "2" && column(r, "b") == "1").unwrap();
    assert_eq!(column(excluded, "status"), "NotStable");
    assert_eq!(column(excluded, "reason_code"), "k3_a2_b1_exclusion");
    assert!(rows.iter().any(|r| column(r, "status") == "Stable" && !column(r, "dim_Y").is_empty()));
}

#[test]
fn core_errors_become_status_records() {
    let params = Params { k: Some(1), a: Some(0), b: Some(0), ..Default::default() };
    let out = run(&Request::Query { command: Command::Cohom, params }, Format::Json).unwrap();
    assert_eq!(out.exit_code, 0);
    let doc: Value = serde_json::from_str(&out.body).unwrap();
    assert_eq!(doc["records"][0]["status"], "LatticeUndefined");
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(bin(&["classify", "--rank", "3", "--a", "1"]).status.code(), Some(2));
    assert_eq!(bin(&["cohom", "--k", "4"]).status.code(), Some(2));
    assert_eq!(bin(&["classify", "--bogus", "1"]).status.code(), Some(2));
    assert_eq!(bin(&["sweep", "cohom", "--k", "x..3", "--a", "0", "--b", "0"]).status.code(), Some(2));
    assert_eq!(bin(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_passes_and_catches_a_shifted_formula() {
    let out = bin(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    let records = doc["records"].as_array().unwrap();
    assert_eq!(records.len(), Suite::ALL.len());
    assert!(records.iter().all(|r| r["checks_failed"] == 0 && r["checks_passed"].as_u64() > Some(0)));

    let shifted = Request::Verify { suites: vec![], shift: Some((Formula::Rank2DimY, 1)) };
    let out = run(&shifted, Format::Csv).unwrap();
    assert_eq!(out.exit_code, 1);
    assert!(out.body.starts_with("suite,checks_passed,checks_failed\nlattice,"));
    assert_eq!(out.body.lines().count(), Suite::ALL.len() + 1);
}
