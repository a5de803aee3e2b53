use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermite-genocchi")).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn geo(dir: &Path) -> String {
    let path = dir.join("geo.json");
    std::fs::write(&path, r#"{"r": 1, "m": 2, "alphas": [0.5], "gamma": 0, "beta": 0, "n": 0}"#).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn family_table_and_eval() {
    let out = cli(&[
        "family", "table", "--r", "1", "--k", "1", "--lnA", "0", "--lnB", "1", "--lnC", "1", "--alphas", "-1", "--x", "0",
        "--y", "0", "--m", "2", "--n-max", "4", "--mode", "exact",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let values: Vec<String> = stdout_json(&out)
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row["value"].as_str().unwrap().to_owned())
        .collect();
    assert_eq!(values, ["0", "1/2", "-1/2", "0", "1/2"]);

    let out = cli(&["family", "eval", "--r", "1", "--k", "1", "--alphas", "-1", "--n", "0"]);
    assert_eq!(stdout_json(&out)["value"], "0");

    let out = cli(&["family", "eval", "--alphas", "-1", "--n", "3", "--mode", "float", "--precision", "64"]);
    assert_eq!(out.status.code(), Some(0));
    let out = cli(&["family", "eval", "--alphas", "-1", "--n", "3", "--mode", "float", "--precision", "32"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn family_errors_name_the_flag() {
    for bad in ["-1,,2", "x", "1"] {
        let out = cli(&["family", "eval", "--alphas", bad, "--n", "2"]);
        assert_eq!(out.status.code(), Some(2), "{bad}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).contains("alphas"), "{bad}");
    }
    let out = cli(&["family", "eval", "--r", "2", "--alphas", "-1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cli(&["--order", "3", "family", "eval", "--alphas", "-1", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--order"));
}

#[test]
fn csv_and_json_agree() {
    let args = ["family", "table", "--k", "1", "--alphas", "-1/2,3", "--x", "1/3", "--y", "2", "--n-max", "6"];
    let json = stdout_json(&cli(&args));
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let csv = cli(&csv_args);
    let mut reader = csv::Reader::from_reader(&csv.stdout[..]);
    let rows: Vec<Vec<String>> = reader.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    let from_json: Vec<Vec<String>> = json
        .as_array()
        .unwrap()
        .iter()
        .map(|row| vec![row["n"].as_str().unwrap().into(), row["value"].as_str().unwrap().into()])
        .collect();
    assert_eq!(rows, from_json);
}

#[test]
fn verify_suites() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path.to_str().unwrap().to_owned()
    };
    let report = dir.path().join("report.json");
    let report_arg = report.to_str().unwrap();

    let sc7 = write("sc7.json", r#"{"theorems": ["SC7"], "seed": 5, "max_n": 6, "max_r": 3, "points_per_theorem": 3}"#);
    let out = cli(&["verify", &sc7, "--out", report_arg]);
    assert_eq!(out.status.code(), Some(0));
    let reports: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(reports
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["note"].as_str().unwrap().contains("measured factor")));

    let empty = write("empty.json", r#"{"theorems": [], "max_n": 4, "max_r": 2, "points_per_theorem": 2}"#);
    let out = cli(&["verify", &empty, "--out", report_arg]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), Value::Array(vec![]));
    assert_eq!(std::fs::read_to_string(&report).unwrap().trim(), "[]");

    let broken = write("broken.json", "{\"theorems\": ");
    assert_eq!(cli(&["verify", &broken]).status.code(), Some(2));
    assert_eq!(cli(&["verify", "/nonexistent/suite.json"]).status.code(), Some(2));

    let float = write(
        "float.json",
        r#"{"theorems": ["T12", "TE1"], "mode": "float", "precision": 128, "max_n": 5, "max_r": 2, "points_per_theorem": 2}"#,
    );
    let out = cli(&["verify", &float]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn dist_commands_on_the_geometric() {
    let dir = tempfile::tempdir().unwrap();
    let params = geo(dir.path());
    let out = cli(&["dist", "pmf", "--params", &params, "--x", "0"]);
    assert_eq!(stdout_json(&out)["pmf"], "0.5");
    let out = cli(&["dist", "hazard", "--params", &params, "--x", "5"]);
    assert_eq!(stdout_json(&out)["h0"], "0.5");
    let out = cli(&["dist", "classify", "--params", &params, "--class", "MIHR", "--grid", "6"]);
    assert_eq!(stdout_json(&out)["verdict"], "holds-on-grid");
    let out = cli(&["dist", "reliability", "--params", &params, "--x", "3"]);
    assert_eq!(stdout_json(&out)["reliability"], "0.125");
    let out = cli(&["dist", "moments", "--params", &params, "--kind", "factorial", "--max-ell", "2"]);
    let v = stdout_json(&out);
    assert!((v["mean"].as_str().unwrap().parse::<f64>().unwrap() - 1.0).abs() < 1e-9);
    assert!((v["factorial_2"].as_str().unwrap().parse::<f64>().unwrap() - 2.0).abs() < 1e-9);
    let out = cli(&["dist", "normalizer", "--params", &params, "--method", "lattice-bruteforce"]);
    assert!((stdout_json(&out)["B"].as_str().unwrap().parse::<f64>().unwrap() - 0.25).abs() < 1e-12);
    let out = cli(&["dist", "cdf", "--params", &params, "--x", "2"]);
    assert_eq!(stdout_json(&out)["lemma_corrected"], "0.875");
}

#[test]
fn dist_classify_reports_a_witness() {
    let out = cli(&["dist", "classify", "--alphas", "0.5", "--n", "1", "--class", "MDHR", "--grid", "6", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("class,grid,verdict,witness_x,witness_t,lhs,rhs"));
    assert!(lines.next().unwrap().starts_with("MDHR,6,violated,0,1,"));
}

#[test]
fn dist_validation_failures() {
    let cases: [&[&str]; 5] = [
        &["dist", "pmf", "--alphas", "1.2", "--x", "0"],
        &["dist", "pmf", "--alphas", "-0.5", "--x", "0"],
        &["dist", "pmf", "--alphas", "0.5", "--m", "1", "--x", "0"],
        &["dist", "pmf", "--alphas", "0.5,0.5", "--x", "0"],
        &["dist", "classify", "--alphas", "0.5", "--class", "IFR"],
    ];
    for args in cases {
        let out = cli(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}
