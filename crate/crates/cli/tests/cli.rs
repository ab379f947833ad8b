use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_frobenius"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn frobenius")
}

fn json(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(text.lines().count(), 1, "one JSON line expected: {text}");
    serde_json::from_str(&text).unwrap()
}

#[test]
fn bound_opposite_sign_407() {
    let out = run(&["bound", "opposite-sign", "--n", "407"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "bound opposite-sign");
    assert_eq!(v["schema"], 1);
    let x = v["results"]["bound"]["x"].as_f64().unwrap();
    assert!((x - 2.96e6).abs() / 2.96e6 < 1e-3, "{x}");
    assert_eq!(v["results"]["sufficiency"]["holds"], true);
}

#[test]
fn bound_angle_parameters() {
    let out = run(&["bound", "angle", "--conductor", "11", "--alpha", "1.0471975", "--beta", "2.0943951"]);
    assert_eq!(out.status.code(), Some(0));
    let b = &json(&out)["results"]["bound"];
    assert!((b["mu"].as_f64().unwrap() - 0.609).abs() < 1e-3);
    assert_eq!(b["m"], 14);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bound", "opposite-sign"]).status.code(), Some(2));
    assert_eq!(run(&["bound", "opposite-sign", "--n", "120"]).status.code(), Some(2));
    assert_eq!(run(&["minorant", "--alpha", "0", "--beta", "1", "--m", "7"]).status.code(), Some(2));
    let out = run(&["bound", "angle", "--conductor", "11", "--alpha", "1", "--beta", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_pair_and_label_typo() {
    let curves = data("curves.jsonl");
    let c = curves.to_str().unwrap();
    let out = run(&["search", "opposite-sign", "--curves", c, "--pair", "11a1", "37a1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["results"];
    assert_eq!(r["found_prime"], 5);
    assert_eq!(r["within_bound"], true);
    assert!(r.get("elapsed_seconds").is_none());

    let out = run(&["search", "opposite-sign", "--curves", c, "--pair", "11a1", "37a1", "--xmax", "3"]);
    let r = &json(&out)["results"];
    assert!(r["found_prime"].is_null());
    assert!(r["within_bound"].is_null());

    let out = run(&["search", "opposite-sign", "--curves", c, "--pair", "11a1", "38a1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("11a1") && err.contains("37a1"), "{err}");
}

#[test]
fn search_angle_with_table_and_timing() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("ap.csv");
    // a fabricated a_5 = 0 puts θ_5 at π/2
    std::fs::write(&table, "p,ap\n5,0\n").unwrap();
    let curves = data("curves.jsonl");
    let arg = format!("11a1={}", table.display());
    let out = run(&[
        "search", "angle", "--curves", curves.to_str().unwrap(), "--label", "11a1", "--alpha", "1.5", "--beta", "1.6",
        "--xmax", "100", "--ap-table", &arg, "--timing",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["results"];
    assert_eq!(r["found_prime"], 5);
    assert!(r["elapsed_seconds"].is_number());
}

#[test]
fn minorant_plot_data() {
    let dir = tempfile::tempdir().unwrap();
    let plot = dir.path().join("plot.csv");
    let out = run(&[
        "minorant", "--alpha", "0", "--beta", "3.141592653589793", "--m", "9", "--emit-plot-data",
        plot.to_str().unwrap(), "--points", "200",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["results"]["xi"][0].as_f64().unwrap() - 0.96).abs() < 1e-12);
    let mut rdr = csv::Reader::from_path(&plot).unwrap();
    let mut n = 0;
    for row in rdr.records() {
        let row = row.unwrap();
        let chi: f64 = row[1].parse().unwrap();
        let s: f64 = row[2].parse().unwrap();
        assert!(s <= chi + 1e-9);
        n += 1;
    }
    assert_eq!(n, 200);
}

#[test]
fn deterministic_output() {
    let args = ["verify", "constants"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
    let v = json(&a);
    let w: Vec<String> = serde_json::from_value(v["warnings"].clone()).unwrap();
    for name in ["eta", "B2", "B5"] {
        assert!(w.iter().any(|s| s.starts_with(&format!("{name}:"))), "{w:?}");
    }
}

#[test]
fn verify_c3_reports_failure() {
    let out = run(&["verify", "c3"]);
    assert_eq!(out.status.code(), Some(1));
    let r = &json(&out)["results"]["c3"];
    assert_eq!(r["pass"], false);
    assert!(r["supremum"].as_f64().unwrap() > 56.958);
}

#[test]
fn csv_rows() {
    let out = run(&["--csv", "verify", "upsilon"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("claim,published,computed,pass"));
    assert!(lines.next().unwrap().ends_with(",true"));
}
