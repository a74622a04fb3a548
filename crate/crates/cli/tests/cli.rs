use std::path::PathBuf;
use std::process::{Command, Output};

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str]) -> Output {
    let dir = configs();
    let args: Vec<String> = args
        .iter()
        .map(|a| match a.strip_prefix('@') {
            Some(f) => dir.join(f).display().to_string(),
            None => a.to_string(),
        })
        .collect();
    Command::new(env!("CARGO_BIN_EXE_algdyn")).args(&args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn analyze_stock_systems() {
    let v = json(&["analyze", "--config", "@x2x3.toml"]);
    assert_eq!(v["mixing"], true);
    assert!(v["separation_constant"].as_str().unwrap().starts_with("[0.58622"));
    let v = json(&["analyze", "--config", "@nonmix.toml"]);
    assert_eq!(v["mixing"], false);
    assert!(v["separation_constant"].is_null());
    let v = json(&["analyze", "--config", "@ledrappier.toml"]);
    assert_eq!(v["places"].as_array().unwrap().len(), 3);
    for s in v["product_formula"].as_array().unwrap() {
        assert_eq!(s["exact"], true);
        assert_eq!(s["sum"], "0");
    }
    let v = json(&["analyze", "--config", "@x2.toml"]);
    assert_eq!(v["separation_constant"], "log(2)");
}

#[test]
fn perpoints_tables() {
    let out = stdout(&["perpoints", "--config", "@x2.toml", "--radius", "4"]);
    let counts: Vec<&str> = out.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(counts, ["1", "3", "7", "15"]);
    let out = stdout(&["perpoints", "--config", "@fibonacci.toml", "--radius", "5"]);
    let counts: Vec<&str> = out.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(counts, ["1", "1", "4", "5", "11"]);
    let out = stdout(&["perpoints", "--config", "@x2x3.toml", "--radius", "2"]);
    assert!(out.lines().any(|l| l == "1,-1,1,product,agree"));
    assert!(!out.contains("DISAGREE"));
}

#[test]
fn scan_x2_slope() {
    let out = stdout(&["scan", "--config", "@x2.toml", "--k", "1..6", "--window", "14"]);
    let radii: Vec<&str> = out.lines().skip(1).take(6).map(|l| l.split(',').nth(4).unwrap()).collect();
    assert_eq!(radii, ["2", "4", "6", "8", "10", "12"]);
    // 2 / log 2
    assert!(out.contains("# slope,2.885390"));
    let out = stdout(&["scan", "--config", "@x2.toml", "--k", "1", "--property", "II"]);
    assert!(out.lines().nth(1).unwrap().starts_with("1,2,II,literal,2,"));
}

#[test]
fn scan_flags_boundary() {
    let out = stdout(&["scan", "--config", "@x2.toml", "--k", "3", "--window", "5"]);
    assert_eq!(out.lines().nth(1).unwrap().split(',').nth(7).unwrap(), "true");
}

#[test]
fn correlate_and_pair() {
    let v = json(&["correlate", "--config", "@x2.toml", "--functions", "@x2_functions.toml", "--n", "1"]);
    assert_eq!(v["display"], "1");
    let v = json(&["pairing", "--config", "@x2.toml", "--functions", "@x2_pairing.toml", "--n", "2"]);
    assert_eq!(v["display"], "3/4 - 1/5i");
    let v = json(&["pairing", "--config", "@x2.toml", "--functions", "@x2_pairing.toml", "--n", "3"]);
    assert_eq!(v["display"], "0");
}

#[test]
fn compose_implications() {
    for cfg in ["@x2_plus_x3.toml", "@jordan2.toml"] {
        let out = stdout(&["compose", "--config", cfg, "--k", "1..3"]);
        for row in out.lines().skip(1).take(3) {
            assert!(row.ends_with(",true"), "{row}");
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "--config", "@missing.toml"]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--config", "@x2.toml", "--k", "0..2"]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--config", "@x2.toml", "--k", "6", "--cap", "10"]).status.code(), Some(4));
    assert_eq!(
        run(&["pairing", "--config", "@nonmix.toml", "--functions", "@x2_pairing.toml", "--n", "1,-1"]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

const GOLDEN: &[&[&str]] = &[
    &["analyze", "--config", "@x2x3.toml"],
    &["analyze", "--config", "@ledrappier.toml", "--output", "csv"],
    &["perpoints", "--config", "@x2x3.toml", "--radius", "3"],
    &["scan", "--config", "@x2x3.toml", "--k", "1", "--window", "6"],
    &["scan", "--config", "@fibonacci.toml", "--k", "1..3", "--property", "II-strong", "--output", "json"],
    &["correlate", "--config", "@x2.toml", "--functions", "@x2_functions.toml", "--n", "1"],
    &["compose", "--config", "@jordan2.toml", "--k", "1..2"],
];

#[test]
fn deterministic_output() {
    for args in GOLDEN {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}
