use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn eccc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eccc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> (String, String) {
    let out = eccc(args);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(out.status.success(), "{args:?} failed: {stderr}");
    (String::from_utf8(out.stdout).unwrap(), stderr)
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args).0).expect("valid json")
}

fn csv_rows(text: &str) -> Vec<csv::StringRecord> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.records().map(|x| x.unwrap()).collect()
}

fn column(text: &str, name: &str) -> usize {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.headers().unwrap().iter().position(|h| h == name).unwrap()
}

fn num(rec: &csv::StringRecord, i: usize) -> f64 {
    rec[i].parse().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

const COMMUTING: &str = r#"{"dim":2,"items":[
 {"weight":0.5,"matrix":[[[1,0],[0,0]],[[0,0],[0,0]]]},
 {"weight":0.5,"matrix":[[[0,0],[0,0]],[[0,0],[1,0]]]}]}"#;

#[test]
fn bb84_half_and_one() {
    let v = json(&["eccc", "--family", "bb84", "--p", "0.5", "--format", "json"]);
    let r = &v["results"][0];
    assert!((r["j"].as_f64().unwrap() - 0.75).abs() < 1e-6);
    assert!((r["q"].as_f64().unwrap() - 0.25).abs() < 1e-6);

    let v = json(&["eccc", "--family", "bb84", "--p", "1.0", "--format", "json"]);
    assert!((v["results"][0]["j"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn bb84_sweep_matches_closed_form() {
    let (out, _) = ok(&["eccc", "--family", "bb84", "--p", "0..1", "--step", "0.05", "--restarts", "4"]);
    let (ip, ij) = (column(&out, "p"), column(&out, "j"));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 21);
    for r in &rows {
        let p = num(r, ip);
        let want = 0.75 + (2.0 * p - 1.0).abs() / 4.0;
        assert!((num(r, ij) - want).abs() < 1e-4, "p = {p}");
    }
}

#[test]
fn six_state_is_two_thirds() {
    let v = json(&["eccc", "--family", "six-state", "--format", "json"]);
    assert!((v["results"][0]["j"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-6);
}

#[test]
fn fig1_breakpoints_and_symmetry() {
    let (out, _) = ok(&["fig1", "--samples", "100"]);
    let (it, ij) = (column(&out, "theta_rad"), column(&out, "j_closed"));
    let rows = csv_rows(&out);
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (num(r, it), num(r, ij))).collect();
    let at = |theta: f64| {
        pts.iter()
            .min_by(|a, b| (a.0 - theta).abs().total_cmp(&(b.0 - theta).abs()))
            .map(|p| p.1)
            .unwrap()
    };
    assert!((at(PI / 2.0) - 0.75).abs() < 1e-9);
    // closed form bottoms out where sin^2 = 2/3
    let brk = (2.0f64 / 3.0).sqrt().asin();
    assert!(at(brk) >= 2.0 / 3.0 - 1e-9);
    assert!(pts.iter().all(|p| p.1 >= 2.0 / 3.0 - 1e-9));
    for &(theta, j) in &pts {
        if theta <= PI {
            assert!((at(PI - theta) - j).abs() < 1e-9, "theta = {theta}");
        }
    }
}

#[test]
fn qkd_reference_rates() {
    let v = json(&["qkd", "--family", "bb84", "--rounds", "20000"]);
    assert!((v["q_reference"].as_f64().unwrap() - 0.25).abs() < 1e-6);
    let r = v["empirical_r"].as_f64().unwrap();
    assert!((r - 0.25).abs() < 0.03, "empirical {r}");

    let v = json(&["qkd", "--family", "six-state", "--rounds", "20000"]);
    assert!((v["q_reference"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-6);
}

#[test]
fn commuting_file_warns() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "comm.json", COMMUTING);
    let (out, err) = ok(&["qkd", "--input", &path, "--rounds", "1000"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["q_reference"].as_f64().unwrap().abs() < 1e-12);
    assert!(err.contains("unsuitable for QKD"), "{err}");
}

#[test]
fn explore_commuting_gaps_vanish() {
    let v = json(&["explore", "--trials", "3", "--commuting", "--restarts", "4"]);
    for t in v["trials"].as_array().unwrap() {
        assert!(t["product_gap"].as_f64().unwrap().abs() < 1e-4);
        assert!(t["conjecture_gap"].as_f64().unwrap().abs() < 1e-4);
    }
}

#[test]
fn explore_product_inequality_holds() {
    let v = json(&["explore", "--trials", "8", "--restarts", "8"]);
    let eps = v["summary"]["epsilon_opt"].as_f64().unwrap();
    for t in v["trials"].as_array().unwrap() {
        assert!(t["product_gap"].as_f64().unwrap() >= -eps, "{t}");
    }
    assert!(v["summary"]["max_product_gap"]["seed"].is_u64());
}

#[test]
fn same_seed_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let (_, err) = ok(&[
            "qkd", "--family", "bb84", "--rounds", "5000", "--seed", "0x1234", "--format", "csv", "--output",
            p.to_str().unwrap(),
        ]);
        assert!(err.contains("seed: 4660 (0x1234)"), "{err}");
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let x = ok(&["fig1", "--samples", "100", "--seed", "7"]).0;
    let y = ok(&["fig1", "--samples", "100", "--seed", "7", "--workers", "1"]).0;
    assert_eq!(x, y);
}

#[test]
fn validate_names_failing_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"dim":2,"items":[
 {"weight":0.5,"matrix":[[[1,0],[0,0]],[[0,0],[0,0]]]},
 {"weight":0.4,"matrix":[[[0.5,0],[0.5,0]],[[0.5,0],[0.5,0]]]}]}"#,
    );
    let out = eccc(&["validate", "--input", &bad]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("weights sum"), "{err}");

    let not_psd = write(
        dir.path(),
        "neg.json",
        r#"{"dim":2,"items":[{"weight":1,"matrix":[[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]}]}"#,
    );
    let out = eccc(&["validate", "--input", &not_psd]);
    assert!(!out.status.success());

    let good = write(dir.path(), "good.json", COMMUTING);
    let v = json(&["validate", "--input", &good]);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["items"], 2);
}

#[test]
fn zero_restarts_is_a_usage_error() {
    let out = eccc(&["eccc", "--family", "bb84", "--p", "0.5", "--restarts", "0"]);
    assert!(!out.status.success());
}
