use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn nonspin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonspin")).args(args).output().expect("binary runs")
}

fn curve(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("curves").join(name).display().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn witness<'a>(v: &'a Value, id: &str) -> &'a str {
    v["checks"].as_array().unwrap().iter().find(|c| c["id"] == id).unwrap_or_else(|| panic!("no check {id}"))["witness"]
        .as_str()
        .unwrap()
}

#[test]
fn polytopes_suite_reports_f_vector() {
    let out = nonspin(&["verify", "polytopes", "--report", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suite"], "polytopes");
    assert_eq!(witness(&v, "polytopes.f_vector"), "[120, 720, 1200, 600]");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn surface_suite_reports_self_intersection_one() {
    let out = nonspin(&["verify", "surface", "--report", "json", "--samples", "20000"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(witness(&v, "selfint.total").starts_with("exact 1 "));
    assert_eq!(v["samples"], 20000);
}

#[test]
fn json_layout() {
    let v = json(&nonspin(&["weight", &curve("great_circle.txt"), "--report", "json", "--seed", "9"]));
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["checks", "samples", "seed", "suite", "version"]);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["version"], 1);
    for c in v["checks"].as_array().unwrap() {
        let mut k: Vec<&str> = c.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        k.sort_unstable();
        assert_eq!(k, ["id", "ms", "status", "witness"]);
        assert_eq!(c["ms"], 0);
    }
}

#[test]
fn weight_of_reference_curves() {
    for (file, exact) in [("great_circle.txt", "0"), ("two_arc.txt", "0"), ("white.txt", "-1/2")] {
        let out = nonspin(&["weight", &curve(file), "--report", "json"]);
        assert_eq!(out.status.code(), Some(0), "{file}");
        let v = json(&out);
        assert_eq!(witness(&v, "weight.exact"), exact, "{file}");
    }
    let v = json(&nonspin(&["weight", &curve("great_circle.txt"), "--report", "json"]));
    assert!(witness(&v, "weight.monte_carlo").ends_with("identically zero true"));
}

#[test]
fn same_seed_same_bytes() {
    let args = ["verify", "surface", "--report", "json", "--seed", "17", "--samples", "5000"];
    let a = nonspin(&args);
    let b = nonspin(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn markdown_is_default() {
    let out = nonspin(&["weight", &curve("two_arc.txt")]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("# weight"));
    assert!(s.contains("| pass | `weight.exact` | 0 |"));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(nonspin(&["verify", "everything"]).status.code(), Some(2));
    assert_eq!(nonspin(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(nonspin(&["verify", "all", "--report", "xml"]).status.code(), Some(2));
    assert_eq!(nonspin(&["weight", "/no/such/curve"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad_curve = dir.path().join("c.txt");
    std::fs::write(&bad_curve, "+e1 -e1 +e2\n").unwrap();
    assert_eq!(nonspin(&["weight", bad_curve.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn malformed_scenario_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s.txt");
    std::fs::write(&p, "VERSION 1\nFACETS\nz 0\nPENTAGONS\nP1 S0\n").unwrap();
    let out = nonspin(&["verify", "lemmas", "--scenario", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains(&format!("{}:5:", p.display())), "{err}");
}

#[test]
fn tampered_checksum_fails_with_exit_1() {
    let bundled = nonspin_core::scenarios::BUNDLED;
    // swap the letters of the first recorded side
    let tampered = bundled.replacen("E1 E ", "E1 F ", 1);
    assert_ne!(tampered, bundled);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s.txt");
    std::fs::write(&p, tampered).unwrap();
    let out = nonspin(&["verify", "claim42", "--report", "json", "--scenario", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let failed: Vec<&str> =
        v["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").map(|c| c["id"].as_str().unwrap()).collect();
    assert!(failed.contains(&"claim42.side_checksums"), "{failed:?}");
}
