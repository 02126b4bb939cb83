//! End-to-end runs of the `hstower` binary.

use std::process::{Command, Output};

fn hstower(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hstower")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dims_sequence() {
    let o = hstower(&["run", "dims", "--range", "1..4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dims: 1, 3, 19, 211"));
}

#[test]
fn dims_prime_field_cross_checks() {
    let o = hstower(&["run", "dims", "--n", "3", "--field", "fp:1073741827", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &v[0];
    assert_eq!(r["field"], "fp:1073741827");
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["dim HS_3 = pair count", "dim HS_3 rational cross-check"]);
}

#[test]
fn ndpf_three() {
    let o = hstower(&["run", "ndpf", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("|NDPF_n| = 5"));
}

#[test]
fn nonhopf_reports_both_sides() {
    let o = hstower(&["run", "nonhopf"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("restrict after product:"));
    assert!(s.contains("product of restrictions:"));
    assert!(s.contains("3 vs 2"));
}

#[test]
fn failing_identity_exits_one_with_witness() {
    // the simple-induction rule already fails for S_1^1 ⊗ S_1^1
    let o = hstower(&["run", "prop8", "--n", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    let fail = s.lines().find(|l| l.contains(",fail,")).expect("a failing row");
    assert!(fail.contains("simple induction") && fail.contains("S_1^1⊗S_1^1"), "{fail}");
}

#[test]
fn usage_errors_exit_two() {
    let o = hstower(&["run", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("expected one of"));
    assert_eq!(hstower(&["run", "dims", "--field", "fp:7"]).status.code(), Some(2));
    assert_eq!(hstower(&["export", "cartan-hsn", "x"]).status.code(), Some(2));
    assert_eq!(hstower(&["export", "cartan-hsn", "2", "--out", "/nonexistent-dir/x.csv"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    let a = hstower(&["run", "grassmann", "--range", "1..4", "--format", "json"]);
    let b = hstower(&["run", "grassmann", "--range", "1..4", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn export_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cartan.csv");
    let o = hstower(&["export", "cartan-hsn", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].ends_with(",3,\"1,2\",\"2,1\",\"1,1,1\""), "{}", lines[0]);
    assert_eq!(lines[1], "3,1,1,1,1");
    assert_eq!(lines[4], "\"1,1,1\",0,0,0,1");
}

#[test]
fn export_grothendieck_ndf() {
    let o = hstower(&["export", "grothendieck", "ndf", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let tables = v.as_array().unwrap();
    // G and K, each with a product and a coproduct table
    assert_eq!(tables.len(), 4);
    let k_product = tables.iter().find(|t| t["kind"] == "K" && t["op"] == "product").unwrap();
    let e = k_product["entries"].as_array().unwrap().iter().find(|e| e["left"] == "1|1" && e["right"] == "1|1").unwrap();
    assert_eq!(e["result"]["2|1"], 1);
    assert_eq!(e["result"]["2|2"], 1);
}
