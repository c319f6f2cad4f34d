use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mincodes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn pds_example_3_1() {
    let v = json(&["pds", "--recipe", "example-3.1"]);
    let c = &v["certificate"];
    assert_eq!(c["v"], 256);
    assert_eq!(c["k"], 204);
    assert_eq!(c["theta1"], 12);
    assert_eq!(c["theta2"], -4);
    assert_eq!(v["is_pds"], true);
}

#[test]
fn pds_table_2_row_1() {
    let v = json(&["pds", "--recipe", "table-2-row-1"]);
    let c = &v["certificate"];
    assert_eq!(
        (c["k"].as_i64(), c["lambda"].as_i64(), c["mu"].as_i64()),
        (Some(22), Some(1), Some(2))
    );
    assert_eq!(
        (c["theta1"].as_i64(), c["theta2"].as_i64()),
        (Some(4), Some(-5))
    );
}

#[test]
fn malformed_j_is_a_config_error() {
    let out = run(&[
        "pds",
        "--field",
        r#"{"p":3,"e":1,"m":5}"#,
        "--subset",
        r#"{"cyclotomic":{"N":11,"J":[0,1,2,3,4,5,6,7,8,9,10]}}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "pds",
        "--field",
        r#"{"p":4,"e":1,"m":2}"#,
        "--subset",
        r#"{"explicit":{"logs":[0]}}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_pds_exits_3() {
    let out = run(&[
        "pds",
        "--field",
        r#"{"p":3,"e":1,"m":4}"#,
        "--subset",
        r#"{"explicit":{"logs":[0,1]}}"#,
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_method_exits_2() {
    let out = run(&["code", "--recipe", "example-3.1", "--methods", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn code_example_3_1_all_methods() {
    let v = json(&["code", "--recipe", "example-3.1", "--methods", "all"]);
    assert_eq!(
        (v["length"].as_u64(), v["dim"].as_u64()),
        (Some(255), Some(5))
    );
    assert_eq!(v["overall_minimal"], true);
    assert_eq!(v["weight_class"], "three");
    for m in ["cover", "heng", "snc"] {
        assert_eq!(v["minimal"][m]["verdict"], "minimal", "{m}");
    }
}

#[test]
fn code_example_3_2_complement() {
    let v = json(&["code", "--recipe", "example-3.2-complement"]);
    let fired = &v["minimal"]["pds_sufficient"]["fired"];
    assert!(
        fired.as_array().unwrap().iter().any(|f| f == "3b"),
        "{fired}"
    );
    assert_eq!(v["weight_class"], "four");
    assert_eq!(v["ab_violation_predicted"], false);
}

#[test]
fn code_example_3_3_latin() {
    let v = json(&[
        "code",
        "--recipe",
        "example-3.3",
        "--kind",
        "hyperbolic",
        "--p",
        "3",
        "--m",
        "4",
        "--methods",
        "latin,pds",
    ]);
    assert_eq!(v["minimal"]["latin_sufficient"]["verdict"], "minimal");
    assert_eq!(v["overall_minimal"], true);
}

#[test]
fn generator_matrix_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    json(&[
        "code",
        "--recipe",
        "table-2-row-1",
        "--methods",
        "pds",
        "--generator",
        path.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    assert!(rows.len() >= 6, "{text}");
}

#[test]
fn blocking_example_3_1() {
    let v = json(&["blocking", "--recipe", "example-3.1"]);
    assert_eq!(v["target"], "dbar");
    assert_eq!(v["cutting"], false);
    assert!(v["witness"].is_object());
}

#[test]
fn sss_table_2_row_1() {
    let v = json(&["sss", "--recipe", "table-2-row-1", "--x1-log", "0"]);
    assert_eq!(v["total"], 243);
    let v = json(&["sss", "--recipe", "table-2-row-1", "--x1", "in-D"]);
    assert_eq!(v["classification"], "democratic");
    let v = json(&["sss", "--recipe", "table-2-row-1", "--x1", "in-Dbar"]);
    assert_eq!(v["classification"], "dictatorial");
    assert_eq!(v["dictators_log"].as_array().unwrap().len(), 1);
    assert_eq!(v["spot_check"]["recovered"], v["spot_check"]["sampled"]);
}

#[test]
fn table_format_renders() {
    let out = run(&["pds", "--recipe", "example-3.1", "--format", "table"]);
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("theta1") && s.contains("204"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["code", "--recipe", "example-3.2-complement"][..],
        &["sss", "--recipe", "table-2-row-1", "--x1", "in-Dbar"][..],
    ] {
        let a = run(args);
        let b = run(args);
        let mut seq = args.to_vec();
        seq.extend(["--workers", "1"]);
        let c = run(&seq);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.stdout, c.stdout);
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&[
        "pds",
        "--recipe",
        "example-3.1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["certificate"]["k"], 204);
}
