use std::process::{Command, Output};

use serde_json::Value;

fn polykernel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polykernel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is json")
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn trees_count_table() {
    let o = polykernel(&["trees", "count", "--dmax", "13"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], "polykernel/1");
    let last = v["rows"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["d"].as_u64(), Some(13));
    assert_eq!(last["trees"].as_u64(), Some(208012));
    assert_eq!(last["classes"].as_u64(), Some(983));
}

#[test]
fn trees_count_csv() {
    let o = polykernel(&["trees", "count", "--dmax", "5", "--format", "csv"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert_eq!(s, "d,trees,classes\n2,1,1\n3,2,1\n4,5,2\n5,14,3\n");
}

#[test]
fn trees_parse_ca2() {
    let o = polykernel(&["trees", "parse", "ca^2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["dimension"].as_u64(), Some(4));
    assert_eq!(v["root"]["type"], "c");
    assert_eq!(v["root"]["left"]["type"], "a");
    assert_eq!(v["root"]["right"]["type"], "a");
}

#[test]
fn trees_parse_error_names_position() {
    let o = polykernel(&["trees", "parse", "c a"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["error"]["kind"], "UnexpectedEnd");
    assert_eq!(v["error"]["position"].as_u64(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 3"));

    let o = polykernel(&["trees", "parse", "bax"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"]["kind"], "UnknownToken");
}

#[test]
fn trees_format_canonical() {
    let v = json(&polykernel(&["trees", "format", "b b a"]));
    assert_eq!(v["canonical"], "b^2a");
}

#[test]
fn expand_chebyshev_example() {
    let o = polykernel(&[
        "expand",
        "chebyshev",
        "--nu",
        "1",
        "--z",
        "3",
        "--x",
        "0",
        "--tol",
        "1e-10",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!((f(&v["value"]) - 1.0 / 3.0).abs() < 1e-10);
    assert!(f(&v["rel_err"]) < 1e-10);
    assert!(v.get("per_term").is_none());
}

#[test]
fn expand_multipole_example() {
    let v = json(&polykernel(&[
        "expand",
        "multipole",
        "--d",
        "3",
        "--nu",
        "-1",
        "--r",
        "1",
        "--rp",
        "2",
        "--cosg",
        "0.3",
    ]));
    assert!((f(&v["value"]) - 3.8f64.powf(-0.5)).abs() < 1e-8);
    assert!((f(&v["direct_oracle"]) - 3.8f64.powf(-0.5)).abs() < 1e-15);
}

#[test]
fn expand_azimuthal_exclusion() {
    let o = polykernel(&["expand", "azimuthal", "--nu", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["error"]["kind"], "ExclusionSet");
}

#[test]
fn expand_trace_and_csv() {
    let v = json(&polykernel(&[
        "expand",
        "fourier-int",
        "--p",
        "4",
        "--z",
        "1.5",
        "--x",
        "0.2",
        "--trace",
    ]));
    assert_eq!(v["per_term"].as_array().unwrap().len(), 5);
    assert_eq!(v["terms_used"].as_u64(), Some(5));

    let o = polykernel(&["expand", "fourier-neg", "--q", "2", "--format", "csv"]);
    let s = String::from_utf8(o.stdout).unwrap();
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("level,index,term,partial,rel_err"));
    let last: Vec<f64> = s
        .lines()
        .last()
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    assert!(last[4] < 1e-8);
}

#[test]
fn expand_nonconvergence_exit_code() {
    let o = polykernel(&[
        "expand",
        "jacobi",
        "--nu",
        "0.5",
        "--z",
        "1.01",
        "--x",
        "0.9",
        "--max-terms",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn floats_have_seventeen_significant_digits() {
    let o = polykernel(&["expand", "chebyshev", "--nu", "1", "--z", "3", "--x", "0"]);
    let s = String::from_utf8(o.stdout).unwrap();
    let line = s.lines().find(|l| l.contains("\"value\"")).unwrap();
    let mantissa = line
        .split(':')
        .nth(1)
        .unwrap()
        .trim()
        .trim_end_matches(',')
        .split('e')
        .next()
        .unwrap()
        .to_string();
    assert_eq!(mantissa.chars().filter(|c| c.is_ascii_digit()).count(), 17);
}

#[test]
fn verify_examples() {
    let o = polykernel(&[
        "verify", "C4.3", "--nu", "-1", "--m", "0", "--r", "1", "--rp", "2", "--theta", "1.0472", "--thetap", "2.0944",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["report"]["status"], "pass");
    assert_eq!(v["report"]["label"], "C4.3");

    let o = polykernel(&["verify", "T4.2", "--q", "3", "--caps", "12", "--tol", "1e-3"]);
    assert_eq!(o.status.code(), Some(0));

    let o = polykernel(&["verify", "C4.5", "--nu", "2", "--m", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_truncation_and_input_errors() {
    assert_eq!(polykernel(&["verify", "C4.4", "--caps", "3"]).status.code(), Some(5));
    assert_eq!(polykernel(&["verify", "X9.9"]).status.code(), Some(2));
    assert_eq!(polykernel(&["verify", "C4.3", "--theta", "1,2"]).status.code(), Some(2));
    assert_eq!(polykernel(&["verify", "C4.3", "--rp", "1"]).status.code(), Some(2));
    assert_eq!(polykernel(&["verify", "T4.1", "--reduction"]).status.code(), Some(2));
    assert_eq!(polykernel(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_reduction_and_trace() {
    let o = polykernel(&["verify", "C4.4", "--reduction", "--tol", "1e-8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["report"]["label"], "C4.4/nu=-2");

    let o = polykernel(&["verify", "C4.3", "--caps", "30", "--format", "csv"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.starts_with("level,index,term,partial,rel_err\n"));
    assert!(s.lines().count() > 10);
}

#[test]
fn suite_csv_is_ordered_and_deterministic() {
    let a = polykernel(&["verify", "--suite", "--seed", "4"]);
    let b = polykernel(&["verify", "--suite", "--seed", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let s = String::from_utf8(a.stdout).unwrap();
    let idx: Vec<usize> = s
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(idx, (0..idx.len()).collect::<Vec<_>>());
    assert!(s.lines().skip(1).all(|l| l.ends_with(",pass")));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["verify", "T4.1", "--d", "4", "--nu", "-2.5", "--m", "1", "--trace"];
    assert_eq!(polykernel(&args).stdout, polykernel(&args).stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = polykernel(&["trees", "classes", "--d", "8", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["classes"].as_u64(), Some(23));
    assert_eq!(v["trees"].as_u64(), Some(429));
}
