mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use common::data;

fn arrlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrlab")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn path(name: &str) -> String {
    data(name).display().to_string()
}

#[test]
fn analyze_reports_are_byte_stable_and_carry_the_schema() {
    let first = arrlab(&["analyze", &path("qa.json")]);
    assert!(first.status.success());
    let second = arrlab(&["analyze", &path("qa.json")]);
    assert_eq!(first.stdout, second.stdout);
    let v = json_of(&first);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["weak_combinatorics"]["display"], "(13; 16, 6, 4, 2)");
    assert_eq!(v["syzygy"]["classification"], "Free");
    assert_eq!(v["syzygy"]["exponents"], serde_json::json!([6, 6]));
    assert!(v.get("timing_ms").is_none());
    let timed = json_of(&arrlab(&["analyze", &path("triangle.json"), "--timing"]));
    assert!(timed["timing_ms"].is_u64());
}

#[test]
fn text_format_and_skip_syzygy() {
    let out = arrlab(&["--format", "text", "analyze", &path("qb.json"), "--skip-syzygy"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(13; 16, 6, 4, 2)"), "{text}");
    let v = json_of(&arrlab(&["analyze", &path("qb.json"), "--skip-syzygy"]));
    assert!(v["syzygy"].is_null());
}

#[test]
fn input_errors_exit_2_with_a_tagged_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"label": "dup", "lines": [[["1"],["0"],["0"]], [["2"],["0"],["0"]], [["0"],["1"],["0"]]]}"#)
        .unwrap();
    let out = arrlab(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["error"]["exit_code"], 2);
    assert!(v["error"]["kind"].is_string());

    let missing = arrlab(&["analyze", "/nonexistent/arrangement.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert_eq!(json_of(&missing)["error"]["kind"], "Io");
}

#[test]
fn a_short_window_exits_4() {
    let out = arrlab(&["analyze", &path("qa.json"), "--max-degree", "5"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json_of(&out)["error"]["kind"], "CapExceeded");
}

#[test]
fn compare_flags_are_symmetric() {
    let ab = json_of(&arrlab(&["compare", &path("qa.json"), &path("qb.json")]));
    let ba = json_of(&arrlab(&["compare", &path("qb.json"), &path("qa.json")]));
    assert_eq!(ab["flags"], ba["flags"]);
    assert_eq!(ab["verdicts"], ba["verdicts"]);
    assert_eq!(ab["verdicts"]["ntc_witness"], true);
    assert_eq!(ab["flags"]["isomorphic_matroids"], false);
    assert_eq!(ab["a"]["label"], ba["b"]["label"]);
}

#[test]
fn batch_writes_one_report_per_arrangement() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["triangle.json", "qa.json"] {
        fs::copy(data(name), dir.path().join(name)).unwrap();
    }
    fs::write(dir.path().join("broken.json"), "{").unwrap();
    let out_dir = dir.path().join("reports");
    let out = arrlab(&["analyze", "--batch", dir.path().to_str().unwrap(), "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 3);
    assert_eq!(results.iter().filter(|r| r.get("error").is_some()).count(), 1);
    let mut written: Vec<String> =
        fs::read_dir(&out_dir).unwrap().map(|e| e.unwrap().file_name().to_string_lossy().into_owned()).collect();
    written.sort();
    assert_eq!(written, ["QA.json", "triangle.json"]);
    let report: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("QA.json")).unwrap()).unwrap();
    assert_eq!(report["syzygy"]["tjurina"], 108);
}

#[test]
fn matroid_subcommands() {
    let iso = json_of(&arrlab(&["matroid", "iso", &path("m1.json"), &path("m1_relabeled.json")]));
    assert_eq!(iso["isomorphic"], true);
    assert_eq!(iso["permutation"].as_array().unwrap().len(), 12);
    let valid = json_of(&arrlab(&["matroid", "validate", &path("m2.json")]));
    assert_eq!(valid["valid"], true);
    assert_eq!(valid["weak_combinatorics"], "(12; 21, 9, 3)");
    let f = json_of(&arrlab(&["matroid", "filters", "(10; 21, 1, 0, 0, 0, 1)"]));
    assert_eq!(f["characteristic_polynomial"]["chi0_roots"], serde_json::json!([4, 5]));
    assert_eq!(f["filters"]["multiplicity"], 7);
    let bad = arrlab(&["matroid", "charpoly", "(5; 3)"]);
    assert_eq!(bad.status.code(), Some(2));
    let from = json_of(&arrlab(&["matroid", "from-arrangement", &path("qa.json")]));
    assert_eq!(from["divisionally_free"], false);
}

#[test]
fn realize_writes_arrangements_that_analyze_back() {
    let dir = tempfile::tempdir().unwrap();
    let out = arrlab(&["realize", "m2", "--sample", "singular", "2", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 2);
    for p in points {
        assert_eq!(p["status"], "matroid-verified");
        assert_eq!(p["singular"], true);
        let file = p["file"].as_str().unwrap();
        assert!(Path::new(file).starts_with(dir.path()));
        let r = json_of(&arrlab(&["analyze", file]));
        assert_eq!(r["syzygy"]["exponents"], serde_json::json!([7, 7, 7]));
    }
    let inline = json_of(&arrlab(&["realize", "zacharias", "e=2"]));
    assert!(inline["points"][0]["arrangement"]["lines"].is_array());
    let excluded = arrlab(&["realize", "zacharias", "e=1"]);
    assert_eq!(excluded.status.code(), Some(2));
    assert_eq!(json_of(&excluded)["error"]["kind"], "ExcludedParameter");
}
