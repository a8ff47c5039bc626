use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use domcore::formats::{format_graph, format_ideal, parse_input, Input};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domcore"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (v, out.status.code().expect("exit code"))
}

fn temp_file(name: &str, text: &str) -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    (dir, path)
}

#[test]
fn euler_of_the_triangle_is_two_both_ways() {
    let (v, code) = json(&["euler", data("triangle.graph").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["euler"]["enumeration"], 2);
    assert_eq!(v["euler"]["covers"], 2);
    assert_eq!(v["cov_at_minus_one"], "2");
}

#[test]
fn seven_variable_ideal_has_one_core_class() {
    let (v, code) = json(&["classify", "--all-resolutions", data("seven.ideal").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "spherical");
    assert_eq!(v["depth"], 2);
    let survey = &v["survey"];
    assert_eq!(survey["depths"], serde_json::json!([2]));
    assert_eq!(survey["cores"].as_array().unwrap().len(), 1);
    assert_eq!(survey["consistent"], true);
    assert!(survey["resolutions"].as_array().unwrap().len() >= 2);
}

#[test]
fn triangle_edge_ideal_is_its_own_core() {
    let (v, code) = json(&["classify", "--ideal", "edge", data("triangle.graph").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["resolution"]["steps"], serde_json::json!([]));
    assert_eq!(v["resolution"]["core"], serde_json::json!(["a b", "a c", "b c"]));
    assert_eq!(v["depth"], 0);
}

#[test]
fn forest_star_ideal_has_depth_beta1() {
    let tree = data("tree.graph");
    let (v, code) = json(&["classify", "--ideal", "star", tree.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "spherical");
    assert_eq!(v["simple"], true);
    let (inv, _) = json(&["invariants", tree.to_str().unwrap()]);
    assert_eq!(inv["invariants"]["beta1"], 4);
    assert_eq!(v["depth"], inv["invariants"]["beta1"]);
}

#[test]
fn empty_graph_report_is_a_full_simplex() {
    let (v, code) = json(&["report", data("empty.graph").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["analysis"]["verdict"], "conical");
    assert_eq!(v["analysis"]["faces"], 8);
    assert_eq!(v["analysis"]["homology"], serde_json::json!([]));
    assert_eq!(v["consistent"], true);
}

#[test]
fn six_cycle_report_is_a_wedge() {
    let (v, code) = json(&["report", data("c6.graph").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["unicyclic"]["class"], "wedge");
    assert_eq!(v["analysis"]["homology"][0]["rank"], 2);
}

#[test]
fn collapse_plan_is_verified() {
    for (file, ideal) in [("seven.ideal", "edge"), ("tree.graph", "star"), ("empty.graph", "edge")] {
        let (v, code) = json(&["collapse", "--ideal", ideal, data(file).to_str().unwrap()]);
        assert_eq!(code, 0, "{file}");
        assert_eq!(v["verification"]["valid"], true, "{file}");
        assert_eq!(v["plan"].as_array().unwrap().len(), v["verification"]["steps"].as_u64().unwrap() as usize);
    }
}

#[test]
fn output_is_deterministic() {
    let tree = data("tree.graph");
    let args = ["--json", "report", tree.to_str().unwrap()];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let hybrid = data("hybrid.ideal");
    let text = ["homology", hybrid.to_str().unwrap()];
    let out = run(&text);
    assert_eq!(out.stdout, run(&text).stdout);
    assert!(String::from_utf8_lossy(&out.stdout).contains("H2 = Z"));
}

#[test]
fn timing_is_opt_in() {
    let path = data("triangle.graph");
    let (plain, _) = json(&["euler", path.to_str().unwrap()]);
    assert!(plain.get("elapsed_ms").is_none());
    let (timed, _) = json(&["--timing", "euler", path.to_str().unwrap()]);
    assert!(timed["elapsed_ms"].is_u64());
}

#[test]
fn exit_codes() {
    let (_d1, unit) = temp_file("unit.ideal", "vars: x1 x2\n()\n");
    assert_eq!(run(&["classify", unit.to_str().unwrap()]).status.code(), Some(2));
    let (_d2, bad) = temp_file("bad.ideal", "vars: x1\nx2\n");
    let out = run(&["classify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(run(&["classify", "no/such/file.ideal"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", data("seven.ideal").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(
        run(&["--budget", "5", "report", data("tree.graph").to_str().unwrap()]).status.code(),
        Some(3)
    );
}

#[test]
fn inputs_without_extension_are_sniffed() {
    let (_d, path) = temp_file("square", "vars: x1 x2 x3 x4\nx1 x2\nx3 x4\n");
    let (v, code) = json(&["classify", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["input"]["kind"], "ideal");
    assert_eq!(v["depth"], 2);
    assert_eq!(v["simple"], true);
}

#[test]
fn corpus_round_trips() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let once = parse_input(&path, &text).unwrap();
        let printed = match &once {
            Input::Ideal(i) => format_ideal(i),
            Input::Graph(g) => format_graph(g),
        };
        assert_eq!(parse_input(&path, &printed).unwrap(), once, "{}", path.display());
    }
}
