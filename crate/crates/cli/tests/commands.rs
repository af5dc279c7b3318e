use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn tolkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tolkit")).args(args).output().unwrap()
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = tolkit(args);
    let code = out.status.code().unwrap();
    let v =
        serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (code, v)
}

fn temp_scenario(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tolkit-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn bundled_scenario_passes_every_check() {
    let path = example("paper-sec4.json");
    let (code, v) = run_json(&["check", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert_eq!(v["schema_version"], 1);
    let subjects: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["subject"].as_str().unwrap())
        .collect();
    assert!(subjects.contains(&"reliability") && subjects.contains(&"topology"));
    assert!(subjects.iter().any(|s| s.starts_with("φ")));
}

#[test]
fn broken_gamma_fails_with_a_multiplicativity_witness() {
    let path = example("broken-gamma.json");
    let (code, v) = run_json(&["check", path.to_str().unwrap(), "--laws", "galois"]);
    assert_eq!(code, 1);
    let laws = v["reports"][0]["laws"].as_array().unwrap();
    let mult = laws.iter().find(|l| l["law"] == "gamma-multiplicative").unwrap();
    assert_eq!(mult["status"], "fail");
    assert!(mult["witness"]["inputs"].as_array().unwrap().len() >= 2);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(tolkit(&["check", "/nonexistent/scenario.json"]).status.code(), Some(2));
    assert_eq!(tolkit(&["frobnicate"]).status.code(), Some(2));
    let bad = temp_scenario(
        "bad.json",
        r#"{"schema_version": 1, "components": ["c1"], "grid_denominator": 0}"#,
    );
    assert_eq!(tolkit(&["check", bad.to_str().unwrap()]).status.code(), Some(2));
    let path = example("paper-sec4.json");
    let unknown = tolkit(&[
        "transform",
        path.to_str().unwrap(),
        "--from",
        "nope",
        "--to",
        "topology",
    ]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let path = example("paper-sec4.json");
    for args in [
        vec!["check", path.to_str().unwrap(), "--laws", "galois"],
        vec!["pipeline", path.to_str().unwrap()],
        vec!["hasse", path.to_str().unwrap(), "--lattice", "two-tag-options"],
    ] {
        assert_eq!(tolkit(&args).stdout, tolkit(&args).stdout, "{args:?}");
    }
}

#[test]
fn out_flag_writes_the_report() {
    let path = example("paper-sec4.json");
    let target = std::env::temp_dir().join(format!("tolkit-out-{}.dot", std::process::id()));
    let out = tolkit(&[
        "hasse",
        path.to_str().unwrap(),
        "--lattice",
        "one-tag-options",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let dot = std::fs::read_to_string(&target).unwrap();
    assert_eq!(dot.matches("[label=").count(), 4);
    assert_eq!(dot.matches(" -> ").count(), 4);
    std::fs::remove_file(target).unwrap();
}

#[test]
fn hasse_node_counts() {
    let path = example("paper-sec4.json");
    let p = path.to_str().unwrap();
    let count = |lattice: &str| {
        let out = tolkit(&["hasse", p, "--lattice", lattice]);
        String::from_utf8(out.stdout).unwrap().matches("[label=").count()
    };
    assert_eq!(count("two-tag-options"), 16);
    assert_eq!(count("one-tag-tag-options"), 5);
    assert_eq!(tolkit(&["hasse", p, "--lattice", "intervals"]).status.code(), Some(1));
}

#[test]
fn transform_between_formalisms() {
    let body = r#"{
        "schema_version": 1, "components": ["c1", "c2"], "grid_denominator": 4,
        "models": {
            "r": {"formalism": "reliability", "constraints": {"c1": ["1/2"], "c2": ["1/2", "3/4"]}},
            "t": {"formalism": "topology", "constraints": {"c1-c2": ["absent"]}},
            "empty": {"formalism": "topology", "constraints": {"c1-c2": []}}
        }
    }"#;
    let path = temp_scenario("transform.json", body);
    let p = path.to_str().unwrap();
    assert_eq!(
        tolkit(&["transform", p, "--from", "r", "--to", "topology"])
            .status
            .code(),
        Some(1)
    );
    let (code, v) = run_json(&["transform", p, "--from", "r", "--to", "topology", "--budget", "4096"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["status"], "unconstrained");
    let (_, v) = run_json(&["transform", p, "--from", "t", "--to", "reliability", "--no-verify"]);
    assert_eq!(v["result"]["status"], "unconstrained");
    assert_eq!(v["verified"], false);
    let (_, v) = run_json(&["transform", p, "--from", "empty", "--to", "topology", "--no-verify"]);
    assert_eq!(v["result"]["status"], "bottom");
    let (_, v) = run_json(&["transform", p, "--from", "r", "--to", "reliability", "--no-verify"]);
    assert_eq!(v["result"]["status"], "needs-selection");
    assert_eq!(
        v["result"]["box"]["constraints"]["c2"],
        serde_json::json!(["1/2", "3/4"])
    );
}

#[test]
fn pipeline_pins_a_two_valued_component() {
    let body = r#"{
        "schema_version": 1, "components": ["c1", "c2"], "grid_denominator": 2,
        "properties": {"reliability": {"c1": ["1/2", "1"]}},
        "pipeline": [
            {"op": "abstract", "formalism": "reliability"},
            {"op": "select", "formalism": "reliability"}
        ]
    }"#;
    let path = temp_scenario("pipeline.json", body);
    let (code, v) = run_json(&["pipeline", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["final"]["reliability"]["c1"], serde_json::json!(["1/2"]));
    assert_eq!(v["steps"][1]["strict"], true);
}

#[test]
fn explicit_selector_outside_the_box_is_a_contract_failure() {
    let body = r#"{
        "schema_version": 1, "components": ["c1", "c2"], "grid_denominator": 2,
        "properties": {"reliability": {"c1": ["1/2"]}},
        "selector": {"fixed": {"c1": "1"}},
        "pipeline": [{"op": "select", "formalism": "reliability"}]
    }"#;
    let path = temp_scenario("contract.json", body);
    let (code, v) = run_json(&["pipeline", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["step"], 0);
}

#[test]
fn empty_pipeline_and_select_on_bottom() {
    let path = temp_scenario(
        "empty.json",
        r#"{"schema_version": 1, "components": ["c1", "c2"], "grid_denominator": 2}"#,
    );
    let (code, v) = run_json(&["pipeline", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["initial"], v["final"]);

    let body = r#"{
        "schema_version": 1, "components": ["c1", "c2"], "grid_denominator": 2,
        "properties": {"topology": {"c1-c2": []}},
        "pipeline": [
            {"op": "abstract", "formalism": "topology"},
            {"op": "select", "formalism": "topology"}
        ]
    }"#;
    let path = temp_scenario("bottom.json", body);
    let (code, v) = run_json(&["pipeline", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["step"], 1);
    assert_eq!(v["steps"].as_array().unwrap().len(), 1);
}

#[test]
fn series_against_parallel() {
    let path = example("series-parallel.json");
    let p = path.to_str().unwrap();
    let (code, v) = run_json(&["consistency", p]);
    assert_eq!(code, 1);
    assert_eq!(v["inconsistent"], true);
    assert_eq!(v["conflicts"][0]["tag"], "a-c");
    let (code, v) = run_json(&["bound", p, "--source", "a", "--sink", "c"]);
    assert_eq!(code, 0);
    assert_eq!((v["min"].as_str(), v["max"].as_str()), (Some("1/4"), Some("5/8")));
    let (code, v) = run_json(&["pipeline", p]);
    assert_eq!(code, 1);
    assert_eq!(v["steps"][2]["max"], "1/4");
}

#[test]
fn bound_on_inconsistent_properties_fails() {
    let body = r#"{
        "schema_version": 1, "components": ["a", "b"], "grid_denominator": 2,
        "properties": {"reliability": {"a": []}}
    }"#;
    let path = temp_scenario("inconsistent.json", body);
    assert_eq!(
        tolkit(&["bound", path.to_str().unwrap(), "--source", "a", "--sink", "b"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn grid_flag_overrides_the_scenario() {
    let path = temp_scenario(
        "grid.json",
        r#"{"schema_version": 1, "components": ["c1", "c2"], "grid_denominator": 2,
            "lattices": {"boxes": {"kind": "boxes", "formalism": "reliability"}}}"#,
    );
    let p = path.to_str().unwrap();
    let nodes = |extra: &[&str]| {
        let mut args = vec!["hasse", p, "--lattice", "boxes"];
        args.extend_from_slice(extra);
        String::from_utf8(tolkit(&args).stdout)
            .unwrap()
            .matches("[label=")
            .count()
    };
    // (1 + 2^d)^2 boxes over two components.
    assert_eq!(nodes(&[]), 25);
    assert_eq!(
        tolkit(&["hasse", p, "--lattice", "boxes", "--grid", "3"]).status.code(),
        Some(1)
    );
}
