//! Integration tests for problem ingestion, report emission and the binary's
//! exit-code contract.

use std::process::Command;

use greyrank_cli::{
    emit_report, parse_problem_str, run_pipeline, ProblemFile, ReportFormat,
    EXAMPLE_PROBLEM_JSON,
};

fn example_problem() -> ProblemFile {
    parse_problem_str(EXAMPLE_PROBLEM_JSON, "fixture").unwrap()
}

fn small_problem(theta_pos: f64, theta_neg: f64) -> ProblemFile {
    let text = serde_json::json!({
        "schema": 1,
        "attributes": [
            {"name": "G1", "kind": "effect"},
            {"name": "G2", "kind": "cost"}
        ],
        "plans": [
            {"name": "A1", "values": [[1.0, 2.0], [2.0, 3.0]]},
            {"name": "A2", "values": [[3.0, 4.0], [1.0, 2.0]]}
        ],
        "experts": [[[1.0, 2.0], [0.5, 1.0]]],
        "preference": [[0.2, 0.4], [0.5, 0.9]],
        "params": {"theta_pos": theta_pos, "theta_neg": theta_neg}
    })
    .to_string();
    parse_problem_str(&text, "test").unwrap()
}

#[test]
fn fixture_reproduces_reference_order() {
    let report = run_pipeline(&example_problem()).unwrap();
    assert_eq!(report.final_order, ["A5", "A4", "A2", "A1", "A3"]);
    assert_eq!(report.final_ranks, vec![4, 3, 5, 2, 1]);
}

#[test]
fn json_report_round_trips_and_is_deterministic() {
    let problem = example_problem();
    let a = emit_report(&run_pipeline(&problem).unwrap(), ReportFormat::Json);
    let b = emit_report(&run_pipeline(&problem).unwrap(), ReportFormat::Json);
    assert_eq!(a, b, "two runs must emit byte-identical JSON");

    let value: serde_json::Value = serde_json::from_str(&a).unwrap();
    // The echoed problem section re-parses to an equivalent problem file.
    let echoed: ProblemFile =
        serde_json::from_value(value.get("problem").unwrap().clone()).unwrap();
    assert_eq!(echoed, problem);
    // And re-running on the echoed inputs reproduces the report bit-identically.
    let again = emit_report(&run_pipeline(&echoed).unwrap(), ReportFormat::Json);
    assert_eq!(a, again);
}

#[test]
fn every_effective_parameter_appears_in_the_report() {
    let report = run_pipeline(&example_problem()).unwrap();
    let json = emit_report(&report, ReportFormat::Json);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    let params = &value["problem"]["params"];
    for key in [
        "rho",
        "theta_pos",
        "theta_neg",
        "lambda",
        "gamma_mode",
        "method_weights",
        "weight_fusion",
    ] {
        assert!(!params[key].is_null(), "missing effective parameter {key}");
    }
    for method in value["methods"].as_array().unwrap().iter().skip(1) {
        assert!(!method["params"]["rho"].is_null());
    }
}

#[test]
fn oversized_thetas_are_normalized_and_traced() {
    let problem = small_problem(0.6, 0.6);
    let report = run_pipeline(&problem).unwrap();
    let approach = &report.methods[1];
    assert_eq!(approach.params.theta_pos, Some(0.5));
    assert_eq!(approach.params.theta_neg, Some(0.5));
    assert!(report.trace.iter().any(|t| t.contains("normalized")));
}

#[test]
fn clean_run_reports_no_fallbacks() {
    let report = run_pipeline(&small_problem(0.5, 0.5)).unwrap();
    assert!(report.trace.is_empty(), "unexpected trace: {:?}", report.trace);
    let table = emit_report(&report, ReportFormat::Table);
    assert!(table.contains("no fallbacks fired"));
}

#[test]
fn missing_preference_still_ranks() {
    let mut problem = small_problem(0.5, 0.5);
    problem.preference = None;
    let report = run_pipeline(&problem).unwrap();
    assert_eq!(report.final_ranks.len(), 2);
    assert!(report.trace.iter().any(|t| t.contains("no preference")));
}

#[test]
fn degenerate_problem_maps_to_exit_code_two() {
    let text = serde_json::json!({
        "schema": 1,
        "attributes": [
            {"name": "G1", "kind": "effect"},
            {"name": "G2", "kind": "effect"}
        ],
        "plans": [
            {"name": "A1", "values": [[1.0, 2.0], [1.0, 2.0]]},
            {"name": "A2", "values": [[1.0, 2.0], [1.0, 2.0]]}
        ],
        "experts": [[[1.0, 2.0], [0.5, 1.0]]]
    })
    .to_string();
    let problem = parse_problem_str(&text, "test").unwrap();
    let err = run_pipeline(&problem).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

// Binary-level checks.

fn greyrank() -> Command {
    Command::new(env!("CARGO_BIN_EXE_greyrank"))
}

fn fixture_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/worked_example.json")
}

#[test]
fn binary_ranks_fixture_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let output = greyrank()
        .args(["rank"])
        .arg(fixture_path())
        .arg("--report")
        .arg(&out)
        .output()
        .unwrap();
    assert!(output.status.success(), "{output:?}");
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("A5 > A4 > A2 > A1 > A3"), "{stdout}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["final_ranks"], serde_json::json!([4, 3, 5, 2, 1]));
}

#[test]
fn binary_exit_codes() {
    // Validation failure: malformed JSON.
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    let output = greyrank().args(["rank"]).arg(&bad).output().unwrap();
    assert_eq!(output.status.code(), Some(1));

    // Degenerate problem: identical plans.
    let degenerate = dir.path().join("degenerate.json");
    std::fs::write(
        &degenerate,
        serde_json::json!({
            "schema": 1,
            "attributes": [
                {"name": "G1", "kind": "effect"},
                {"name": "G2", "kind": "effect"}
            ],
            "plans": [
                {"name": "A1", "values": [[1.0, 2.0], [1.0, 2.0]]},
                {"name": "A2", "values": [[1.0, 2.0], [1.0, 2.0]]}
            ],
            "experts": [[[1.0, 2.0], [0.5, 1.0]]]
        })
        .to_string(),
    )
    .unwrap();
    let output = greyrank().args(["rank"]).arg(&degenerate).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn binary_parameter_overrides_change_the_report() {
    let output = greyrank()
        .args(["rank", "--format", "json", "--theta-pos", "0.7", "--theta-neg", "0.3"])
        .arg(fixture_path())
        .output()
        .unwrap();
    assert!(output.status.success());
    let report: serde_json::Value =
        serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["methods"][1]["params"]["theta_pos"], serde_json::json!(0.7));
}

#[test]
fn binary_verify_example_passes() {
    let output = greyrank().args(["rank", "--verify-example"]).output().unwrap();
    assert!(output.status.success(), "{output:?}");
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("Borda fusion  rank match"), "{stdout}");
}
