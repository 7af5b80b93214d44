//! End-to-end tests of the scenario runner: each bundled scenario must
//! reproduce its frozen report byte for byte, and the error paths must map
//! to the documented exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scenario_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(format!("{name}.json"))
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.report.json"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superalg-cli"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_scenario(name: &str, extra: &[&str]) -> Output {
    let input = scenario_path(name);
    let mut args = vec!["--input", input.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

const BUNDLED: [&str; 4] = [
    "block-model-p3",
    "divided-power-dual-p3",
    "mixed-solvable-p3",
    "truncated-times-exterior-p3",
];

#[test]
fn bundled_scenarios_match_their_golden_reports() {
    for name in BUNDLED {
        let out = run_scenario(name, &[]);
        assert!(
            out.status.success(),
            "{name} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let golden = std::fs::read(golden_path(name)).expect("golden report exists");
        assert_eq!(
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&golden),
            "{name} diverged from its golden report"
        );
    }
}

#[test]
fn reports_are_byte_deterministic() {
    let a = run_scenario("mixed-solvable-p3", &[]);
    let b = run_scenario("mixed-solvable-p3", &[]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_override_is_reflected_in_the_report() {
    let out = run_scenario("block-model-p3", &["--seed", "7"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["scenario"]["seed"], 7);
}

#[test]
fn text_format_renders_every_task() {
    let out = run_scenario("divided-power-dual-p3", &["--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("scenario divided-power-dual-p3"));
    assert!(text.contains("[5] is_nakayama dp-dual"));
    assert!(text.trim_end().ends_with("result: ok (6 tasks)"));
}

#[test]
fn dot_files_are_written_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_scenario(
        "block-model-p3",
        &["--dot-out", dir.path().to_str().unwrap()],
    );
    assert!(out.status.success());
    let ar = std::fs::read_to_string(dir.path().join("05-B-ar_quiver.dot")).unwrap();
    assert_eq!(ar.matches("[label=\"(").count(), 15);
    assert_eq!(ar.matches("style=dashed").count(), 15);
    let ext = std::fs::read_to_string(dir.path().join("03-B-ext_quiver.dot")).unwrap();
    assert_eq!(ext.matches("->").count(), 3);
}

#[test]
fn timings_are_opt_in() {
    let plain = run_scenario("divided-power-dual-p3", &[]);
    assert!(!String::from_utf8_lossy(&plain.stdout).contains("millis"));
    let timed = run_scenario("divided-power-dual-p3", &["--timings"]);
    let report: serde_json::Value = serde_json::from_slice(&timed.stdout).unwrap();
    assert!(report["total_millis"].is_number());
    assert!(report["tasks"][0]["millis"].is_number());
}

#[test]
fn strict_prime_rejects_small_primes() {
    let out = run_scenario("block-model-p3", &["--strict-prime"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("strict-prime"));
}

#[test]
fn an_empty_task_list_is_a_valid_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    std::fs::write(
        &path,
        r#"{"schema": "scenario/v1", "name": "empty", "prime": 7}"#,
    )
    .unwrap();
    let out = run(&["--input", path.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["ok"], true);
    assert_eq!(report["tasks"].as_array().unwrap().len(), 0);
    assert_eq!(report["warnings"].as_array().unwrap().len(), 0);
}

#[test]
fn parse_and_validation_failures_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("broken.json", "{ not json"),
        (
            "bad-schema.json",
            r#"{"schema": "scenario/v0", "name": "x", "prime": 3}"#,
        ),
        (
            "bad-prime.json",
            r#"{"schema": "scenario/v1", "name": "x", "prime": 9}"#,
        ),
        (
            "dangling.json",
            r#"{"schema": "scenario/v1", "name": "x", "prime": 3,
                "objects": [{"name": "a", "kind": "dual", "of": "ghost"}]}"#,
        ),
        (
            "cycle.json",
            r#"{"schema": "scenario/v1", "name": "x", "prime": 3,
                "objects": [{"name": "a", "kind": "dual", "of": "b"},
                            {"name": "b", "kind": "dual", "of": "a"}]}"#,
        ),
        (
            "bad-task-target.json",
            r#"{"schema": "scenario/v1", "name": "x", "prime": 3,
                "tasks": [{"op": "radical", "target": "ghost"}]}"#,
        ),
    ];
    for (file, body) in cases {
        let path = dir.path().join(file);
        std::fs::write(&path, body).unwrap();
        let out = run(&["--input", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{file} should exit 2");
        assert!(!out.stderr.is_empty(), "{file} should explain itself");
    }
    let out = run(&["--input", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn task_failures_exit_1_and_the_run_continues() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("failing.json");
    std::fs::write(
        &path,
        r#"{
            "schema": "scenario/v1", "name": "failing", "prime": 5,
            "objects": [{"name": "m", "kind": "truncated_polynomial", "n": 5}],
            "tasks": [
                {"op": "no_such_op", "target": "m"},
                {"op": "radical", "target": "m"}
            ]
        }"#,
    )
    .unwrap();
    let out = run(&["--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["ok"], false);
    assert_eq!(report["tasks"][0]["status"], "error");
    assert_eq!(report["tasks"][1]["status"], "ok");
    assert_eq!(report["tasks"][1]["result"]["dim"], 4);
}

#[test]
fn object_build_failures_poison_only_their_tasks() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("poison.json");
    // the grading is not multiplicative, so the smash cannot be built
    std::fs::write(
        &path,
        r#"{
            "schema": "scenario/v1", "name": "poison", "prime": 3,
            "objects": [
                {"name": "jets", "kind": "truncated_polynomial", "n": 4},
                {"name": "bad", "kind": "smash_function_algebra",
                 "of": "jets", "modulus": 2, "grading": [0, 1, 1, 0]}
            ],
            "tasks": [
                {"op": "radical", "target": "bad"},
                {"op": "radical", "target": "jets"}
            ]
        }"#,
    )
    .unwrap();
    let out = run(&["--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["objects"][1]["status"], "error");
    assert_eq!(report["tasks"][0]["status"], "error");
    assert_eq!(report["tasks"][1]["result"]["dim"], 3);
}
