//! End-to-end checks of the `projq` binary: exit codes, deterministic
//! output, and report values that round-trip against direct library calls.

use std::io::Write;
use std::process::Command;

use projq::events::{basis_vector, Event, StatePoint};
use projq::linalg::{C64, CVector, DEFAULT_TOL};
use projq::prob::{born, independence};
use projq::scenario::fmt_sig15;

fn write_scenario(contents: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(contents.as_bytes()).unwrap();
    file.flush().unwrap();
    file
}

fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_projq"))
        .args(args)
        .output()
        .expect("binary runs")
}

const SCENARIO: &str = r#"{
    "ambient_dim": 2,
    "states": {
        "psi": [[1, 0], [0, 0]],
        "plus": [[1, 0], [1, 0]]
    },
    "events": {
        "up": { "span": [[[1, 0], [0, 0]]] },
        "down": { "span": [[[0, 0], [1, 0]]] },
        "diag": { "span": [[[1, 0], [1, 0]]] }
    },
    "tasks": [
        { "kind": "born", "state": "plus", "event": "up" },
        { "kind": "consecutive", "state": "psi", "events": ["diag", "down"] },
        { "kind": "conditional", "state": "psi", "given": "diag", "event": "down" },
        { "kind": "independence", "state": "psi", "first": "diag", "second": "up" },
        { "kind": "geodesic", "a": "psi", "b": "plus" },
        { "kind": "sample", "state": "psi", "events": ["diag", "down"], "n": 20000, "seed": 13 }
    ]
}"#;

#[test]
fn json_reports_in_task_order_with_exit_zero() {
    let file = write_scenario(SCENARIO);
    let out = run_cli(&[file.path().to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 6);
    for (i, line) in lines.iter().enumerate() {
        let value: serde_json::Value = serde_json::from_str(line).expect("valid JSON line");
        assert_eq!(value["task"], i as u64);
    }
    assert!(lines[0].contains("\"value\":5.00000000000000e-1"));
    assert!(lines[1].contains("\"value\":2.50000000000000e-1"));
    assert!(lines[2].contains("\"value\":5.00000000000000e-1"));
}

#[test]
fn output_is_byte_identical_across_processes() {
    let file = write_scenario(SCENARIO);
    let path = file.path().to_str().unwrap();
    let a = run_cli(&[path, "--seed", "4"]);
    let b = run_cli(&[path, "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_values_round_trip_against_library_calls() {
    let file = write_scenario(SCENARIO);
    let out = run_cli(&[file.path().to_str().unwrap()]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();

    let psi = StatePoint::new(&basis_vector(2, 0), DEFAULT_TOL).unwrap();
    let plus_state = StatePoint::new(
        &CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]),
        DEFAULT_TOL,
    )
    .unwrap();
    let up = Event::ray(&basis_vector(2, 0), DEFAULT_TOL).unwrap();
    let diag = plus_state.ray_event();

    // Byte-level comparison against the library values run through the
    // same formatter.
    assert!(lines[0].contains(&format!(
        "\"value\":{}",
        fmt_sig15(born(&plus_state, &up).unwrap())
    )));

    let check = independence(&psi, &diag, &up, DEFAULT_TOL).unwrap();
    let indep_line: serde_json::Value = serde_json::from_str(lines[3]).unwrap();
    assert_eq!(indep_line["independent"], check.independent);
    assert!(lines[3].contains(&format!("\"lhs\":{}", fmt_sig15(check.lhs))));
    assert!(lines[3].contains(&format!("\"rhs\":{}", fmt_sig15(check.rhs))));
}

#[test]
fn text_format_renders_a_table() {
    let file = write_scenario(SCENARIO);
    let out = run_cli(&[file.path().to_str().unwrap(), "--format", "text"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("task"));
    assert_eq!(stdout.lines().count(), 7);
}

#[test]
fn schema_errors_exit_one() {
    // Unknown task kind.
    let bad = SCENARIO.replace("\"kind\": \"born\"", "\"kind\": \"bogus\"");
    let file = write_scenario(&bad);
    let out = run_cli(&[file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("task 0"));
    assert!(stderr.contains("unknown task kind"));

    // Undefined name.
    let bad = SCENARIO.replace("\"state\": \"plus\"", "\"state\": \"missing\"");
    let file = write_scenario(&bad);
    let out = run_cli(&[file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    // Invalid JSON.
    let file = write_scenario("{ not json");
    let out = run_cli(&[file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    // Missing file.
    let out = run_cli(&["/nonexistent/scenario.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn numerical_precondition_failures_exit_two() {
    // A declared projector that is not a projection.
    let bad = r#"{
        "ambient_dim": 2,
        "events": { "half": { "projector": [[[0.5, 0], [0, 0]], [[0, 0], [0.7, 0]]] } },
        "tasks": [ { "kind": "consecutive_events", "events": ["half"] } ]
    }"#;
    let file = write_scenario(bad);
    let out = run_cli(&[file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // A non-contraction propagator.
    let bad = r#"{
        "ambient_dim": 2,
        "events": { "up": { "span": [[[1, 0], [0, 0]]] } },
        "propagators": { "big": [[[3, 0], [0, 0]], [[0, 0], [3, 0]]] },
        "tasks": [ { "kind": "timed", "initial": "up",
                     "steps": [ { "propagator": "big", "event": "up" } ] } ]
    }"#;
    let file = write_scenario(bad);
    let out = run_cli(&[file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("contraction"));

    // Collapse onto an annihilating event.
    let bad = r#"{
        "ambient_dim": 2,
        "states": { "psi": [[1, 0], [0, 0]] },
        "events": { "down": { "span": [[[0, 0], [1, 0]]] } },
        "tasks": [ { "kind": "collapse", "state": "psi", "event": "down" } ]
    }"#;
    let file = write_scenario(bad);
    let out = run_cli(&[file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("task 0"));
}

#[test]
fn tolerance_flag_changes_the_conditional_branch() {
    // With a huge tolerance the condition probability 0.5 falls below the
    // cut and the zero branch fires.
    let scenario = r#"{
        "ambient_dim": 2,
        "states": { "psi": [[1, 0], [0, 0]] },
        "events": { "diag": { "span": [[[1, 0], [1, 0]]] } },
        "tasks": [ { "kind": "conditional", "state": "psi", "given": "diag", "event": "diag" } ]
    }"#;
    let file = write_scenario(scenario);
    let path = file.path().to_str().unwrap();

    let normal = run_cli(&[path]);
    let normal_out = String::from_utf8(normal.stdout).unwrap();
    assert!(normal_out.contains("\"value\":1.00000000000000e0"));

    let loose = run_cli(&[path, "--tol", "0.9"]);
    let loose_out = String::from_utf8(loose.stdout).unwrap();
    assert!(loose_out.contains("\"value\":0.00000000000000e0"));
}
