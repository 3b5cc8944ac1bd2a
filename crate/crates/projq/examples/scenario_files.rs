//! Driving the calculus from a JSON scenario file, the same machinery the
//! `projq` binary runs: declare states and events once, then list tasks.
//!
//! Run with: `cargo run --example scenario_files`

use projq::scenario::{render, run, ReportFormat, RunConfig, Scenario};

const SCENARIO: &str = r#"{
    "ambient_dim": 2,
    "states": {
        "psi":  [[1, 0], [0, 0]],
        "plus": [[1, 0], [1, 0]]
    },
    "events": {
        "up":   { "span": [[[1, 0], [0, 0]]] },
        "down": { "span": [[[0, 0], [1, 0]]] },
        "diag": { "span": [[[1, 0], [1, 0]]] }
    },
    "tasks": [
        { "kind": "born",         "state": "plus", "event": "up" },
        { "kind": "consecutive",  "state": "psi",  "events": ["diag", "down"] },
        { "kind": "conditional",  "state": "psi",  "given": "diag", "event": "down" },
        { "kind": "independence", "state": "psi",  "first": "diag", "second": "up" },
        { "kind": "interference", "state": "plus", "parts": ["up", "down"], "event": "diag" },
        { "kind": "geodesic",     "a": "psi",      "b": "plus" },
        { "kind": "sample",       "state": "psi",  "events": ["diag", "down"],
          "n": 50000, "seed": 7 }
    ]
}"#;

fn main() {
    let scenario = Scenario::from_json(SCENARIO).expect("scenario is schema-valid");
    let cfg = RunConfig::default();
    let reports = run(&scenario, &cfg).expect("all tasks run");

    println!("--- JSON lines ---");
    print!("{}", render(&reports, ReportFormat::Json));

    println!("\n--- text table ---");
    print!("{}", render(&reports, ReportFormat::Text));
}
