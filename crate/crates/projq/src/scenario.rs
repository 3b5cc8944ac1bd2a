//! Scenario files and their execution.
//!
//! A scenario is a JSON document declaring an ambient dimension, named
//! states, events, and propagators, and an ordered task list. Complex
//! entries are `[re, im]` pairs; matrices are lists of columns. Running a
//! scenario produces one report per task, serialized as JSON lines or an
//! aligned text table with numbers at 15 significant digits, so identical
//! inputs give byte-identical output.
//!
//! ```json
//! {
//!   "ambient_dim": 2,
//!   "states": { "psi": [[1, 0], [0, 0]] },
//!   "events": {
//!     "plus": { "span": [[[1, 0], [1, 0]]] },
//!     "up":   { "projector": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]] }
//!   },
//!   "propagators": { "u": [[[0, 0], [1, 0]], [[-1, 0], [0, 0]]] },
//!   "tasks": [ { "kind": "born", "state": "psi", "event": "plus" } ]
//! }
//! ```
//!
//! Task kinds: `born`, `consecutive`, `conditional`, `collapse`,
//! `independence`, `consecutive_events`, `timed`, `interference`,
//! `amplitude`, `amplitude_via_symbol`, `geodesic`, `observable_eval`,
//! `support`, `density_prob`, `sample`.
//!
//! Exit discipline for the binary: 0 on success, 1 on schema errors
//! (unreadable/invalid JSON, unknown task kind, undefined name, wrong
//! dimensions), 2 on numerical precondition failures (non-projector
//! matrix, non-contraction propagator, annihilated state, and the like).

use std::collections::BTreeMap;

use serde::Deserialize;
use thiserror::Error;

use crate::amplitude::{amplitude, amplitude_via_symbol, PointSequence};
use crate::error::Error as MathError;
use crate::events::{Event, StatePoint, Subspace};
use crate::linalg::{C64, CMatrix, CVector, DEFAULT_TOL};
use crate::observable::{
    prob_density, BorelQuery, DensityAtom, GeometricDensityMatrix, GeometricObservable,
    ObservableAtom,
};
use crate::prob::{
    born, collapse, conditional, consecutive, consecutive_events, geodesic_distance,
    independence, interference, timed_consecutive, EventSequence, TimedSequence,
};
use crate::sampler::estimate;

/// Errors from loading or running a scenario, split by exit code.
#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("schema error: {0}")]
    Schema(String),

    #[error("task {task} ({kind}): {message}")]
    TaskSchema {
        task: usize,
        kind: String,
        message: String,
    },

    #[error("definition \"{name}\": {source}")]
    Definition {
        name: String,
        #[source]
        source: MathError,
    },

    #[error("task {task} ({kind}): {source}")]
    Numerical {
        task: usize,
        kind: String,
        #[source]
        source: MathError,
    },
}

impl ScenarioError {
    /// Process exit code this error maps to: 1 for schema problems,
    /// 2 for numerical precondition failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            ScenarioError::Schema(_) | ScenarioError::TaskSchema { .. } => 1,
            ScenarioError::Definition { .. } | ScenarioError::Numerical { .. } => 2,
        }
    }
}

/// Report output format.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

/// Execution settings: the global tolerance, the output format, and the
/// default seed for `sample` tasks.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub tol: f64,
    pub format: ReportFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            format: ReportFormat::Json,
            seed: 0,
        }
    }
}

/// A schema-validated scenario: every task references defined names and
/// all declared objects have consistent dimensions.
#[derive(Debug)]
pub struct Scenario {
    ambient_dim: usize,
    states: BTreeMap<String, CVector>,
    events: BTreeMap<String, EventDef>,
    propagators: BTreeMap<String, CMatrix>,
    tasks: Vec<Task>,
}

#[derive(Debug)]
enum EventDef {
    Span(Vec<CVector>),
    Projector(CMatrix),
}

#[derive(Debug)]
enum Task {
    Born { state: String, event: String },
    Consecutive { state: String, events: Vec<String> },
    Conditional { state: String, given: String, event: String },
    Collapse { state: String, event: String },
    Independence { state: String, first: String, second: String },
    ConsecutiveEvents { events: Vec<String> },
    Timed { initial: String, steps: Vec<(String, String)> },
    Interference { state: String, parts: Vec<String>, event: String },
    Amplitude { points: Vec<String> },
    AmplitudeViaSymbol { points: Vec<String> },
    Geodesic { a: String, b: String },
    ObservableEval { atoms: Vec<(f64, String)>, query: BorelQuery },
    Support { atoms: Vec<(f64, String)> },
    DensityProb { atoms: Vec<(f64, String)>, event: String },
    Sample { state: String, events: Vec<String>, n: u64, seed: Option<u64> },
}

impl Task {
    fn kind(&self) -> &'static str {
        match self {
            Task::Born { .. } => "born",
            Task::Consecutive { .. } => "consecutive",
            Task::Conditional { .. } => "conditional",
            Task::Collapse { .. } => "collapse",
            Task::Independence { .. } => "independence",
            Task::ConsecutiveEvents { .. } => "consecutive_events",
            Task::Timed { .. } => "timed",
            Task::Interference { .. } => "interference",
            Task::Amplitude { .. } => "amplitude",
            Task::AmplitudeViaSymbol { .. } => "amplitude_via_symbol",
            Task::Geodesic { .. } => "geodesic",
            Task::ObservableEval { .. } => "observable_eval",
            Task::Support { .. } => "support",
            Task::DensityProb { .. } => "density_prob",
            Task::Sample { .. } => "sample",
        }
    }
}

// Raw serde shapes for the declaration section.
#[derive(Deserialize)]
struct RawScenario {
    ambient_dim: usize,
    #[serde(default)]
    states: BTreeMap<String, Vec<[f64; 2]>>,
    #[serde(default)]
    events: BTreeMap<String, RawEventDef>,
    #[serde(default)]
    propagators: BTreeMap<String, Vec<Vec<[f64; 2]>>>,
    #[serde(default)]
    tasks: Vec<serde_json::Value>,
}

#[derive(Deserialize)]
enum RawEventDef {
    #[serde(rename = "span")]
    Span(Vec<Vec<[f64; 2]>>),
    #[serde(rename = "projector")]
    Projector(Vec<Vec<[f64; 2]>>),
}

fn to_vector(entries: &[[f64; 2]]) -> CVector {
    CVector::from_iterator(entries.len(), entries.iter().map(|&[re, im]| C64::new(re, im)))
}

fn to_matrix(columns: &[Vec<[f64; 2]>], dim: usize, what: &str) -> Result<CMatrix, ScenarioError> {
    let mut m = CMatrix::zeros(dim, columns.len());
    for (j, col) in columns.iter().enumerate() {
        if col.len() != dim {
            return Err(ScenarioError::Schema(format!(
                "{what}: column {j} has {} entries, expected {dim}",
                col.len()
            )));
        }
        for (i, &[re, im]) in col.iter().enumerate() {
            m[(i, j)] = C64::new(re, im);
        }
    }
    Ok(m)
}

impl Scenario {
    /// Parse and schema-validate a scenario document. Numerical validation
    /// of the declared objects happens in [`run`], under the run tolerance.
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let raw: RawScenario =
            serde_json::from_str(text).map_err(|e| ScenarioError::Schema(e.to_string()))?;
        if raw.ambient_dim == 0 {
            return Err(ScenarioError::Schema("ambient_dim must be positive".into()));
        }
        let dim = raw.ambient_dim;

        let mut states = BTreeMap::new();
        for (name, entries) in &raw.states {
            if entries.len() != dim {
                return Err(ScenarioError::Schema(format!(
                    "state \"{name}\" has {} entries, expected {dim}",
                    entries.len()
                )));
            }
            states.insert(name.clone(), to_vector(entries));
        }

        let mut events = BTreeMap::new();
        for (name, def) in &raw.events {
            let parsed = match def {
                RawEventDef::Span(vectors) => {
                    let mut out = Vec::with_capacity(vectors.len());
                    for (k, v) in vectors.iter().enumerate() {
                        if v.len() != dim {
                            return Err(ScenarioError::Schema(format!(
                                "event \"{name}\": spanning vector {k} has {} entries, expected {dim}",
                                v.len()
                            )));
                        }
                        out.push(to_vector(v));
                    }
                    EventDef::Span(out)
                }
                RawEventDef::Projector(columns) => {
                    if columns.len() != dim {
                        return Err(ScenarioError::Schema(format!(
                            "event \"{name}\": projector has {} columns, expected {dim}",
                            columns.len()
                        )));
                    }
                    EventDef::Projector(to_matrix(columns, dim, &format!("event \"{name}\""))?)
                }
            };
            events.insert(name.clone(), parsed);
        }

        let mut propagators = BTreeMap::new();
        for (name, columns) in &raw.propagators {
            if columns.len() != dim {
                return Err(ScenarioError::Schema(format!(
                    "propagator \"{name}\" has {} columns, expected {dim}",
                    columns.len()
                )));
            }
            propagators.insert(
                name.clone(),
                to_matrix(columns, dim, &format!("propagator \"{name}\""))?,
            );
        }

        let mut scenario = Scenario {
            ambient_dim: dim,
            states,
            events,
            propagators,
            tasks: Vec::new(),
        };
        for (index, value) in raw.tasks.iter().enumerate() {
            let task = scenario.parse_task(index, value)?;
            scenario.tasks.push(task);
        }
        Ok(scenario)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn task_count(&self) -> usize {
        self.tasks.len()
    }

    fn parse_task(&self, index: usize, value: &serde_json::Value) -> Result<Task, ScenarioError> {
        let obj = value.as_object().ok_or_else(|| ScenarioError::TaskSchema {
            task: index,
            kind: "?".into(),
            message: "task must be a JSON object".into(),
        })?;
        let kind = obj
            .get("kind")
            .and_then(|v| v.as_str())
            .ok_or_else(|| ScenarioError::TaskSchema {
                task: index,
                kind: "?".into(),
                message: "missing string field \"kind\"".into(),
            })?
            .to_string();

        let fail = |message: String| ScenarioError::TaskSchema {
            task: index,
            kind: kind.clone(),
            message,
        };

        let str_field = |field: &str| -> Result<String, ScenarioError> {
            obj.get(field)
                .and_then(|v| v.as_str())
                .map(str::to_string)
                .ok_or_else(|| fail(format!("missing string field \"{field}\"")))
        };
        let list_field = |field: &str| -> Result<Vec<String>, ScenarioError> {
            let arr = obj
                .get(field)
                .and_then(|v| v.as_array())
                .ok_or_else(|| fail(format!("missing list field \"{field}\"")))?;
            arr.iter()
                .map(|v| {
                    v.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| fail(format!("field \"{field}\" must hold strings")))
                })
                .collect()
        };
        let state_ref = |name: &str| -> Result<String, ScenarioError> {
            if self.states.contains_key(name) {
                Ok(name.to_string())
            } else {
                Err(fail(format!("undefined state \"{name}\"")))
            }
        };
        let event_ref = |name: &str| -> Result<String, ScenarioError> {
            if self.events.contains_key(name) {
                Ok(name.to_string())
            } else {
                Err(fail(format!("undefined event \"{name}\"")))
            }
        };
        let atoms_field = |field: &str, weight_key: &str| -> Result<Vec<(f64, String)>, ScenarioError> {
            let arr = obj
                .get(field)
                .and_then(|v| v.as_array())
                .ok_or_else(|| fail(format!("missing list field \"{field}\"")))?;
            let mut out = Vec::with_capacity(arr.len());
            for entry in arr {
                let weight = entry
                    .get(weight_key)
                    .and_then(|v| v.as_f64())
                    .ok_or_else(|| fail(format!("atom missing number \"{weight_key}\"")))?;
                let event = entry
                    .get("event")
                    .and_then(|v| v.as_str())
                    .ok_or_else(|| fail("atom missing string \"event\"".into()))?;
                out.push((weight, event_ref(event)?));
            }
            Ok(out)
        };

        let task = match kind.as_str() {
            "born" => Task::Born {
                state: state_ref(&str_field("state")?)?,
                event: event_ref(&str_field("event")?)?,
            },
            "consecutive" => Task::Consecutive {
                state: state_ref(&str_field("state")?)?,
                events: list_field("events")?
                    .iter()
                    .map(|n| event_ref(n))
                    .collect::<Result<_, _>>()?,
            },
            "conditional" => Task::Conditional {
                state: state_ref(&str_field("state")?)?,
                given: event_ref(&str_field("given")?)?,
                event: event_ref(&str_field("event")?)?,
            },
            "collapse" => Task::Collapse {
                state: state_ref(&str_field("state")?)?,
                event: event_ref(&str_field("event")?)?,
            },
            "independence" => Task::Independence {
                state: state_ref(&str_field("state")?)?,
                first: event_ref(&str_field("first")?)?,
                second: event_ref(&str_field("second")?)?,
            },
            "consecutive_events" => Task::ConsecutiveEvents {
                events: list_field("events")?
                    .iter()
                    .map(|n| event_ref(n))
                    .collect::<Result<_, _>>()?,
            },
            "timed" => {
                let initial = event_ref(&str_field("initial")?)?;
                let steps_raw = obj
                    .get("steps")
                    .and_then(|v| v.as_array())
                    .ok_or_else(|| fail("missing list field \"steps\"".into()))?;
                let mut steps = Vec::with_capacity(steps_raw.len());
                for step in steps_raw {
                    let propagator = step
                        .get("propagator")
                        .and_then(|v| v.as_str())
                        .ok_or_else(|| fail("step missing string \"propagator\"".into()))?;
                    if !self.propagators.contains_key(propagator) {
                        return Err(fail(format!("undefined propagator \"{propagator}\"")));
                    }
                    let event = step
                        .get("event")
                        .and_then(|v| v.as_str())
                        .ok_or_else(|| fail("step missing string \"event\"".into()))?;
                    steps.push((propagator.to_string(), event_ref(event)?));
                }
                Task::Timed { initial, steps }
            }
            "interference" => Task::Interference {
                state: state_ref(&str_field("state")?)?,
                parts: list_field("parts")?
                    .iter()
                    .map(|n| event_ref(n))
                    .collect::<Result<_, _>>()?,
                event: event_ref(&str_field("event")?)?,
            },
            "amplitude" | "amplitude_via_symbol" => {
                let points = list_field("points")?
                    .iter()
                    .map(|n| state_ref(n))
                    .collect::<Result<Vec<_>, _>>()?;
                if kind == "amplitude" {
                    Task::Amplitude { points }
                } else {
                    Task::AmplitudeViaSymbol { points }
                }
            }
            "geodesic" => Task::Geodesic {
                a: state_ref(&str_field("a")?)?,
                b: state_ref(&str_field("b")?)?,
            },
            "observable_eval" => {
                let query_value = obj
                    .get("query")
                    .ok_or_else(|| fail("missing field \"query\"".into()))?;
                let query: BorelQuery = serde_json::from_value(query_value.clone())
                    .map_err(|e| fail(format!("bad query: {e}")))?;
                query
                    .validate()
                    .map_err(|e| fail(format!("bad query: {e}")))?;
                Task::ObservableEval {
                    atoms: atoms_field("atoms", "value")?,
                    query,
                }
            }
            "support" => Task::Support {
                atoms: atoms_field("atoms", "value")?,
            },
            "density_prob" => Task::DensityProb {
                atoms: atoms_field("atoms", "a")?,
                event: event_ref(&str_field("event")?)?,
            },
            "sample" => {
                let n = obj
                    .get("n")
                    .and_then(|v| v.as_u64())
                    .ok_or_else(|| fail("missing positive integer \"n\"".into()))?;
                if n == 0 {
                    return Err(fail("\"n\" must be at least 1".into()));
                }
                Task::Sample {
                    state: state_ref(&str_field("state")?)?,
                    events: list_field("events")?
                        .iter()
                        .map(|n| event_ref(n))
                        .collect::<Result<_, _>>()?,
                    n,
                    seed: obj.get("seed").and_then(|v| v.as_u64()),
                }
            }
            other => {
                return Err(ScenarioError::TaskSchema {
                    task: index,
                    kind: other.to_string(),
                    message: "unknown task kind".into(),
                })
            }
        };
        Ok(task)
    }
}

/// One report: the task index, its kind, and the result payload.
#[derive(Clone, Debug)]
pub struct Report {
    pub task: usize,
    pub kind: String,
    pub payload: Vec<(String, ReportValue)>,
}

/// Deterministically serializable report values. Floating point numbers
/// render with 15 significant digits; object keys keep insertion order.
#[derive(Clone, Debug)]
pub enum ReportValue {
    Bool(bool),
    Int(u64),
    Num(f64),
    Str(String),
    List(Vec<ReportValue>),
    Obj(Vec<(String, ReportValue)>),
}

/// 15-significant-digit rendering; the same value always prints the same
/// bytes.
pub fn fmt_sig15(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.14e}")
}

fn escape_json(s: &str, out: &mut String) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}

impl ReportValue {
    fn write_json(&self, out: &mut String) {
        match self {
            ReportValue::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            ReportValue::Int(i) => out.push_str(&i.to_string()),
            ReportValue::Num(x) => out.push_str(&fmt_sig15(*x)),
            ReportValue::Str(s) => escape_json(s, out),
            ReportValue::List(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write_json(out);
                }
                out.push(']');
            }
            ReportValue::Obj(fields) => {
                out.push('{');
                for (i, (key, value)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    escape_json(key, out);
                    out.push(':');
                    value.write_json(out);
                }
                out.push('}');
            }
        }
    }

    fn to_json(&self) -> String {
        let mut out = String::new();
        self.write_json(&mut out);
        out
    }
}

fn complex_value(z: C64) -> ReportValue {
    ReportValue::Obj(vec![
        ("re".into(), ReportValue::Num(z.re)),
        ("im".into(), ReportValue::Num(z.im)),
    ])
}

fn subspace_value(s: &Subspace) -> ReportValue {
    ReportValue::Obj(vec![
        ("ambient_dim".into(), ReportValue::Int(s.ambient_dim() as u64)),
        (
            "columns".into(),
            ReportValue::List(
                s.basis()
                    .column_iter()
                    .map(|col| {
                        ReportValue::List(
                            col.iter()
                                .map(|z| {
                                    ReportValue::List(vec![
                                        ReportValue::Num(z.re),
                                        ReportValue::Num(z.im),
                                    ])
                                })
                                .collect(),
                        )
                    })
                    .collect(),
            ),
        ),
    ])
}

fn state_value(p: &StatePoint) -> ReportValue {
    ReportValue::Obj(vec![
        ("ambient_dim".into(), ReportValue::Int(p.ambient_dim() as u64)),
        (
            "columns".into(),
            ReportValue::List(vec![ReportValue::List(
                p.representative()
                    .iter()
                    .map(|z| {
                        ReportValue::List(vec![ReportValue::Num(z.re), ReportValue::Num(z.im)])
                    })
                    .collect(),
            )]),
        ),
    ])
}

// Resolved numeric objects, built once per run under the run tolerance.
struct Tables {
    states: BTreeMap<String, StatePoint>,
    events: BTreeMap<String, Event>,
    propagators: BTreeMap<String, CMatrix>,
}

fn build_tables(scenario: &Scenario, tol: f64) -> Result<Tables, ScenarioError> {
    let mut states = BTreeMap::new();
    for (name, v) in &scenario.states {
        let p = StatePoint::new(v, tol).map_err(|source| ScenarioError::Definition {
            name: name.clone(),
            source,
        })?;
        states.insert(name.clone(), p);
    }
    let mut events = BTreeMap::new();
    for (name, def) in &scenario.events {
        let event = match def {
            EventDef::Span(vectors) => Subspace::from_vectors(scenario.ambient_dim, vectors, tol)
                .map(Event::from_subspace),
            EventDef::Projector(m) => Event::from_projector(m.clone(), tol),
        }
        .map_err(|source| ScenarioError::Definition {
            name: name.clone(),
            source,
        })?;
        events.insert(name.clone(), event);
    }
    Ok(Tables {
        states,
        events,
        propagators: scenario.propagators.clone(),
    })
}

impl Tables {
    fn state(&self, name: &str) -> &StatePoint {
        &self.states[name]
    }
    fn event(&self, name: &str) -> &Event {
        &self.events[name]
    }
    fn sequence(&self, names: &[String]) -> Result<EventSequence, MathError> {
        EventSequence::new(names.iter().map(|n| self.event(n).clone()).collect())
    }
    fn points(&self, names: &[String]) -> Result<PointSequence, MathError> {
        PointSequence::new(names.iter().map(|n| self.state(n).clone()).collect())
    }
    fn observable(
        &self,
        ambient_dim: usize,
        atoms: &[(f64, String)],
        tol: f64,
    ) -> Result<GeometricObservable, MathError> {
        GeometricObservable::new(
            ambient_dim,
            atoms
                .iter()
                .map(|(value, event)| ObservableAtom {
                    value: *value,
                    subspace: self.event(event).range().clone(),
                })
                .collect(),
            tol,
        )
    }
    fn density(
        &self,
        ambient_dim: usize,
        atoms: &[(f64, String)],
        tol: f64,
    ) -> Result<GeometricDensityMatrix, MathError> {
        GeometricDensityMatrix::new(
            ambient_dim,
            atoms
                .iter()
                .map(|(weight, event)| DensityAtom {
                    weight: *weight,
                    subspace: self.event(event).range().clone(),
                })
                .collect(),
            tol,
        )
    }
}

/// Execute every task in order. Stops at the first failure.
pub fn run(scenario: &Scenario, cfg: &RunConfig) -> Result<Vec<Report>, ScenarioError> {
    let tables = build_tables(scenario, cfg.tol)?;
    let mut reports = Vec::with_capacity(scenario.tasks.len());
    for (index, task) in scenario.tasks.iter().enumerate() {
        let payload = run_task(scenario, &tables, task, cfg).map_err(|source| {
            ScenarioError::Numerical {
                task: index,
                kind: task.kind().to_string(),
                source,
            }
        })?;
        reports.push(Report {
            task: index,
            kind: task.kind().to_string(),
            payload,
        });
    }
    Ok(reports)
}

fn run_task(
    scenario: &Scenario,
    tables: &Tables,
    task: &Task,
    cfg: &RunConfig,
) -> Result<Vec<(String, ReportValue)>, MathError> {
    let value_payload = |x: f64| vec![("value".to_string(), ReportValue::Num(x))];
    Ok(match task {
        Task::Born { state, event } => {
            value_payload(born(tables.state(state), tables.event(event))?)
        }
        Task::Consecutive { state, events } => {
            let seq = tables.sequence(events)?;
            value_payload(consecutive(tables.state(state), &seq)?)
        }
        Task::Conditional { state, given, event } => value_payload(conditional(
            tables.state(state),
            tables.event(given),
            tables.event(event),
            cfg.tol,
        )?),
        Task::Collapse { state, event } => {
            let collapsed = collapse(tables.state(state), tables.event(event), cfg.tol)?;
            vec![("state".to_string(), state_value(&collapsed))]
        }
        Task::Independence { state, first, second } => {
            let check = independence(
                tables.state(state),
                tables.event(first),
                tables.event(second),
                cfg.tol,
            )?;
            vec![
                ("independent".to_string(), ReportValue::Bool(check.independent)),
                ("lhs".to_string(), ReportValue::Num(check.lhs)),
                ("rhs".to_string(), ReportValue::Num(check.rhs)),
            ]
        }
        Task::ConsecutiveEvents { events } => {
            let seq = tables.sequence(events)?;
            value_payload(consecutive_events(&seq)?)
        }
        Task::Timed { initial, steps } => {
            let timed = TimedSequence::new(
                tables.event(initial).clone(),
                steps
                    .iter()
                    .map(|(u, e)| (tables.propagators[u].clone(), tables.event(e).clone()))
                    .collect(),
            )?;
            value_payload(timed_consecutive(&timed))
        }
        Task::Interference { state, parts, event } => {
            let part_events: Vec<Event> = parts.iter().map(|n| tables.event(n).clone()).collect();
            let report = interference(
                tables.state(state),
                &part_events,
                tables.event(event),
                cfg.tol,
            )?;
            vec![
                ("total".to_string(), ReportValue::Num(report.total)),
                (
                    "diagonal".to_string(),
                    ReportValue::List(report.diagonal.iter().map(|&x| ReportValue::Num(x)).collect()),
                ),
                (
                    "cross_terms".to_string(),
                    ReportValue::List(
                        report
                            .cross_terms
                            .iter()
                            .map(|&(j, k, z)| {
                                ReportValue::Obj(vec![
                                    ("j".into(), ReportValue::Int(j as u64)),
                                    ("k".into(), ReportValue::Int(k as u64)),
                                    ("re".into(), ReportValue::Num(z.re)),
                                    ("im".into(), ReportValue::Num(z.im)),
                                ])
                            })
                            .collect(),
                    ),
                ),
                ("cross_sum".to_string(), complex_value(report.cross_sum())),
            ]
        }
        Task::Amplitude { points } => {
            let seq = tables.points(points)?;
            let a = amplitude(&seq).value();
            vec![
                ("re".to_string(), ReportValue::Num(a.re)),
                ("im".to_string(), ReportValue::Num(a.im)),
            ]
        }
        Task::AmplitudeViaSymbol { points } => {
            let seq = tables.points(points)?;
            let a = amplitude_via_symbol(&seq)?.value();
            vec![
                ("re".to_string(), ReportValue::Num(a.re)),
                ("im".to_string(), ReportValue::Num(a.im)),
            ]
        }
        Task::Geodesic { a, b } => {
            value_payload(geodesic_distance(tables.state(a), tables.state(b))?)
        }
        Task::ObservableEval { atoms, query } => {
            let obs = tables.observable(scenario.ambient_dim, atoms, cfg.tol)?;
            let subspace = obs.evaluate(query, cfg.tol)?;
            vec![
                ("subspace".to_string(), subspace_value(&subspace)),
                (
                    "projective_dim".to_string(),
                    ReportValue::Num(subspace.projective_dim() as f64),
                ),
            ]
        }
        Task::Support { atoms } => {
            let obs = tables.observable(scenario.ambient_dim, atoms, cfg.tol)?;
            vec![(
                "support".to_string(),
                ReportValue::List(obs.support().iter().map(|&x| ReportValue::Num(x)).collect()),
            )]
        }
        Task::DensityProb { atoms, event } => {
            let rho = tables.density(scenario.ambient_dim, atoms, cfg.tol)?;
            value_payload(prob_density(&rho, tables.event(event))?)
        }
        Task::Sample { state, events, n, seed } => {
            let seq = tables.sequence(events)?;
            let report = estimate(
                tables.state(state),
                &seq,
                *n,
                seed.unwrap_or(cfg.seed),
                cfg.tol,
            )?;
            vec![
                ("n_samples".to_string(), ReportValue::Int(report.n_samples)),
                ("exact".to_string(), ReportValue::Num(report.exact)),
                ("empirical".to_string(), ReportValue::Num(report.empirical)),
                ("std_error".to_string(), ReportValue::Num(report.std_error)),
                (
                    "path_counts".to_string(),
                    ReportValue::Obj(
                        report
                            .path_counts
                            .iter()
                            .map(|(k, &v)| (k.clone(), ReportValue::Int(v)))
                            .collect(),
                    ),
                ),
            ]
        }
    })
}

/// Render reports in the requested format: JSON lines (one object per
/// task) or an aligned text table.
pub fn render(reports: &[Report], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut out = String::new();
            for report in reports {
                let mut fields = vec![
                    ("task".to_string(), ReportValue::Int(report.task as u64)),
                    ("kind".to_string(), ReportValue::Str(report.kind.clone())),
                ];
                fields.extend(report.payload.iter().cloned());
                out.push_str(&ReportValue::Obj(fields).to_json());
                out.push('\n');
            }
            out
        }
        ReportFormat::Text => {
            let rows: Vec<(String, String, String)> = reports
                .iter()
                .map(|r| {
                    let summary = r
                        .payload
                        .iter()
                        .map(|(k, v)| format!("{k}={}", v.to_json()))
                        .collect::<Vec<_>>()
                        .join(" ");
                    (r.task.to_string(), r.kind.clone(), summary)
                })
                .collect();
            let task_width = rows.iter().map(|r| r.0.len()).max().unwrap_or(4).max(4);
            let kind_width = rows.iter().map(|r| r.1.len()).max().unwrap_or(4).max(4);
            let mut out = format!(
                "{:<task_width$}  {:<kind_width$}  result\n",
                "task", "kind"
            );
            for (task, kind, summary) in rows {
                out.push_str(&format!(
                    "{task:<task_width$}  {kind:<kind_width$}  {summary}\n"
                ));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{
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
        "propagators": {
            "rot": [[[0, 0], [1, 0]], [[-1, 0], [0, 0]]]
        },
        "tasks": []
    }"#;

    fn with_tasks(tasks: &str) -> String {
        BASE.replace("\"tasks\": []", &format!("\"tasks\": {tasks}"))
    }

    #[test]
    fn born_task_reports_half() {
        let text = with_tasks(r#"[{ "kind": "born", "state": "plus", "event": "up" }]"#);
        let scenario = Scenario::from_json(&text).unwrap();
        let reports = run(&scenario, &RunConfig::default()).unwrap();
        let json = render(&reports, ReportFormat::Json);
        assert_eq!(
            json,
            "{\"task\":0,\"kind\":\"born\",\"value\":5.00000000000000e-1}\n"
        );
    }

    #[test]
    fn unknown_kind_is_schema_error() {
        let text = with_tasks(r#"[{ "kind": "nonsense" }]"#);
        let err = Scenario::from_json(&text).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("unknown task kind"));
    }

    #[test]
    fn undefined_name_is_schema_error() {
        let text = with_tasks(r#"[{ "kind": "born", "state": "ghost", "event": "up" }]"#);
        let err = Scenario::from_json(&text).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("task 0"));
        assert!(err.to_string().contains("ghost"));
    }

    #[test]
    fn dimension_mismatch_is_schema_error() {
        let text = BASE.replace("[[1, 0], [0, 0]],", "[[1, 0], [0, 0], [0, 0]],");
        let err = Scenario::from_json(&text).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn non_contraction_is_numerical_error() {
        let text = with_tasks(
            r#"[{ "kind": "timed", "initial": "up", "steps": [{ "propagator": "big", "event": "down" }] }]"#,
        )
        .replace(
            r#""rot": [[[0, 0], [1, 0]], [[-1, 0], [0, 0]]]"#,
            r#""big": [[[2, 0], [0, 0]], [[0, 0], [2, 0]]]"#,
        );
        let scenario = Scenario::from_json(&text).unwrap();
        let err = run(&scenario, &RunConfig::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("contraction"));
    }

    #[test]
    fn annihilated_collapse_is_numerical_error() {
        let text = with_tasks(r#"[{ "kind": "collapse", "state": "psi", "event": "down" }]"#);
        let scenario = Scenario::from_json(&text).unwrap();
        let err = run(&scenario, &RunConfig::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn output_is_byte_identical_across_runs() {
        let text = with_tasks(
            r#"[
                { "kind": "born", "state": "plus", "event": "up" },
                { "kind": "consecutive", "state": "psi", "events": ["diag", "down"] },
                { "kind": "independence", "state": "psi", "first": "diag", "second": "up" },
                { "kind": "sample", "state": "psi", "events": ["diag", "down"], "n": 5000, "seed": 9 }
            ]"#,
        );
        let scenario = Scenario::from_json(&text).unwrap();
        let cfg = RunConfig::default();
        let a = render(&run(&scenario, &cfg).unwrap(), ReportFormat::Json);
        let b = render(&run(&scenario, &cfg).unwrap(), ReportFormat::Json);
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 4);
    }

    #[test]
    fn text_format_is_aligned() {
        let text = with_tasks(
            r#"[
                { "kind": "born", "state": "plus", "event": "up" },
                { "kind": "geodesic", "a": "psi", "b": "plus" }
            ]"#,
        );
        let scenario = Scenario::from_json(&text).unwrap();
        let reports = run(&scenario, &RunConfig::default()).unwrap();
        let table = render(&reports, ReportFormat::Text);
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("task"));
        assert!(lines[1].contains("born"));
        assert!(lines[2].contains("geodesic"));
    }

    #[test]
    fn timed_task_with_rotation() {
        let text = with_tasks(
            r#"[{ "kind": "timed", "initial": "up", "steps": [{ "propagator": "rot", "event": "down" }] }]"#,
        );
        let scenario = Scenario::from_json(&text).unwrap();
        let reports = run(&scenario, &RunConfig::default()).unwrap();
        let json = render(&reports, ReportFormat::Json);
        assert!(json.contains("1.00000000000000e0"));
    }

    #[test]
    fn observable_and_density_tasks() {
        let text = with_tasks(
            r#"[
                { "kind": "observable_eval",
                  "atoms": [ {"value": 0, "event": "up"}, {"value": 1, "event": "down"} ],
                  "query": { "intervals": [ {"lo": 0.5, "hi": 2, "lo_closed": true, "hi_closed": true} ] } },
                { "kind": "support",
                  "atoms": [ {"value": 0, "event": "up"}, {"value": 1, "event": "down"} ] },
                { "kind": "density_prob",
                  "atoms": [ {"a": 0.5, "event": "full"} ],
                  "event": "up" }
            ]"#,
        )
        .replace(
            r#""diag": { "span": [[[1, 0], [1, 0]]] }"#,
            r#""diag": { "span": [[[1, 0], [1, 0]]] },
               "full": { "span": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]] }"#,
        );
        let scenario = Scenario::from_json(&text).unwrap();
        let reports = run(&scenario, &RunConfig::default()).unwrap();
        let json = render(&reports, ReportFormat::Json);
        let lines: Vec<&str> = json.lines().collect();
        assert!(lines[0].contains("\"subspace\""));
        assert!(lines[1].contains("\"support\":[0.00000000000000e0,1.00000000000000e0]"));
        assert!(lines[2].contains("\"value\":5.00000000000000e-1"));
    }

    #[test]
    fn amplitude_task_matches_library() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let text = format!(
            r#"{{
                "ambient_dim": 2,
                "states": {{
                    "p1": [[1, 0], [0, 0]],
                    "p2": [[{c}, {s2}], [{h}, 0]],
                    "p3": [[0, {s}], [{s}, 0]]
                }},
                "tasks": [
                    {{ "kind": "amplitude", "points": ["p1", "p2", "p3"] }},
                    {{ "kind": "amplitude_via_symbol", "points": ["p1", "p2", "p3"] }}
                ]
            }}"#,
            s = s,
            // (ψ₁+ψ₃)/N with N=√2: ((1 + i/√2)/√2, 1/2)
            c = 1.0 / std::f64::consts::SQRT_2,
            s2 = 0.5,
            h = 0.5,
        );
        let scenario = Scenario::from_json(&text).unwrap();
        let reports = run(&scenario, &RunConfig::default()).unwrap();
        let json = render(&reports, ReportFormat::Json);
        let expected_im = -1.0 / (4.0 * std::f64::consts::SQRT_2);
        for line in json.lines() {
            assert!(line.contains(&format!("\"re\":{}", fmt_sig15(0.5))));
            assert!(line.contains(&format!("\"im\":{}", fmt_sig15(expected_im))));
        }
    }
}
