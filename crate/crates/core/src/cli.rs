//! Batch front end: input documents, command dispatch and output rendering.
//!
//! Input is one JSON document
//!
//! ```json
//! {"n": 2, "matrix": [["4", "-1"], ["-1", "1"]], "label": "optional"}
//! ```
//!
//! with every rational written as a string `-?[0-9]+(/[1-9][0-9]*)?`.
//! Output is text or JSON; both are byte-identical across runs for the same
//! input and options.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::bounds::{
    bound_report, default_cap, exact_polya_exponent, fkappa_report, verify_identity_up_to, BoundReport,
    ExponentOutcome, ExponentResult, FkappaRow, IdentityVerdict,
};
use crate::error::Error;
use crate::forms::{QuadraticForm, SimplexPoint};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::simplex_opt::MAX_VARIABLES;

pub const TOOL: &str = "polya";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_CAP_EXCEEDED: i32 = 3;
/// The coefficient identity failed somewhere.
pub const EXIT_IDENTITY_FAILED: i32 = 4;

pub const DEFAULT_MAX_M: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("invalid input document: {0}")]
    Json(String),

    #[error("n must be positive")]
    NoVariables,

    #[error("n = {n} but the matrix has {rows} rows")]
    RowCount { n: usize, rows: usize },

    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("malformed rational {value:?} at ({row}, {col})")]
    MalformedRational { row: usize, col: usize, value: String },

    #[error("matrix is not symmetric: ({i}, {j}) = {a} but ({j}, {i}) = {b}")]
    Asymmetric { i: usize, j: usize, a: String, b: String },

    #[error("n = {n} exceeds the face-enumeration limit of {max} variables")]
    TooManyVariables { n: usize, max: usize },

    #[error("malformed {flag} value {value:?}")]
    BadParameter { flag: &'static str, value: String },

    #[error("{0}")]
    Missing(String),

    #[error("{0}")]
    OutOfRange(String),
}

/// A validated quadratic-form input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDocument {
    pub n: usize,
    pub matrix: Vec<Vec<Rational>>,
    pub label: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    n: usize,
    matrix: Vec<Vec<String>>,
    #[serde(default)]
    label: Option<String>,
}

#[derive(Serialize)]
struct InputEcho {
    n: usize,
    matrix: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl InputDocument {
    pub fn form(&self) -> QuadraticForm {
        QuadraticForm::new(self.matrix.clone()).expect("validated on parse")
    }

    fn echo(&self) -> InputEcho {
        InputEcho {
            n: self.n,
            matrix: self.matrix.iter().map(|r| r.iter().map(format_rational).collect()).collect(),
            label: self.label.clone(),
        }
    }

    /// Canonical JSON with lowest-terms rational strings.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.echo()).expect("plain data")
    }
}

pub fn parse_input(text: &str) -> Result<InputDocument, InputError> {
    let raw: RawInput = serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;
    if raw.n == 0 {
        return Err(InputError::NoVariables);
    }
    if raw.matrix.len() != raw.n {
        return Err(InputError::RowCount { n: raw.n, rows: raw.matrix.len() });
    }
    let mut matrix = Vec::with_capacity(raw.n);
    for (i, row) in raw.matrix.iter().enumerate() {
        if row.len() != raw.n {
            return Err(InputError::NotSquare { row: i + 1, len: row.len(), n: raw.n });
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, s)| {
                parse_rational(s).ok_or_else(|| InputError::MalformedRational {
                    row: i + 1,
                    col: j + 1,
                    value: s.clone(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        matrix.push(parsed);
    }
    for i in 0..raw.n {
        for j in i + 1..raw.n {
            if matrix[i][j] != matrix[j][i] {
                return Err(InputError::Asymmetric {
                    i: i + 1,
                    j: j + 1,
                    a: raw.matrix[i][j].clone(),
                    b: raw.matrix[j][i].clone(),
                });
            }
        }
    }
    Ok(InputDocument { n: raw.n, matrix, label: raw.label })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Bounds,
    Exponent,
    Identity,
    Fkappa,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Bounds => "bounds",
            Command::Exponent => "exponent",
            Command::Identity => "identity",
            Command::Fkappa => "fkappa",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub format: Format,
    /// `exponent`: search cap; defaults to [`default_cap`].
    pub cap: Option<u32>,
    /// `identity`: check `m = 0..=max_m`.
    pub max_m: u32,
    /// `fkappa`: rational strings.
    pub kappa: Option<String>,
    pub lambdas: Vec<String>,
}

impl Default for Options {
    fn default() -> Self {
        Options { format: Format::Text, cap: None, max_m: DEFAULT_MAX_M, kappa: None, lambdas: Vec::new() }
    }
}

/// Exit code plus rendered streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

// ---- output documents ----

#[derive(Serialize)]
struct OutputDocument {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<InputEcho>,
    result: Payload,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Payload {
    Bounds(BoundsPayload),
    Exponent(ExponentPayload),
    Identity(IdentityPayload),
    Fkappa(FkappaPayload),
    Error(ErrorPayload),
}

#[derive(Serialize)]
struct BoundsPayload {
    bound_new: Value,
    bound_new_usable: Value,
    bound_new_clamped: bool,
    bound_corollary: Value,
    bound_klp: Value,
    min_f: String,
    argmin: Vec<String>,
    ratio_floor: Value,
    diag_max: String,
    entry_max: String,
    candidates_examined: usize,
}

#[derive(Serialize)]
struct ExponentPayload {
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    exponent: Option<u32>,
    cap: u32,
    min_f: String,
    argmin: Vec<String>,
}

#[derive(Serialize)]
struct IdentityPayload {
    holds: bool,
    max_m: u32,
    checks: Vec<IdentityCheck>,
}

#[derive(Serialize)]
struct IdentityCheck {
    m: u32,
    holds: bool,
    lattice_points: usize,
    mismatches: usize,
    threshold_checked: usize,
    threshold_violations: usize,
}

#[derive(Serialize)]
struct FkappaPayload {
    kappa: String,
    rows: Vec<FkappaJsonRow>,
}

#[derive(Serialize)]
struct FkappaJsonRow {
    lambda: String,
    bound_new: Value,
    bound_corollary: Value,
    bound_klp: Value,
    sup_ratio_minus_one: Option<String>,
    sup_closed_form: String,
    sup_matches: bool,
    min_f: String,
    min_closed_form: String,
    min_matches: bool,
    ratio: Option<String>,
    predicted: String,
}

#[derive(Serialize)]
struct ErrorPayload {
    error: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
}

/// Integers as JSON numbers when they fit in `i64`, else as strings.
fn int_value(b: &BigInt) -> Value {
    match b.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(b.to_string()),
    }
}

fn point_strings(p: &SimplexPoint) -> Vec<String> {
    p.coords().iter().map(format_rational).collect()
}

// ---- dispatch ----

struct Failure {
    code: i32,
    payload: ErrorPayload,
}

impl Failure {
    fn input(e: InputError) -> Self {
        Failure { code: EXIT_INPUT, payload: ErrorPayload { error: "input", message: e.to_string(), witness: None, value: None } }
    }

    fn from_error(e: Error) -> Self {
        match e {
            Error::NotPositive { point, value } => Failure {
                code: EXIT_PRECONDITION,
                payload: ErrorPayload {
                    error: "not_positive_on_simplex",
                    message: format!(
                        "precondition failed: form is not positive on the simplex; witness f{} = {} <= 0",
                        point,
                        format_rational(&value)
                    ),
                    witness: Some(point_strings(&point)),
                    value: Some(format_rational(&value)),
                },
            },
            other => Failure::input(InputError::OutOfRange(other.to_string())),
        }
    }
}

/// Runs one command. `input` is the JSON document text; `fkappa` ignores it.
pub fn run(command: Command, opts: &Options, input: Option<&str>) -> Outcome {
    let (doc, result) = match command {
        Command::Fkappa => (None, run_fkappa(opts)),
        _ => match load(input) {
            Ok(doc) => {
                let q = doc.form();
                let r = match command {
                    Command::Bounds => run_bounds(&q),
                    Command::Exponent => run_exponent(&q, opts),
                    Command::Identity => Ok(run_identity(&q, opts)),
                    Command::Fkappa => unreachable!(),
                };
                (Some(doc), r)
            }
            Err(e) => (None, Err(Failure::input(e))),
        },
    };

    let (code, payload) = match result {
        Ok((code, payload)) => (code, payload),
        Err(f) => (f.code, Payload::Error(f.payload)),
    };
    let out = OutputDocument {
        tool: TOOL,
        version: VERSION,
        command: command.name(),
        input: doc.as_ref().map(InputDocument::echo),
        result: payload,
    };
    let mut stderr = String::new();
    if let Payload::Error(e) = &out.result {
        stderr = format!("error: {}\n", e.message);
    }
    let stdout = match opts.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out).expect("plain data");
            s.push('\n');
            s
        }
        Format::Text => render_text(&out, doc.as_ref()),
    };
    Outcome { exit_code: code, stdout, stderr }
}

fn load(input: Option<&str>) -> Result<InputDocument, InputError> {
    let text = input.ok_or_else(|| InputError::Missing("no input document given".into()))?;
    let doc = parse_input(text)?;
    if doc.n > MAX_VARIABLES {
        return Err(InputError::TooManyVariables { n: doc.n, max: MAX_VARIABLES });
    }
    Ok(doc)
}

type Dispatch = Result<(i32, Payload), Failure>;

fn run_bounds(q: &QuadraticForm) -> Dispatch {
    let r: BoundReport = bound_report(q).map_err(Failure::from_error)?;
    Ok((
        EXIT_OK,
        Payload::Bounds(BoundsPayload {
            bound_new: int_value(&r.bound_new),
            bound_new_usable: int_value(&r.bound_new_usable),
            bound_new_clamped: r.is_clamped(),
            bound_corollary: int_value(&r.bound_corollary),
            bound_klp: int_value(&r.bound_klp),
            min_f: format_rational(&r.min_f),
            argmin: point_strings(&r.argmin),
            ratio_floor: int_value(&r.ratio_floor),
            diag_max: format_rational(&r.diag_max),
            entry_max: format_rational(&r.entry_max),
            candidates_examined: r.candidates_examined,
        }),
    ))
}

fn run_exponent(q: &QuadraticForm, opts: &Options) -> Dispatch {
    let cap = match opts.cap {
        Some(c) => c,
        None => default_cap(q).map_err(Failure::from_error)?.unwrap_or(0),
    };
    let r: ExponentResult = exact_polya_exponent(q, cap).map_err(Failure::from_error)?;
    let (outcome, exponent, code) = match r.outcome {
        ExponentOutcome::Found(m) => ("found", Some(m), EXIT_OK),
        ExponentOutcome::CapExceeded(_) => ("cap_exceeded", None, EXIT_CAP_EXCEEDED),
        ExponentOutcome::CertifiedInfinite => ("certified_infinite", None, EXIT_OK),
    };
    Ok((
        code,
        Payload::Exponent(ExponentPayload {
            outcome,
            exponent,
            cap,
            min_f: format_rational(&r.min_f),
            argmin: point_strings(&r.argmin),
        }),
    ))
}

fn run_identity(q: &QuadraticForm, opts: &Options) -> (i32, Payload) {
    let verdicts: Vec<IdentityVerdict> = verify_identity_up_to(q, opts.max_m);
    let holds = verdicts.iter().all(IdentityVerdict::holds);
    let checks = verdicts
        .iter()
        .map(|v| IdentityCheck {
            m: v.m,
            holds: v.holds(),
            lattice_points: v.lattice_points,
            mismatches: v.mismatches,
            threshold_checked: v.threshold_checked,
            threshold_violations: v.threshold_violations,
        })
        .collect();
    let code = if holds { EXIT_OK } else { EXIT_IDENTITY_FAILED };
    (code, Payload::Identity(IdentityPayload { holds, max_m: opts.max_m, checks }))
}

fn parse_param(flag: &'static str, s: &str) -> Result<Rational, Failure> {
    parse_rational(s).ok_or_else(|| Failure::input(InputError::BadParameter { flag, value: s.to_string() }))
}

fn run_fkappa(opts: &Options) -> Dispatch {
    let kappa_s = opts.kappa.as_deref().ok_or_else(|| Failure::input(InputError::Missing("--kappa is required".into())))?;
    let kappa = parse_param("--kappa", kappa_s)?;
    if opts.lambdas.is_empty() {
        return Err(Failure::input(InputError::Missing("at least one --lambda is required".into())));
    }
    let lambdas = opts.lambdas.iter().map(|s| parse_param("--lambda", s)).collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<FkappaRow> = match fkappa_report(&kappa, &lambdas) {
        Ok(rows) => rows,
        Err(Error::OutOfRange(msg)) => return Err(Failure::input(InputError::OutOfRange(msg))),
        Err(e) => return Err(Failure::from_error(e)),
    };
    let rows = rows
        .iter()
        .map(|r| FkappaJsonRow {
            lambda: format_rational(&r.lambda),
            bound_new: int_value(&r.bound_new),
            bound_corollary: int_value(&r.bound_corollary),
            bound_klp: int_value(&r.bound_klp),
            sup_ratio_minus_one: r.sup_ratio_minus_one.as_ref().map(format_rational),
            sup_closed_form: format_rational(&r.sup_closed_form),
            sup_matches: r.sup_matches,
            min_f: format_rational(&r.min_f),
            min_closed_form: format_rational(&r.min_closed_form),
            min_matches: r.min_matches,
            ratio: r.ratio.as_ref().map(format_rational),
            predicted: format_rational(&r.predicted_ratio),
        })
        .collect();
    Ok((EXIT_OK, Payload::Fkappa(FkappaPayload { kappa: format_rational(&kappa), rows })))
}

// ---- text rendering ----

fn render_text(out: &OutputDocument, doc: Option<&InputDocument>) -> String {
    let mut s = String::new();
    let mut line = |l: String| {
        s.push_str(&l);
        s.push('\n');
    };
    if let Some(doc) = doc {
        let label = doc.label.as_deref().map(|l| format!(" [{l}]")).unwrap_or_default();
        line(format!("form: {}{}", doc.form().to_sparse(), label));
    }
    let json_int = |v: &Value| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    match &out.result {
        Payload::Bounds(b) => {
            line(format!("min_f: {} at ({})", b.min_f, b.argmin.join(", ")));
            line(format!("ratio_floor: {}", json_int(&b.ratio_floor)));
            let clamp = if b.bound_new_clamped { " (clamped)" } else { "" };
            line(format!("bound_new: {} (usable {}{})", json_int(&b.bound_new), json_int(&b.bound_new_usable), clamp));
            line(format!("bound_corollary: {}", json_int(&b.bound_corollary)));
            line(format!("bound_klp: {}", json_int(&b.bound_klp)));
            line(format!("diag_max: {}", b.diag_max));
            line(format!("entry_max: {}", b.entry_max));
        }
        Payload::Exponent(e) => {
            line(format!("outcome: {}", e.outcome));
            if let Some(m) = e.exponent {
                line(format!("exponent: {m}"));
            }
            line(format!("cap: {}", e.cap));
            line(format!("min_f: {} at ({})", e.min_f, e.argmin.join(", ")));
        }
        Payload::Identity(id) => {
            for c in &id.checks {
                line(format!(
                    "m = {}: {} ({} lattice points, {} mismatches, {} threshold checks, {} violations)",
                    c.m,
                    if c.holds { "holds" } else { "FAILS" },
                    c.lattice_points,
                    c.mismatches,
                    c.threshold_checked,
                    c.threshold_violations
                ));
            }
            line(format!("identity: {}", if id.holds { "holds" } else { "FAILS" }));
        }
        Payload::Fkappa(f) => {
            line(format!("kappa: {}", f.kappa));
            line("lambda\tbound_new\tbound_corollary\tbound_klp\tsup-1\tclosed\tmin_f\tclosed\tratio\tpredicted".into());
            for r in &f.rows {
                let mark = |ok: bool| if ok { "" } else { " (MISMATCH)" };
                line(format!(
                    "{}\t{}\t{}\t{}\t{}\t{}{}\t{}\t{}{}\t{}\t{}",
                    r.lambda,
                    json_int(&r.bound_new),
                    json_int(&r.bound_corollary),
                    json_int(&r.bound_klp),
                    r.sup_ratio_minus_one.as_deref().unwrap_or("-"),
                    r.sup_closed_form,
                    mark(r.sup_matches),
                    r.min_f,
                    r.min_closed_form,
                    mark(r.min_matches),
                    r.ratio.as_deref().unwrap_or("-"),
                    r.predicted
                ));
            }
        }
        Payload::Error(_) => return String::new(),
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    const EXAMPLE: &str = r#"{"n":2, "matrix":[["4","-1"],["-1","1"]]}"#;

    #[test]
    fn parses_valid_document() {
        let doc = parse_input(EXAMPLE).unwrap();
        assert_eq!(doc.n, 2);
        assert_eq!(doc.matrix[0][1], int(-1));
        assert_eq!(doc.label, None);
    }

    #[test]
    fn asymmetry_names_the_pair() {
        let err = parse_input(r#"{"n":2, "matrix":[["4","-1"],["0","1"]]}"#).unwrap_err();
        assert!(matches!(err, InputError::Asymmetric { i: 1, j: 2, .. }));
        assert!(err.to_string().contains("(1, 2)"));
    }

    #[test]
    fn malformed_rational() {
        let err = parse_input(r#"{"n":2, "matrix":[["1/0","0"],["0","1"]]}"#).unwrap_err();
        assert_eq!(err, InputError::MalformedRational { row: 1, col: 1, value: "1/0".into() });
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(parse_input(r#"{"n":2, "matrix":[["1","0"]]}"#), Err(InputError::RowCount { .. })));
        assert!(matches!(parse_input(r#"{"n":2, "matrix":[["1"],["0","1"]]}"#), Err(InputError::NotSquare { .. })));
        assert!(matches!(parse_input(r#"{"n":0, "matrix":[]}"#), Err(InputError::NoVariables)));
        assert!(matches!(parse_input(r#"{"n":1, "matrix":[[1]]}"#), Err(InputError::Json(_))));
        assert!(matches!(parse_input(r#"{"n":1, "matrix":[["1"]], "extra":1}"#), Err(InputError::Json(_))));
    }

    #[test]
    fn canonical_json_reduces_entries() {
        let doc = parse_input(r#"{"n":1, "matrix":[["6/4"]], "label":"x"}"#).unwrap();
        assert_eq!(doc.to_json(), r#"{"n":1,"matrix":[["3/2"]],"label":"x"}"#);
    }

    #[test]
    fn bounds_text_output() {
        let out = run(Command::Bounds, &Options::default(), Some(EXAMPLE));
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("bound_new: 3 (usable 3)"));
        assert!(out.stdout.contains("bound_corollary: 8"));
        assert!(out.stdout.contains("bound_klp: 8"));
        assert!(out.stdout.contains("min_f: 3/7 at (2/7, 5/7)"));
    }

    #[test]
    fn missing_input_is_input_error() {
        let out = run(Command::Bounds, &Options::default(), None);
        assert_eq!(out.exit_code, EXIT_INPUT);
        assert!(out.stderr.contains("no input"));
    }

    #[test]
    fn too_many_variables_refused() {
        let n = 17;
        let rows: Vec<Vec<String>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { "1".to_string() } else { "0".to_string() }).collect()).collect();
        let text = serde_json::json!({"n": n, "matrix": rows}).to_string();
        let out = run(Command::Bounds, &Options::default(), Some(&text));
        assert_eq!(out.exit_code, EXIT_INPUT);
        assert!(out.stderr.contains("limit of 16"));
    }
}
