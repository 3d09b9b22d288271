use std::fmt;
use std::fs;
use std::path::Path;

use fairkit::measures::{evaluate_measure, MeasureError, MeasureKind, MeasureParams, MeasureResult, MeasureValue};
use fairkit::model::{validate_scenario, CoreError};
use fairkit::textio::{export_dot, parse_outcome, parse_pipeline, parse_scenario, pretty_print, ParseError};
use fairkit::tiles::{evaluate, typecheck, Bindings, EvalContext, EvalError, Registry, Value};
use fairkit::{FairnessScenario, Outcome, Quantity};
use serde_json::{json, Number, Value as Json};

use crate::args::{BindingArgs, Cli, Command, Format};

pub const EXIT_PARSE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_DEGENERATE: u8 = 3;

/// What a successful run writes: the value stream and any notes for the
/// diagnostic stream.
#[derive(Debug, Default)]
pub struct Output {
    pub value: String,
    pub notes: Vec<String>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
    /// Extra lines shown after the message, such as a source excerpt.
    pub detail: Vec<String>,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into(), detail: Vec::new() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::new(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))
}

fn parse_error(path: &Path, e: ParseError) -> CliError {
    let code = if e.is_validation() { EXIT_INVALID } else { EXIT_PARSE };
    let mut err = CliError::new(code, format!("{}:{e}", path.display()));
    err.detail = e.diagnostics.iter().map(|d| format!("  {d}")).collect();
    err
}

fn load_scenario(path: &Path) -> Result<FairnessScenario, CliError> {
    parse_scenario(&read(path)?).map_err(|e| parse_error(path, e))
}

fn load_outcome(path: &Path, s: &FairnessScenario) -> Result<Outcome, CliError> {
    parse_outcome(&read(path)?, s).map_err(|e| parse_error(path, e))
}

fn measure_error(kind: MeasureKind, e: MeasureError) -> CliError {
    let code = if e.is_degenerate_input() { EXIT_DEGENERATE } else { EXIT_INVALID };
    CliError::new(code, format!("{kind}: {e}"))
}

fn params(b: &BindingArgs) -> MeasureParams {
    MeasureParams {
        utility: b.utility.clone(),
        need: b.need.clone(),
        ranking: b.ranking.clone(),
        protected: b.protected.clone(),
        essential: b.essential.clone(),
        ground_truth: b.ground_truth.clone(),
        target: b.target.clone(),
        high: b.high.clone(),
        epsilon: b.epsilon.clone(),
    }
}

/// A JSON number with the given decimal text.
fn number(text: &str) -> Json {
    serde_json::from_str::<Number>(text).map(Json::Number).unwrap_or_else(|_| Json::String(text.to_owned()))
}

fn quantity_json(q: &Quantity) -> Json {
    json!({ "decimal": number(&q.to_decimal_string(12)), "exact": format!("{}/{}", q.numer(), q.denom()) })
}

fn result_json(kind: MeasureKind, r: &MeasureResult) -> Json {
    let exact = match r.value() {
        MeasureValue::Exact(q) => Json::String(format!("{}/{}", q.numer(), q.denom())),
        MeasureValue::Approximate(_) => Json::Null,
    };
    json!({
        "measure": kind.name(),
        "value": number(&r.to_string()),
        "exact": exact,
        "diagnostics": r.diagnostics(),
    })
}

fn value_json(v: &Value) -> Json {
    match v {
        Value::Agent(id) | Value::Resource(id) => Json::String(id.to_string()),
        Value::Quantity(q) => quantity_json(q),
        Value::Flag(b) => Json::Bool(*b),
        Value::Tuple(items) | Value::Seq { items, .. } => Json::Array(items.iter().map(value_json).collect()),
    }
}

fn document(doc: &Json) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("JSON values always serialize");
    text.push('\n');
    text
}

pub fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Check { scenario } => check(&scenario, cli.format),
        Command::Eval { scenario, outcome, measure, bindings } => {
            let s = load_scenario(&scenario)?;
            let o = load_outcome(&outcome, &s)?;
            let r = evaluate_measure(measure, &s, &o, &params(&bindings)).map_err(|e| measure_error(measure, e))?;
            let value = match cli.format {
                Format::Text => format!("{r}\n"),
                Format::Json => document(&result_json(measure, &r)),
            };
            Ok(Output { value, notes: r.diagnostics().to_vec() })
        }
        Command::Pipeline { scenario, outcome, expr, dot, bindings } => {
            let s = load_scenario(&scenario)?;
            let o = load_outcome(&outcome, &s)?;
            pipeline(&s, &o, &expr, dot.as_deref(), &bindings, cli.format)
        }
        Command::Compare { scenario, outcomes, measures, bindings } => {
            let s = load_scenario(&scenario)?;
            let params = params(&bindings);
            let mut rows = Vec::with_capacity(outcomes.len());
            for path in &outcomes {
                let o = load_outcome(path, &s)?;
                let results = measures
                    .iter()
                    .map(|&m| evaluate_measure(m, &s, &o, &params).map_err(|e| measure_error(m, e)))
                    .collect::<Result<Vec<_>, _>>()?;
                rows.push((path.display().to_string(), results));
            }
            Ok(Output { value: compare_table(&measures, &rows, cli.format), notes: Vec::new() })
        }
        Command::ListMeasures => Ok(Output { value: list_measures(cli.format), notes: Vec::new() }),
    }
}

fn check(path: &Path, format: Format) -> Result<Output, CliError> {
    let s = match parse_scenario(&read(path)?) {
        Ok(s) => s,
        Err(e) => return Err(parse_error(path, e)),
    };
    debug_assert!(validate_scenario(&s).is_empty());
    let attributes = s.agent_attributes().len() + s.resource_attributes().len();
    let value = match format {
        Format::Text => format!(
            "{}: valid ({} agents, {} resources, {} attributes)\n",
            path.display(),
            s.agents().len(),
            s.resources().len(),
            attributes
        ),
        Format::Json => document(&json!({
            "valid": true,
            "agents": s.agents().len(),
            "resources": s.resources().len(),
            "attributes": attributes,
        })),
    };
    Ok(Output { value, notes: Vec::new() })
}

/// The offending line with a caret under column `column`.
fn excerpt(text: &str, line: usize, column: usize) -> Vec<String> {
    let Some(source) = text.lines().nth(line - 1) else { return Vec::new() };
    vec![format!("  {source}"), format!("  {}^", " ".repeat(column - 1))]
}

fn pipeline(
    s: &FairnessScenario,
    o: &Outcome,
    expr: &str,
    dot: Option<&Path>,
    b: &BindingArgs,
    format: Format,
) -> Result<Output, CliError> {
    let registry = Registry::with_builtins();
    let p = parse_pipeline(expr, &registry).map_err(|e| {
        let code = if e.is_validation() { EXIT_INVALID } else { EXIT_PARSE };
        let mut err = CliError::new(code, format!("expression:{e}"));
        err.detail = excerpt(expr, e.line, e.column);
        err
    })?;
    if let Some(path) = dot {
        fs::write(path, export_dot(&p))
            .map_err(|e| CliError::new(EXIT_PARSE, format!("cannot write {}: {e}", path.display())))?;
    }
    let root = typecheck(&p).expect("parse_pipeline typechecks");
    let bindings = Bindings { utility: b.utility.clone(), need: b.need.clone(), epsilon: b.epsilon.clone() };
    let ctx = EvalContext::new(s, o, bindings).map_err(|e| CliError::new(EXIT_INVALID, e.to_string()))?;
    let value = evaluate(&p, &ctx).map_err(|e| {
        let code = match &e {
            EvalError::Tile { source: fairkit::tiles::TileError::LengthMismatch { .. }, .. } => EXIT_DEGENERATE,
            _ => EXIT_INVALID,
        };
        CliError::new(code, e.to_string())
    })?;
    let text = match format {
        Format::Text => format!("{value}\n"),
        Format::Json => document(&json!({
            "expr": pretty_print(&p),
            "type": root.to_string(),
            "value": value_json(&value),
        })),
    };
    Ok(Output { value: text, notes: Vec::new() })
}

fn compare_table(measures: &[MeasureKind], rows: &[(String, Vec<MeasureResult>)], format: Format) -> String {
    match format {
        Format::Json => {
            let rows: Vec<Json> = rows
                .iter()
                .map(|(outcome, results)| {
                    let values: Vec<Json> = measures.iter().zip(results).map(|(&m, r)| result_json(m, r)).collect();
                    json!({ "outcome": outcome, "results": values })
                })
                .collect();
            let names: Vec<&str> = measures.iter().map(|m| m.name()).collect();
            document(&json!({ "measures": names, "rows": rows }))
        }
        Format::Text => {
            let mut table: Vec<Vec<String>> = vec![std::iter::once("outcome".to_owned())
                .chain(measures.iter().map(|m| m.name().to_owned()))
                .collect()];
            for (outcome, results) in rows {
                table.push(std::iter::once(outcome.clone()).chain(results.iter().map(ToString::to_string)).collect());
            }
            let widths: Vec<usize> =
                (0..table[0].len()).map(|c| table.iter().map(|row| row[c].chars().count()).max().unwrap_or(0)).collect();
            let mut out = String::new();
            for row in &table {
                let cells: Vec<String> = row.iter().zip(&widths).map(|(cell, &w)| format!("{cell:<w$}")).collect();
                out.push_str(cells.join("  ").trim_end());
                out.push('\n');
            }
            out
        }
    }
}

fn list_measures(format: Format) -> String {
    match format {
        Format::Json => document(&Json::Array(
            MeasureKind::ALL
                .iter()
                .map(|k| {
                    json!({
                        "name": k.name(),
                        "description": k.description(),
                        "bindings": k.bindings(),
                        "boolean": k.is_boolean(),
                    })
                })
                .collect(),
        )),
        Format::Text => {
            let width = MeasureKind::ALL.iter().map(|k| k.name().len()).max().unwrap_or(0);
            MeasureKind::ALL
                .iter()
                .map(|k| {
                    let flags: Vec<String> = k.bindings().iter().map(|b| format!("--{b}")).collect();
                    format!("{:<width$}  {} [{}]\n", k.name(), k.description(), flags.join(" "))
                })
                .collect()
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::new(EXIT_INVALID, e.to_string())
    }
}
