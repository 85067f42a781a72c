use std::fmt::Write as _;

use lenkrull_core::length::{CbResult, LengthReport, LengthVector};
use lenkrull_core::oracles::TrialReport;
use lenkrull_core::Ordinal;
use serde_json::{json, Map, Number, Value};

use crate::error::CliError;
use crate::request::Request;

/// The result object shared by `ring`, `module`, `zmodule` and `localpid`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub ring: String,
    pub module: String,
    pub length_vector: LengthVector,
    pub length: Ordinal,
    pub reduced_length: Ordinal,
    pub cb_rank: CbResult,
    pub dimension: Option<u32>,
}

impl Analysis {
    pub fn new(ring: String, module: String, r: LengthReport) -> Self {
        Analysis {
            ring,
            module,
            length_vector: r.length_vector,
            length: r.length,
            reduced_length: r.reduced_length,
            cb_rank: r.cb_rank,
            dimension: r.dimension,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Report {
    Analysis(Analysis),
    Verification(Vec<TrialReport>),
}

impl Report {
    pub fn passed(&self) -> bool {
        match self {
            Report::Analysis(_) => true,
            Report::Verification(v) => v.iter().all(TrialReport::passed),
        }
    }
}

fn number(n: impl ToString) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("decimal integer"))
}

/// `[[exponent, coefficient], ..]`, leading term first; zero is `[]`.
pub fn ordinal_json(o: &Ordinal) -> Value {
    Value::Array(
        o.terms()
            .iter()
            .map(|t| json!([number(&t.exponent), number(&t.coefficient)]))
            .collect(),
    )
}

pub fn analysis_json(a: &Analysis) -> Value {
    let mut v = Map::new();
    let entries: Vec<_> = a.length_vector.iter().collect();
    for (alpha, count) in entries.into_iter().rev() {
        v.insert(alpha.to_string(), number(count));
    }
    let cb = match &a.cb_rank {
        CbResult::Exact(o) => json!({ "exact": ordinal_json(o) }),
        CbResult::Bounds { lower, upper } => {
            json!({ "lower": ordinal_json(lower), "upper": ordinal_json(upper) })
        }
    };
    json!({
        "ring": a.ring,
        "module": a.module,
        "length_vector": v,
        "length": ordinal_json(&a.length),
        "reduced_length": ordinal_json(&a.reduced_length),
        "cb_rank": cb,
        "dimension": a.dimension,
    })
}

pub fn trial_json(t: &TrialReport) -> Value {
    json!({
        "suite": t.suite,
        "trials": t.trials,
        "seed": t.seed,
        "checks": t.checks,
        "passed": t.passed(),
        "failures": t.failures,
    })
}

pub fn report_json(r: &Report) -> Value {
    match r {
        Report::Analysis(a) => analysis_json(a),
        Report::Verification(v) => json!({
            "passed": r.passed(),
            "suites": v.iter().map(trial_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn error_json(e: &CliError) -> Value {
    json!({ "error": e })
}

pub fn analysis_text(a: &Analysis) -> String {
    let mut s = String::new();
    let vector = if a.length_vector.is_zero() {
        "0".to_string()
    } else {
        let entries: Vec<_> = a.length_vector.iter().collect();
        entries
            .into_iter()
            .rev()
            .map(|(alpha, c)| format!("{alpha}: {c}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let cb = match &a.cb_rank {
        CbResult::Exact(o) => o.to_string(),
        CbResult::Bounds { lower, upper } => format!("between {lower} and {upper}"),
    };
    let dimension = a
        .dimension
        .map_or("undefined (zero module)".to_string(), |d| d.to_string());
    writeln!(s, "ring: {}", a.ring).unwrap();
    writeln!(s, "module: {}", a.module).unwrap();
    writeln!(s, "length vector: {vector}").unwrap();
    writeln!(s, "length: {}", a.length).unwrap();
    writeln!(s, "reduced length: {}", a.reduced_length).unwrap();
    writeln!(s, "cb rank: {cb}").unwrap();
    writeln!(s, "dimension: {dimension}").unwrap();
    s
}

pub fn trial_text(t: &TrialReport) -> String {
    let mut s = format!(
        "{} {}: {} trials, seed {}, {} checks, {} failures\n",
        if t.passed() { "PASS" } else { "FAIL" },
        t.suite,
        t.trials,
        t.seed,
        t.checks,
        t.failures.len()
    );
    for f in &t.failures {
        writeln!(s, "  {f}").unwrap();
    }
    s
}

pub fn report_text(r: &Report) -> String {
    match r {
        Report::Analysis(a) => analysis_text(a),
        Report::Verification(v) => v.iter().map(trial_text).collect(),
    }
}

/// `error[code]: message`, then the offending input with a caret line when a span is known.
pub fn error_text(e: &CliError, req: Option<&Request>) -> String {
    let code = serde_json::to_value(e.code).expect("plain enum");
    let mut s = format!(
        "error[{}]: {}\n",
        code.as_str().unwrap_or_default(),
        e.message
    );
    if let Some(span) = e.span {
        if let Some(src) = req.and_then(|r| r.field_text(span.field)) {
            let pad = src[..span.start.min(src.len())].chars().count();
            let width = src
                .get(span.start..span.end)
                .map_or(1, |t| t.chars().count().max(1));
            writeln!(s, "  {}: {src}", span.field).unwrap();
            let indent = span.field.to_string().len() + 2;
            writeln!(s, "  {}{}", " ".repeat(indent + pad), "^".repeat(width)).unwrap();
        } else {
            writeln!(
                s,
                "  in {} at bytes {}..{}",
                span.field, span.start, span.end
            )
            .unwrap();
        }
    }
    s
}
