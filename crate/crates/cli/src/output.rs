//! Text and JSON rendering of verification results and reduction traces.

use homore::catalog::ReductionTrace;
use homore::report::{Bounds, Counterexample, Status};
use serde::Serialize;

use crate::config::RunConfig;
use crate::run::{Item, Verification};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// The published report schema, see `schema/report.schema.json`.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Serialize)]
struct JsonReport<'a> {
    config: &'a RunConfig,
    suites: Vec<JsonSuite>,
    seed: u64,
    version: &'static str,
}

#[derive(Serialize)]
struct JsonSuite {
    name: String,
    status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<Counterexample>,
    bound: Bounds,
    millis: u64,
}

impl From<&Item> for JsonSuite {
    fn from(item: &Item) -> Self {
        JsonSuite {
            name: item.name(),
            status: item.report.status,
            counterexample: item.report.counterexample.clone(),
            bound: item.report.bounds,
            millis: item.report.millis,
        }
    }
}

pub fn verification_json(cfg: &RunConfig, v: &Verification) -> serde_json::Value {
    let report = JsonReport { config: cfg, suites: v.items.iter().map(JsonSuite::from).collect(), seed: cfg.seed, version: VERSION };
    serde_json::to_value(report).expect("reports serialize")
}

pub fn verification_text(cfg: &RunConfig, v: &Verification) -> String {
    let mut out = String::new();
    let mut params = format!("k = {}", cfg.k);
    if let Some(q) = &cfg.q {
        params.push_str(&format!(", q = {q}"));
    }
    out.push_str(&format!(
        "{} ({}), {params}, mode = {}, deg_x <= {}, deg_y <= {}, seed = {}\n",
        cfg.family,
        v.relation,
        serde_json::to_value(cfg.mode).expect("mode serializes").as_str().unwrap_or_default(),
        cfg.deg_x,
        cfg.deg_y,
        cfg.seed,
    ));
    let width = v.items.iter().map(|i| i.name().len()).max().unwrap_or(0);
    for item in &v.items {
        let r = &item.report;
        let tag = if r.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!("{tag} {:<width$}  {:>7} cases {:>6} ms\n", item.name(), r.cases, r.millis));
        if let Some(cx) = &r.counterexample {
            out.push_str(&format!("     counterexample {cx}\n"));
        }
    }
    let failed = v.items.iter().filter(|i| !i.report.passed()).count();
    out.push_str(&format!("characteristic = {}\n", v.characteristic));
    out.push_str(&format!("{} passed, {failed} failed\n", v.items.len() - failed));
    out
}

#[derive(Serialize)]
struct JsonStep {
    step: String,
    result: String,
}

#[derive(Serialize)]
struct JsonTrace<'a> {
    config: &'a RunConfig,
    k: String,
    start: String,
    steps: Vec<JsonStep>,
    length: usize,
    version: &'static str,
}

pub fn trace_json(cfg: &RunConfig, trace: &ReductionTrace) -> serde_json::Value {
    let steps = trace.steps.iter().map(|s| JsonStep { step: s.kind.to_string(), result: s.result.to_string() }).collect();
    let t = JsonTrace {
        config: cfg,
        k: trace.k.to_string(),
        start: trace.start.to_string(),
        steps,
        length: trace.len(),
        version: VERSION,
    };
    serde_json::to_value(t).expect("traces serialize")
}

pub fn trace_text(trace: &ReductionTrace) -> String {
    format!("{trace}\nlength = {}\n", trace.len())
}
