use std::process::{Command, Output};

use regex::Regex;
use serde_json::Value;

fn homore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homore")).args(args).env_remove("HOMORE_THREADS").output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = homore(&all);
    (code(&out), serde_json::from_slice(&out.stdout).expect("valid json"))
}

/// The subset of JSON Schema used by the report schema.
fn validate(schema: &Value, root: &Value, v: &Value, path: &str) -> Result<(), String> {
    let schema = match schema.get("$ref").and_then(Value::as_str) {
        Some(r) => {
            let name = r.strip_prefix("#/$defs/").expect("local ref");
            &root["$defs"][name]
        }
        None => schema,
    };
    let fail = |msg: String| Err(format!("{path}: {msg}"));
    if let Some(t) = schema.get("type").and_then(Value::as_str) {
        let ok = match t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "integer" => v.is_u64() || v.is_i64(),
            _ => panic!("unsupported type {t}"),
        };
        if !ok {
            return fail(format!("expected {t}, got {v}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(v) {
            return fail(format!("{v} not in {options:?}"));
        }
    }
    if let Some(c) = schema.get("const") {
        if c != v {
            return fail(format!("{v} != {c}"));
        }
    }
    if let Some(p) = schema.get("pattern").and_then(Value::as_str) {
        if !Regex::new(p).unwrap().is_match(v.as_str().unwrap_or_default()) {
            return fail(format!("{v} does not match {p}"));
        }
    }
    if let Some(min) = schema.get("minimum").and_then(Value::as_u64) {
        if v.as_u64().is_some_and(|x| x < min) {
            return fail(format!("{v} below {min}"));
        }
    }
    if let Some(obj) = v.as_object() {
        for key in schema.get("required").and_then(Value::as_array).into_iter().flatten() {
            if !obj.contains_key(key.as_str().unwrap()) {
                return fail(format!("missing {key}"));
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        for (key, value) in obj {
            match props.and_then(|p| p.get(key)) {
                Some(sub) => validate(sub, root, value, &format!("{path}.{key}"))?,
                None if schema.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    return fail(format!("unexpected key {key}"))
                }
                None => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), v.as_array()) {
        for (i, item) in arr.iter().enumerate() {
            validate(items, root, item, &format!("{path}[{i}]"))?;
        }
    }
    if let Some(cond) = schema.get("if") {
        let branch = if validate(cond, root, v, path).is_ok() { "then" } else { "else" };
        if let Some(sub) = schema.get(branch) {
            validate(sub, root, v, path)?;
        }
    }
    if let Some(not) = schema.get("not") {
        if validate(not, root, v, path).is_ok() {
            return fail(format!("matches forbidden {not}"));
        }
    }
    Ok(())
}

fn assert_schema(report: &Value) {
    let schema: Value = serde_json::from_str(homore_cli::output::REPORT_SCHEMA).unwrap();
    if let Err(e) = validate(&schema, &schema, report, "$") {
        panic!("report violates schema: {e}\n{report:#}");
    }
}

#[test]
fn hom_weyl_axioms_pass() {
    let out = homore(&["verify", "--family", "weyl", "--k", "3/2", "--suite", "axioms"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("4 passed, 0 failed"));
}

#[test]
fn plain_quantum_plane_fails_with_witness() {
    let args = ["verify", "--family", "quantum_plane", "--q", "2", "--k", "3", "--mode", "plain", "--suite", "axioms"];
    let out = homore(&args);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("FAIL axioms/hom_associativity_at_x_y_y"), "{text}");
    assert!(text.contains("(a = X, b = Y, c = Y): lhs = 4*Y^2*X, rhs = 12*Y^2*X"), "{text}");
    let (c, report) = json(&args);
    assert_eq!(c, 1);
    assert_schema(&report);
    let witness = report["suites"].as_array().unwrap().iter().find(|s| s["name"] == "axioms/hom_associativity_at_x_y_y").unwrap();
    assert_eq!(witness["counterexample"]["inputs"], serde_json::json!(["a = X", "b = Y", "c = Y"]));
}

#[test]
fn weyl_k_zero_everything_passes() {
    let (c, report) = json(&["verify", "--family", "weyl", "--k", "0"]);
    assert_eq!(c, 0);
    assert_schema(&report);
    let suites: Vec<_> = report["suites"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap().split('/').next().unwrap().to_string()).collect();
    for s in ["axioms", "corollaries", "general-table", "unitalization", "reduce"] {
        assert!(suites.iter().any(|x| x == s), "missing suite {s}");
    }
}

#[test]
fn every_family_reports_valid_json() {
    for args in [
        vec!["verify", "--family", "quantum_plane", "--k", "2", "--q", "-1/3", "--deg-x", "2", "--deg-y", "2"],
        vec!["verify", "--family", "enveloping", "--k", "symbolic", "--deg-x", "2", "--deg-y", "2"],
        vec!["verify", "--family", "weyl", "--k", "5", "--mode", "plain", "--deg-x", "2", "--deg-y", "2"],
        vec!["unitalize", "--family", "enveloping", "--k", "2", "--deg-x", "2", "--deg-y", "2"],
    ] {
        let (c, report) = json(&args);
        assert!(c == 0 || c == 1, "{args:?}");
        assert_schema(&report);
        let all_pass = report["suites"].as_array().unwrap().iter().all(|s| s["status"] == "pass");
        assert_eq!(c == 0, all_pass, "{args:?}");
    }
}

#[test]
fn text_and_json_verdicts_agree() {
    let line = Regex::new(r"^(PASS|FAIL) (\S+)").unwrap();
    for args in [
        vec!["verify", "--family", "quantum_plane", "--k", "3", "--mode", "plain", "--deg-x", "2", "--deg-y", "2"],
        vec!["verify", "--family", "enveloping", "--k", "1/2", "--deg-x", "2", "--deg-y", "2"],
    ] {
        let out = homore(&args);
        let text: Vec<(String, String)> = stdout(&out)
            .lines()
            .filter_map(|l| line.captures(l))
            .map(|c| (c[2].to_string(), c[1].to_lowercase()))
            .collect();
        let (c, report) = json(&args);
        assert_eq!(code(&out), c);
        let from_json: Vec<(String, String)> = report["suites"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| (s["name"].as_str().unwrap().to_string(), s["status"].as_str().unwrap().to_string()))
            .collect();
        assert_eq!(text, from_json);
    }
}

#[test]
fn unitalize_runs_only_unitalization() {
    let (c, report) = json(&["unitalize", "--family", "weyl", "--k", "2", "--suite", "axioms", "--deg-x", "2", "--deg-y", "2"]);
    assert_eq!(c, 0);
    assert!(report["suites"].as_array().unwrap().iter().all(|s| s["name"].as_str().unwrap().starts_with("unitalization/")));
}

#[test]
fn reduction_traces() {
    let out = homore(&["reduce", "--k", "0", "--poly", "Y^2*X"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("length = 4"), "{text}");
    assert!(text.trim_end().lines().rev().nth(1).unwrap().ends_with("= 1"), "{text}");

    let out = homore(&["reduce", "--k", "1", "--poly", "1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let trace: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(trace["length"].as_u64().unwrap() <= 2);
    assert_eq!(trace["steps"].as_array().unwrap().last().unwrap()["result"], "1");
}

#[test]
fn invalid_inputs_exit_two() {
    for args in [
        vec!["reduce", "--poly", "0"],
        vec!["reduce", "--poly", "X*Y"],
        vec!["reduce"],
        vec!["reduce", "--family", "enveloping", "--poly", "X"],
        vec!["verify", "--family", "enveloping", "--k", "0"],
        vec!["verify", "--family", "quantum_plane", "--q", "0"],
        vec!["verify", "--family", "weyl", "--q", "2"],
        vec!["verify", "--k", "1.5"],
        vec!["verify", "--deg-x", "0"],
        vec!["verify", "--family", "lie"],
        vec!["verify", "--suite", "reduce", "--family", "quantum_plane"],
        vec!["verify", "--config", "/nonexistent/homore.json"],
        vec!["frobnicate"],
    ] {
        let out = homore(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(code(&homore(&["--help"])), 0);
}

#[test]
fn thread_count_is_validated() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_homore"))
            .args(["verify", "--suite", "axioms", "--deg-x", "1", "--deg-y", "1"])
            .env("HOMORE_THREADS", v)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("1")), 0);
    assert_eq!(code(&run("0")), 2);
    assert_eq!(code(&run("many")), 2);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"family": "quantum_plane", "k": 3, "q": "2", "mode": "plain", "suite": "axioms", "deg_x": 2, "deg_y": 2}"#).unwrap();
    let path = cfg.to_str().unwrap();
    let (c, report) = json(&["verify", "--config", path]);
    assert_eq!(c, 1);
    assert_eq!(report["config"]["mode"], "plain");
    assert_eq!(report["config"]["deg_x"], 2);

    let (c, report) = json(&["verify", "--config", path, "--mode", "star"]);
    assert_eq!(c, 0);
    assert_eq!(report["config"]["mode"], "star");
    assert_eq!(report["config"]["k"], "3");

    let out_file = dir.path().join("report.json");
    let out = homore(&["verify", "--config", path, "--format", "json", "--out", out_file.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out_file).unwrap()).unwrap();
    assert_schema(&written);

    std::fs::write(&cfg, r#"{"family": "weyl", "colour": "red"}"#).unwrap();
    assert_eq!(code(&homore(&["verify", "--config", path])), 2);
    std::fs::write(&cfg, "{not json").unwrap();
    assert_eq!(code(&homore(&["verify", "--config", path])), 2);
}

#[test]
fn seeds_do_not_change_exact_verdicts() {
    let (_, a) = json(&["unitalize", "--family", "weyl", "--k", "2", "--deg-x", "2", "--deg-y", "2", "--seed", "1"]);
    let (_, b) = json(&["unitalize", "--family", "weyl", "--k", "2", "--deg-x", "2", "--deg-y", "2", "--seed", "99"]);
    let statuses = |v: &Value| v["suites"].as_array().unwrap().iter().map(|s| s["status"].clone()).collect::<Vec<_>>();
    assert_eq!(statuses(&a), statuses(&b));
    assert_eq!(b["seed"], 99);
}
