//! Library side of the `homore` command: literal parsing, configuration,
//! suite execution and report rendering.

pub mod config;
pub mod output;
pub mod parse;
pub mod run;

use std::io::Write;
use std::path::Path;

use config::{Args, Format, RunConfig, Suite};
use run::RunError;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

fn emit(out: Option<&Path>, text: &str) -> Result<(), std::io::Error> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn fail(e: &RunError) -> u8 {
    eprintln!("error: {e}");
    if e.is_invalid_input() {
        EXIT_INVALID
    } else {
        EXIT_FAIL
    }
}

fn finish(cfg: &RunConfig, text: String, code: u8) -> u8 {
    match emit(cfg.out.as_deref(), &text) {
        Ok(()) => code,
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            EXIT_INVALID
        }
    }
}

/// `verify`, or `unitalize` when `forced` is the unitalization suite.
pub fn cmd_verify(args: &Args, forced: Option<Suite>) -> u8 {
    let mut cfg = match config::resolve(args) {
        Ok(cfg) => cfg,
        Err(e) => return fail(&e.into()),
    };
    if let Some(s) = forced {
        cfg.suite = s;
    }
    let v = match run::verify(&cfg) {
        Ok(v) => v,
        Err(e) => return fail(&e),
    };
    let code = if v.passed() { EXIT_PASS } else { EXIT_FAIL };
    let text = match cfg.format {
        Format::Text => output::verification_text(&cfg, &v),
        Format::Json => format!("{:#}\n", output::verification_json(&cfg, &v)),
    };
    finish(&cfg, text, code)
}

pub fn cmd_reduce(args: &Args) -> u8 {
    let cfg = match config::resolve(args) {
        Ok(cfg) => cfg,
        Err(e) => return fail(&e.into()),
    };
    let trace = match run::reduce(&cfg) {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    let text = match cfg.format {
        Format::Text => output::trace_text(&trace),
        Format::Json => format!("{:#}\n", output::trace_json(&cfg, &trace)),
    };
    finish(&cfg, text, EXIT_PASS)
}
