//! Verification reports shared by every bounded check.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

/// Degree bounds for a truncated verification: X-degree ≤ `deg_x` and
/// Y-degree ≤ `deg_y` for every monomial input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub deg_x: usize,
    pub deg_y: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("degree bounds must be at least 1 (got deg_x = {deg_x}, deg_y = {deg_y})")]
pub struct BoundsError {
    pub deg_x: usize,
    pub deg_y: usize,
}

impl Bounds {
    pub fn new(deg_x: usize, deg_y: usize) -> Result<Self, BoundsError> {
        if deg_x == 0 || deg_y == 0 {
            return Err(BoundsError { deg_x, deg_y });
        }
        Ok(Bounds { deg_x, deg_y })
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "deg_x <= {}, deg_y <= {}", self.deg_x, self.deg_y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A concrete input on which the two sides of an identity differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Named inputs, rendered as `name = value`.
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

impl Counterexample {
    pub fn new(inputs: Vec<String>, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Self {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        debug_assert_ne!(lhs, rhs, "counterexample sides must differ");
        Counterexample { inputs, lhs, rhs }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at ({}): lhs = {}, rhs = {}", self.inputs.join(", "), self.lhs, self.rhs)
    }
}

/// Outcome of one bounded check.
///
/// A failing report always carries a counterexample whose sides differ.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub property: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub bounds: Bounds,
    /// Number of input instances examined (all of them on success).
    pub cases: usize,
    pub millis: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Folds several reports on the same property into one; the first
    /// failure wins.
    pub fn merge(property: &str, bounds: Bounds, parts: Vec<Report>) -> Report {
        let cases = parts.iter().map(|r| r.cases).sum();
        let millis = parts.iter().map(|r| r.millis).sum();
        let seed = parts.iter().find_map(|r| r.seed);
        let counterexample = parts.into_iter().find_map(|r| r.counterexample);
        Report {
            property: property.to_string(),
            status: if counterexample.is_some() { Status::Fail } else { Status::Pass },
            counterexample,
            bounds,
            cases,
            millis,
            seed,
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(f, "[{tag}] {} ({}; {} cases, {} ms)", self.property, self.bounds, self.cases, self.millis)?;
        if let Some(cx) = &self.counterexample {
            write!(f, "\n       counterexample {cx}")?;
        }
        Ok(())
    }
}

/// Runs `check` over every case, in parallel, reporting the failure that
/// comes first in the order of `cases`.
pub fn run_cases<C, F>(property: &str, bounds: Bounds, cases: &[C], check: F) -> Report
where
    C: Sync,
    F: Fn(&C) -> Option<Counterexample> + Sync + Send,
{
    let start = Instant::now();
    let counterexample = cases.par_iter().find_map_first(check);
    Report {
        property: property.to_string(),
        status: if counterexample.is_some() { Status::Fail } else { Status::Pass },
        counterexample,
        bounds,
        cases: cases.len(),
        millis: start.elapsed().as_millis() as u64,
        seed: None,
    }
}

/// `None` when both sides agree, otherwise a counterexample built lazily.
pub fn compare<T, I>(lhs: T, rhs: T, inputs: I) -> Option<Counterexample>
where
    T: PartialEq + fmt::Display,
    I: FnOnce() -> Vec<String>,
{
    (lhs != rhs).then(|| Counterexample::new(inputs(), lhs, rhs))
}
