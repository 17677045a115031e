//! Command-line flags, JSON config files and the resolved run configuration.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use homore::ore::Mode;
use homore::ring::{Rational, Scalar};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Parser, Debug)]
#[command(name = "homore", version, about = "Verify hom-associative Ore extensions with exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run verification suites on a family member.
    Verify(Args),
    /// Reduce a nonzero element of the hom-associative Weyl algebra to 1.
    Reduce(Args),
    /// Check the weak unitalization of a family member.
    Unitalize(Args),
}

#[derive(clap::Args, Debug, Clone, Default)]
pub struct Args {
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    /// Twist parameter: a rational such as `3/2`, or `symbolic`.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    /// Quantum plane parameter: a rational or `symbolic`.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long = "deg-x")]
    pub deg_x: Option<usize>,
    #[arg(long = "deg-y")]
    pub deg_y: Option<usize>,
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeName>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON file with default values; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Ore polynomial literal, e.g. `(Y^2 + 2*Y)*X^3`.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    #[value(name = "quantum_plane")]
    QuantumPlane,
    Enveloping,
    Weyl,
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyName::QuantumPlane => "quantum_plane",
            FamilyName::Enveloping => "enveloping",
            FamilyName::Weyl => "weyl",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Axioms,
    Corollaries,
    GeneralTable,
    Unitalization,
    Reduce,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Corollaries => "corollaries",
            Suite::GeneralTable => "general-table",
            Suite::Unitalization => "unitalization",
            Suite::Reduce => "reduce",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    Plain,
    Star,
}

impl From<ModeName> for Mode {
    fn from(m: ModeName) -> Mode {
        match m {
            ModeName::Plain => Mode::Plain,
            ModeName::Star => Mode::Star,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

/// A family parameter: an exact rational or a free symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Value(Rational),
    Symbolic,
}

impl Param {
    pub fn is_zero(&self) -> bool {
        matches!(self, Param::Value(v) if v.is_zero())
    }
}

impl FromStr for Param {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        if s.trim() == "symbolic" {
            return Ok(Param::Symbolic);
        }
        s.parse().map(Param::Value).map_err(|_| ConfigError::BadParam(s.to_string()))
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Value(v) => write!(f, "{v}"),
            Param::Symbolic => f.write_str("symbolic"),
        }
    }
}

impl Serialize for Param {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A parameter as written in a config file: `"3/2"`, `"symbolic"` or `2`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ParamText {
    Int(i64),
    Text(String),
}

impl ParamText {
    fn resolve(&self) -> Result<Param, ConfigError> {
        match self {
            ParamText::Int(n) => Ok(Param::Value(Rational::integer(*n))),
            ParamText::Text(s) => s.parse(),
        }
    }
}

/// Contents of a `--config` file. Every field is optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub family: Option<FamilyName>,
    pub k: Option<ParamText>,
    pub q: Option<ParamText>,
    pub deg_x: Option<usize>,
    pub deg_y: Option<usize>,
    pub suite: Option<Suite>,
    pub mode: Option<ModeName>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub poly: Option<String>,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid parameter `{0}`: expected an exact rational such as 3/2 or `symbolic`")]
    BadParam(String),
    #[error("degree bounds must be at least 1 (got deg_x = {deg_x}, deg_y = {deg_y})")]
    Bounds { deg_x: usize, deg_y: usize },
    #[error("{family} needs a nonzero {param}")]
    ZeroParameter { family: FamilyName, param: &'static str },
    #[error("--q only applies to the quantum_plane family")]
    StrayQ,
    #[error("cannot read config file {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("invalid config file {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Unsupported(String),
}

/// A fully resolved and validated run configuration.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub family: FamilyName,
    pub k: Param,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<Param>,
    pub deg_x: usize,
    pub deg_y: usize,
    pub suite: Suite,
    pub mode: ModeName,
    pub seed: u64,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
}

impl RunConfig {
    /// Whether any parameter is a free symbol.
    pub fn is_symbolic(&self) -> bool {
        self.k == Param::Symbolic || self.q == Some(Param::Symbolic)
    }
}

pub const DEFAULT_BOUND: usize = 3;

/// Reads `--config` if given and applies the flags on top of it.
pub fn resolve(args: &Args) -> Result<RunConfig, ConfigError> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.clone(), source })?;
            serde_json::from_str(&text).map_err(|source| ConfigError::Json { path: path.clone(), source })?
        }
        None => FileConfig::default(),
    };
    merge(args, file)
}

/// Flags take precedence over file values, which take precedence over defaults.
pub fn merge(args: &Args, file: FileConfig) -> Result<RunConfig, ConfigError> {
    let family = args.family.or(file.family).unwrap_or(FamilyName::Weyl);
    let k = match (&args.k, &file.k) {
        (Some(s), _) => s.parse()?,
        (None, Some(t)) => t.resolve()?,
        (None, None) => Param::Value(Rational::one()),
    };
    let q = match (&args.q, &file.q) {
        (Some(s), _) => Some(s.parse()?),
        (None, Some(t)) => Some(t.resolve()?),
        (None, None) => None,
    };
    let q = match (family, q) {
        (FamilyName::QuantumPlane, q) => Some(q.unwrap_or(Param::Value(Rational::integer(2)))),
        (_, None) => None,
        (_, Some(_)) => return Err(ConfigError::StrayQ),
    };
    let deg_x = args.deg_x.or(file.deg_x).unwrap_or(DEFAULT_BOUND);
    let deg_y = args.deg_y.or(file.deg_y).unwrap_or(DEFAULT_BOUND);
    if deg_x == 0 || deg_y == 0 {
        return Err(ConfigError::Bounds { deg_x, deg_y });
    }
    let cfg = RunConfig {
        family,
        k,
        q,
        deg_x,
        deg_y,
        suite: args.suite.or(file.suite).unwrap_or(Suite::All),
        mode: args.mode.or(file.mode).unwrap_or(ModeName::Star),
        seed: args.seed.or(file.seed).unwrap_or(0),
        format: args.format.or(file.format).unwrap_or(Format::Text),
        out: args.out.clone().or(file.out),
        poly: args.poly.clone().or(file.poly),
    };
    validate(&cfg)?;
    Ok(cfg)
}

fn validate(cfg: &RunConfig) -> Result<(), ConfigError> {
    let zero = |param| ConfigError::ZeroParameter { family: cfg.family, param };
    match cfg.family {
        FamilyName::QuantumPlane => {
            if cfg.q.as_ref().is_some_and(Param::is_zero) {
                return Err(zero("q"));
            }
            if cfg.k.is_zero() {
                return Err(zero("k"));
            }
        }
        FamilyName::Enveloping if cfg.k.is_zero() => return Err(zero("k")),
        _ => {}
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(f: impl FnOnce(&mut Args)) -> Args {
        let mut a = Args::default();
        f(&mut a);
        a
    }

    #[test]
    fn defaults() {
        let cfg = merge(&Args::default(), FileConfig::default()).unwrap();
        assert_eq!(cfg.family, FamilyName::Weyl);
        assert_eq!(cfg.k, Param::Value(Rational::one()));
        assert_eq!(cfg.q, None);
        assert_eq!((cfg.deg_x, cfg.deg_y), (3, 3));
        assert_eq!(cfg.suite, Suite::All);
    }

    #[test]
    fn flags_override_file() {
        let file: FileConfig =
            serde_json::from_str(r#"{"family": "quantum_plane", "k": "3/2", "q": 5, "deg_x": 2, "suite": "general-table"}"#)
                .unwrap();
        let cfg = merge(&args(|a| a.k = Some("-2".into())), file).unwrap();
        assert_eq!(cfg.family, FamilyName::QuantumPlane);
        assert_eq!(cfg.k, Param::Value(Rational::integer(-2)));
        assert_eq!(cfg.q, Some(Param::Value(Rational::integer(5))));
        assert_eq!(cfg.deg_x, 2);
        assert_eq!(cfg.suite, Suite::GeneralTable);
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(merge(&args(|a| a.deg_x = Some(0)), FileConfig::default()), Err(ConfigError::Bounds { .. })));
        assert!(matches!(merge(&args(|a| a.k = Some("1.5".into())), FileConfig::default()), Err(ConfigError::BadParam(_))));
        let env_zero = args(|a| {
            a.family = Some(FamilyName::Enveloping);
            a.k = Some("0".into());
        });
        assert!(matches!(merge(&env_zero, FileConfig::default()), Err(ConfigError::ZeroParameter { .. })));
        assert!(matches!(merge(&args(|a| a.q = Some("2".into())), FileConfig::default()), Err(ConfigError::StrayQ)));
        assert!(serde_json::from_str::<FileConfig>(r#"{"colour": 1}"#).is_err());
        let weyl_zero = merge(&args(|a| a.k = Some("0".into())), FileConfig::default()).unwrap();
        assert_eq!(weyl_zero.k, Param::Value(Rational::zero()));
    }

    #[test]
    fn symbolic_params() {
        let cfg = merge(&args(|a| a.k = Some("symbolic".into())), FileConfig::default()).unwrap();
        assert!(cfg.is_symbolic());
        assert_eq!(serde_json::to_value(&cfg).unwrap()["k"], "symbolic");
    }
}
