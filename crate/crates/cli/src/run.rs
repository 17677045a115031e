//! Suite execution.

use homore::catalog::{make_enveloping, make_quantum_plane, make_weyl, simplicity_reduce, CatalogError, FamilySpec, ReduceError, ReductionTrace};
use homore::homcheck::{
    check_general_condition, check_hom_associativity, check_homogeneous_corollaries, check_multiplicative_from_fixed_unit,
    check_necessary_conditions, check_pi_sum_condition, check_star_sigma_derivation, check_weak_unit,
    check_weak_unit_lemma, hom_associativity_sides, HomError, TwistTable,
};
use homore::ore::{monomial_grid, OrePoly};
use homore::report::{compare, run_cases, Bounds, Counterexample, Report};
use homore::ring::{ParamPoly, Rational, Scalar, KQ};
use homore::unitalization::{
    check_characteristic, check_embedding, check_hom_ideal, check_unitalization, OreAlgebra, WeakUnitalization,
    RANDOM_SAMPLES,
};
use thiserror::Error;

use crate::config::{ConfigError, FamilyName, ModeName, Param, RunConfig, Suite};
use crate::parse::{parse_ore_poly, Coefficient, ParseError};

/// Step budget for a single reduction.
pub const MAX_STEPS: usize = 64;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

impl RunError {
    /// Whether the error means the input was invalid (exit code 2) rather
    /// than that a computation failed (exit code 1).
    pub fn is_invalid_input(&self) -> bool {
        !matches!(self, RunError::Reduce(ReduceError::StepLimit { .. }))
    }
}

/// One check inside a suite.
#[derive(Clone, Debug)]
pub struct Item {
    pub suite: Suite,
    pub report: Report,
}

impl Item {
    pub fn name(&self) -> String {
        format!("{}/{}", self.suite.name(), self.report.property)
    }
}

#[derive(Clone, Debug)]
pub struct Verification {
    /// The family's defining relation, e.g. `X*Y - Y*X = 1`.
    pub relation: String,
    /// Characteristic of the coefficient ring.
    pub characteristic: u64,
    /// Sorted by suite, then in the order the checks were produced.
    pub items: Vec<Item>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.report.passed())
    }
}

/// The suites `cfg.suite` stands for, in output order.
pub fn expand_suites(cfg: &RunConfig) -> Result<Vec<Suite>, ConfigError> {
    let reducible = cfg.family == FamilyName::Weyl && !cfg.is_symbolic();
    let mut suites = match cfg.suite {
        Suite::All => {
            let mut all = vec![Suite::Axioms, Suite::Corollaries, Suite::GeneralTable, Suite::Unitalization];
            if reducible {
                all.push(Suite::Reduce);
            }
            all
        }
        Suite::Reduce if !reducible => {
            return Err(ConfigError::Unsupported(
                "the reduce suite needs --family weyl with a rational --k".into(),
            ))
        }
        s => vec![s],
    };
    suites.sort();
    Ok(suites)
}

pub fn verify(cfg: &RunConfig) -> Result<Verification, RunError> {
    let suites = expand_suites(cfg)?;
    let mut out = if cfg.is_symbolic() {
        verify_in::<ParamPoly<KQ>>(cfg, &suites)?
    } else {
        verify_in::<Rational>(cfg, &suites)?
    };
    if suites.contains(&Suite::Reduce) {
        out.items.extend(reduce_suite(cfg)?.into_iter().map(|report| Item { suite: Suite::Reduce, report }));
    }
    out.items.sort_by_key(|i| i.suite);
    Ok(out)
}

fn param<S: Coefficient>(p: &Param, name: &str) -> S {
    match p {
        Param::Value(v) => S::from_rational(v),
        Param::Symbolic => S::symbol(name).expect("symbolic runs use a ring with parameters"),
    }
}

pub fn family<S: Coefficient>(cfg: &RunConfig) -> Result<FamilySpec<S>, RunError> {
    let k = param::<S>(&cfg.k, "k");
    let spec = match cfg.family {
        FamilyName::QuantumPlane => {
            let q = cfg.q.as_ref().expect("resolved configs always carry q for the quantum plane");
            make_quantum_plane(param(q, "q"), k)?
        }
        FamilyName::Enveloping => make_enveloping(k)?,
        FamilyName::Weyl => make_weyl(k),
    };
    Ok(spec.with_mode(cfg.mode.into()))
}

fn bounds(cfg: &RunConfig) -> Bounds {
    Bounds::new(cfg.deg_x, cfg.deg_y).expect("validated bounds")
}

/// An unmet precondition becomes a failing report of its own.
fn precondition(r: Result<Report, HomError>) -> Result<Report, RunError> {
    match r {
        Ok(rep) => Ok(rep),
        Err(HomError::Precondition(rep)) => {
            let mut rep = *rep;
            rep.property = format!("precondition_{}", rep.property);
            Ok(rep)
        }
        Err(e) => Err(e.into()),
    }
}

fn preconditions(r: Result<Vec<Report>, HomError>) -> Result<Vec<Report>, RunError> {
    match r {
        Ok(reps) => Ok(reps),
        Err(e) => Ok(vec![precondition(Err(e))?]),
    }
}

fn verify_in<S: Coefficient>(cfg: &RunConfig, suites: &[Suite]) -> Result<Verification, RunError> {
    let spec = family::<S>(cfg)?;
    let b = bounds(cfg);
    let mut items = Vec::new();
    for &suite in suites {
        let reports = match suite {
            Suite::Axioms => axioms(&spec, b),
            Suite::Corollaries => corollaries(&spec, b, cfg.seed)?,
            Suite::GeneralTable => general_table(&spec, b)?,
            Suite::Unitalization => unitalization(&spec, b, cfg.seed),
            Suite::Reduce | Suite::All => continue,
        };
        items.extend(reports.into_iter().map(|report| Item { suite, report }));
    }
    let characteristic = homore::ring::characteristic(&S::descriptor());
    Ok(Verification { relation: spec.relation_text(), characteristic, items })
}

fn axioms<S: Scalar>(spec: &FamilySpec<S>, b: Bounds) -> Vec<Report> {
    let ctx = spec.context();
    let (x, y) = (OrePoly::x(), OrePoly::y());
    let witness = run_cases("hom_associativity_at_x_y_y", b, &[()], |_| {
        let (lhs, rhs) = hom_associativity_sides(ctx, &x, &y, &y);
        compare(lhs, rhs, || vec!["a = X".into(), "b = Y".into(), "c = Y".into()])
    });
    vec![
        check_hom_associativity(ctx, b),
        witness,
        check_weak_unit(ctx, &OrePoly::one(), b),
        spec.check_relation(),
    ]
}

fn corollaries<S: Scalar>(spec: &FamilySpec<S>, b: Bounds, seed: u64) -> Result<Vec<Report>, RunError> {
    let ctx = spec.context();
    let alpha = spec.alpha();
    let base = ctx.base_ring();
    let mut out = check_homogeneous_corollaries(&base, alpha, b.deg_y);
    out.push(check_pi_sum_condition(&base, alpha, b));
    out.extend(check_star_sigma_derivation(ctx.sigma(), ctx.delta(), alpha, b.deg_y));
    out.push(precondition(check_multiplicative_from_fixed_unit(ctx, &OrePoly::one(), b))?);
    if ctx.sigma().is_identity_up_to(b.deg_y) {
        let lemma = check_weak_unit_lemma(ctx, &homore::ring::Polynomial::one(), b, seed, RANDOM_SAMPLES);
        out.extend(preconditions(lemma)?);
    }
    Ok(out)
}

fn general_table<S: Scalar>(spec: &FamilySpec<S>, b: Bounds) -> Result<Vec<Report>, RunError> {
    let base = spec.context().base_ring();
    let table = TwistTable::homogeneous(spec.alpha().clone(), b.deg_x);
    let mut out = vec![check_general_condition(&base, &table, b)?];
    out.extend(check_necessary_conditions(&base, &table, b)?);
    Ok(out)
}

fn unitalization<S: Scalar>(spec: &FamilySpec<S>, b: Bounds, seed: u64) -> Vec<Report> {
    let mut out = check_unitalization(OreAlgebra(spec.context().clone()), b, seed);
    let u = WeakUnitalization::new(OreAlgebra(spec.context().clone()));
    out.push(check_embedding(&u, b, seed));
    out.push(check_hom_ideal(&u, b, seed));
    out.push(check_characteristic(&u, b, seed));
    out
}

/// `k` for the reduction: the plain product is the star product with `k = 0`.
fn reduction_k(cfg: &RunConfig) -> Result<Rational, ConfigError> {
    if cfg.family != FamilyName::Weyl {
        return Err(ConfigError::Unsupported("reduction is defined for --family weyl only".into()));
    }
    match (&cfg.k, cfg.mode) {
        (_, ModeName::Plain) => Ok(Rational::zero()),
        (Param::Value(k), ModeName::Star) => Ok(k.clone()),
        (Param::Symbolic, ModeName::Star) => Err(ConfigError::Unsupported("reduction needs a rational --k".into())),
    }
}

fn reduce_suite(cfg: &RunConfig) -> Result<Vec<Report>, RunError> {
    let k = reduction_k(cfg)?;
    let b = bounds(cfg);
    let inputs = match &cfg.poly {
        Some(text) => {
            let p: OrePoly<Rational> = parse_ore_poly(text)?;
            if p.is_zero() {
                return Err(ReduceError::ZeroPolynomial.into());
            }
            vec![p]
        }
        None => monomial_grid(b),
    };
    let rep = run_cases("simplicity_reduce", b, &inputs, |p| {
        let named = || vec![format!("k = {k}"), format!("p = {p}")];
        match simplicity_reduce(&k, p, MAX_STEPS) {
            Err(e) => Some(Counterexample::new(named(), e, "1")),
            Ok(trace) => {
                let limit = p.degree().unwrap_or(0) + p.y_degree().unwrap_or(0) + 2;
                if !trace.verify() {
                    Some(Counterexample::new(named(), "a trace that does not replay", "a replayable trace"))
                } else if trace.len() > limit {
                    Some(Counterexample::new(named(), format!("{} steps", trace.len()), format!("at most {limit} steps")))
                } else {
                    compare(trace.last().clone(), OrePoly::one(), named)
                }
            }
        }
    });
    Ok(vec![rep])
}

/// The trace for `reduce --poly`.
pub fn reduce(cfg: &RunConfig) -> Result<ReductionTrace, RunError> {
    let k = reduction_k(cfg)?;
    let text = cfg.poly.as_deref().ok_or_else(|| ConfigError::Unsupported("reduce needs --poly".into()))?;
    let p: OrePoly<Rational> = parse_ore_poly(text)?;
    Ok(simplicity_reduce(&k, &p, MAX_STEPS)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{merge, Args, FileConfig};

    fn cfg(f: impl FnOnce(&mut Args)) -> RunConfig {
        let mut a = Args { deg_x: Some(2), deg_y: Some(2), ..Args::default() };
        f(&mut a);
        merge(&a, FileConfig::default()).unwrap()
    }

    #[test]
    fn suite_expansion() {
        let weyl = cfg(|_| {});
        assert_eq!(expand_suites(&weyl).unwrap().len(), 5);
        let qp = cfg(|a| a.family = Some(FamilyName::QuantumPlane));
        assert!(!expand_suites(&qp).unwrap().contains(&Suite::Reduce));
        let sym = cfg(|a| a.k = Some("symbolic".into()));
        assert!(!expand_suites(&sym).unwrap().contains(&Suite::Reduce));
        assert!(expand_suites(&cfg(|a| {
            a.family = Some(FamilyName::Enveloping);
            a.suite = Some(Suite::Reduce);
        }))
        .is_err());
    }

    #[test]
    fn items_are_grouped_by_suite() {
        let v = verify(&cfg(|a| a.k = Some("2".into()))).unwrap();
        assert!(v.passed());
        assert!(v.items.windows(2).all(|w| w[0].suite <= w[1].suite));
        assert_eq!(v.relation, "X*Y - Y*X = 1");
        assert!(v.items.iter().any(|i| i.name() == "axioms/hom_associativity"));
    }

    #[test]
    fn reduce_needs_a_literal() {
        assert!(matches!(reduce(&cfg(|_| {})), Err(e) if e.is_invalid_input()));
        let t = reduce(&cfg(|a| a.poly = Some("X^2 + Y".into()))).unwrap();
        assert!(t.len() <= MAX_STEPS);
    }
}
