//! The quantum plane, enveloping algebra and Weyl algebra families, the
//! twisting-map classifier and the commutator descent for Weyl algebras.

use std::fmt;

use thiserror::Error;

use crate::maps::{check_commute, MapSpec};
use crate::ore::{Mode, OreContext, OrePoly};
use crate::report::{compare, run_cases, Bounds, Report};
use crate::ring::{Polynomial, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family<S: Scalar> {
    /// `σ(Y) = qY`, `δ = 0`, `α_k(Y) = kY`.
    QuantumPlane { q: S, k: S },
    /// `σ = id`, `δ = Y·d/dY`, `α_k(Y) = kY`.
    Enveloping { k: S },
    /// `σ = id`, `δ = d/dY`, `α_k(Y) = Y + k`.
    Weyl { k: S },
}

impl<S: Scalar> Family<S> {
    pub fn name(&self) -> &'static str {
        match self {
            Family::QuantumPlane { .. } => "quantum_plane",
            Family::Enveloping { .. } => "enveloping",
            Family::Weyl { .. } => "weyl",
        }
    }

    pub fn k(&self) -> &S {
        match self {
            Family::QuantumPlane { k, .. } | Family::Enveloping { k } | Family::Weyl { k } => k,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("{family} needs a nonzero {param}")]
    ZeroParameter { family: &'static str, param: &'static str },
}

/// A member of one of the three families, realized as an [`OreContext`].
#[derive(Clone, Debug)]
pub struct FamilySpec<S: Scalar> {
    family: Family<S>,
    ctx: OreContext<S>,
}

pub fn make_quantum_plane<S: Scalar>(q: S, k: S) -> Result<FamilySpec<S>, CatalogError> {
    for (value, param) in [(&q, "q"), (&k, "k")] {
        if value.is_zero() {
            return Err(CatalogError::ZeroParameter { family: "quantum_plane", param });
        }
    }
    let ctx = OreContext::star(MapSpec::scaling(q.clone()), MapSpec::Zero, MapSpec::scaling(k.clone()));
    Ok(FamilySpec { family: Family::QuantumPlane { q, k }, ctx })
}

pub fn make_enveloping<S: Scalar>(k: S) -> Result<FamilySpec<S>, CatalogError> {
    if k.is_zero() {
        return Err(CatalogError::ZeroParameter { family: "enveloping", param: "k" });
    }
    let ctx = OreContext::star(MapSpec::Identity, MapSpec::y_d_dy(), MapSpec::scaling(k.clone()));
    Ok(FamilySpec { family: Family::Enveloping { k }, ctx })
}

pub fn make_weyl<S: Scalar>(k: S) -> FamilySpec<S> {
    let ctx = OreContext::star(MapSpec::Identity, MapSpec::d_dy(), MapSpec::shift(k.clone()));
    FamilySpec { family: Family::Weyl { k }, ctx }
}

impl<S: Scalar> FamilySpec<S> {
    pub fn family(&self) -> &Family<S> {
        &self.family
    }

    pub fn name(&self) -> &'static str {
        self.family.name()
    }

    pub fn context(&self) -> &OreContext<S> {
        &self.ctx
    }

    pub fn alpha(&self) -> &MapSpec<S> {
        self.ctx.alpha().expect("families use a homogeneous twist")
    }

    /// The same member with the product switched to `mode`. In plain mode
    /// the twist is kept but only enters the hom-associativity identity.
    pub fn with_mode(&self, mode: Mode) -> Self {
        let ctx = self.ctx.with_mode(mode).expect("homogeneous twist");
        FamilySpec { family: self.family.clone(), ctx }
    }

    /// The commutation relation as a pair of sides that must agree. In plain
    /// mode `k` plays no role and the classical relation is used.
    ///
    /// For the quantum plane the right side is `kq` times the normal-form
    /// monomial `YX`; the star product `Y*X` itself equals `kYX`.
    pub fn relation(&self) -> (OrePoly<S>, OrePoly<S>) {
        let (x, y) = (OrePoly::x(), OrePoly::y());
        let k = match self.ctx.mode() {
            Mode::Star => self.family.k().clone(),
            Mode::Plain => S::one(),
        };
        let xy = self.ctx.mul(&x, &y);
        let yx = || self.ctx.mul(&y, &x);
        match &self.family {
            Family::QuantumPlane { q, .. } => (xy, OrePoly::monomial(Polynomial::monomial(k.times(q), 1), 1)),
            Family::Enveloping { .. } => (xy.minus(&yx()), y.scale(&k)),
            Family::Weyl { .. } => (xy.minus(&yx()), OrePoly::one()),
        }
    }

    /// The relation in words, e.g. `X*Y - Y*X = 1`.
    pub fn relation_text(&self) -> String {
        let paren = |s: String| if s.contains(' ') { format!("({s})") } else { s };
        let (op, k) = match self.ctx.mode() {
            Mode::Star => ("*", format!("{}*", paren(self.family.k().to_string()))),
            Mode::Plain => ("·", String::new()),
        };
        match &self.family {
            Family::QuantumPlane { q, .. } => format!("X{op}Y = {k}{}*YX", paren(q.to_string())),
            Family::Enveloping { .. } => format!("X{op}Y - Y{op}X = {k}Y"),
            Family::Weyl { .. } => format!("X{op}Y - Y{op}X = 1"),
        }
    }

    pub fn check_relation(&self) -> Report {
        let bounds = Bounds { deg_x: 1, deg_y: 1 };
        run_cases("commutation_relation", bounds, &[()], |_| {
            let (lhs, rhs) = self.relation();
            compare(lhs, rhs, || vec![format!("relation: {}", self.relation_text())])
        })
    }
}

/// Whether the endomorphism `Y ↦ image` commutes with `σ` and `δ` up to a
/// degree bound, the condition for it to be a valid homogeneous twist.
#[derive(Clone, Debug)]
pub struct Classification {
    pub with_sigma: Report,
    pub with_delta: Report,
    pub deg_bound: usize,
}

impl Classification {
    pub fn admitted(&self) -> bool {
        self.with_sigma.passed() && self.with_delta.passed()
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.admitted() {
            return write!(f, "commutes with sigma and delta up to degree {}", self.deg_bound);
        }
        for (name, rep) in [("sigma", &self.with_sigma), ("delta", &self.with_delta)] {
            if let Some(cx) = &rep.counterexample {
                return write!(f, "does not commute with {name}: {cx}");
            }
        }
        unreachable!("a rejected candidate has a failing report")
    }
}

pub fn endomorphism_classifier<S: Scalar>(
    family: &FamilySpec<S>,
    image: &Polynomial<S>,
    deg_bound: usize,
) -> Classification {
    let alpha = MapSpec::endo(image.clone());
    Classification {
        with_sigma: check_commute(&alpha, family.ctx.sigma(), deg_bound),
        with_delta: check_commute(&alpha, family.ctx.delta(), deg_bound),
        deg_bound,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// `p ↦ [X, p]`
    CommutatorX,
    /// `p ↦ [p, Y]`
    CommutatorY,
    /// `p ↦ c * p`
    Scale(Rational),
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepKind::CommutatorX => write!(f, "[X, p]"),
            StepKind::CommutatorY => write!(f, "[p, Y]"),
            StepKind::Scale(c) => write!(f, "{c} * p"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub kind: StepKind,
    pub result: OrePoly<Rational>,
}

/// Every intermediate element of a descent from `start` to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub k: Rational,
    pub start: OrePoly<Rational>,
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last(&self) -> &OrePoly<Rational> {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }

    /// Recomputes every step from its predecessor.
    pub fn verify(&self) -> bool {
        let ctx = make_weyl(self.k.clone()).ctx;
        let mut cur = self.start.clone();
        for step in &self.steps {
            let next = apply_step(&ctx, &step.kind, &cur);
            if next != step.result {
                return false;
            }
            cur = next;
        }
        cur == OrePoly::one()
    }
}

impl fmt::Display for ReductionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k = {}", self.k)?;
        write!(f, "p = {}", self.start)?;
        for (i, step) in self.steps.iter().enumerate() {
            write!(f, "\n{}. {} = {}", i + 1, step.kind, step.result)?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("cannot reduce the zero polynomial")]
    ZeroPolynomial,
    #[error("reduction did not finish within {max_steps} steps")]
    StepLimit { max_steps: usize, partial: Box<ReductionTrace> },
}

fn apply_step(ctx: &OreContext<Rational>, kind: &StepKind, p: &OrePoly<Rational>) -> OrePoly<Rational> {
    match kind {
        StepKind::CommutatorX => ctx.commutator(&OrePoly::x(), p),
        StepKind::CommutatorY => ctx.commutator(p, &OrePoly::y()),
        StepKind::Scale(c) => ctx.mul(&OrePoly::constant(c.clone()), p),
    }
}

/// Drives a nonzero element of the hom-associative Weyl algebra with
/// parameter `k` to 1 inside the ideal it generates: commutators with `X`
/// until every coefficient is a scalar, then commutators with `Y` until the
/// X-degree is zero, then one left multiplication by the inverse scalar.
pub fn simplicity_reduce(
    k: &Rational,
    p: &OrePoly<Rational>,
    max_steps: usize,
) -> Result<ReductionTrace, ReduceError> {
    if p.is_zero() {
        return Err(ReduceError::ZeroPolynomial);
    }
    let ctx = make_weyl(k.clone()).ctx;
    let mut trace = ReductionTrace { k: k.clone(), start: p.clone(), steps: Vec::new() };
    let push = |trace: &mut ReductionTrace, kind: StepKind| {
        if trace.steps.len() == max_steps {
            return Err(ReduceError::StepLimit { max_steps, partial: Box::new(trace.clone()) });
        }
        let result = apply_step(&ctx, &kind, trace.last());
        trace.steps.push(ReductionStep { kind, result });
        Ok(())
    };
    while !trace.last().has_scalar_coeffs() {
        push(&mut trace, StepKind::CommutatorX)?;
    }
    while trace.last().degree().unwrap_or(0) > 0 {
        push(&mut trace, StepKind::CommutatorY)?;
    }
    let c = trace.last().coeff(0).coeff(0);
    let inv = c.try_inverse().expect("a nonzero rational is invertible");
    push(&mut trace, StepKind::Scale(inv))?;
    Ok(trace)
}

/// The preimage `Σ q_i(Y - k) X^i`, whose star product with 1 is `q`.
pub fn regeneration_preimage(k: &Rational, q: &OrePoly<Rational>) -> OrePoly<Rational> {
    let back = MapSpec::shift(k.negate());
    q.map_coeffs(|a| back.apply(a))
}
