//! Ore polynomials `Σ a_i X^i` over `R = K[Y]` and their products.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::homcheck::TwistTable;
use crate::maps::{pi_rows, MapSpec};
use crate::report::Bounds;
use crate::ring::{join_terms, render_power, Polynomial, Scalar};

/// A finitely supported element `Σ a_i X^i`, stored sparsely by X-degree.
#[derive(Clone, PartialEq, Eq)]
pub struct OrePoly<S: Scalar> {
    terms: BTreeMap<usize, Polynomial<S>>,
}

impl<S: Scalar> Default for OrePoly<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> OrePoly<S> {
    pub fn zero() -> Self {
        OrePoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn from_poly(a: Polynomial<S>) -> Self {
        Self::monomial(a, 0)
    }

    pub fn constant(c: S) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    /// `a·X^m`.
    pub fn monomial(a: Polynomial<S>, m: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !a.is_zero() {
            terms.insert(m, a);
        }
        OrePoly { terms }
    }

    /// `X^m`, i.e. `1·X^m`.
    pub fn x_pow(m: usize) -> Self {
        Self::monomial(Polynomial::one(), m)
    }

    pub fn x() -> Self {
        Self::x_pow(1)
    }

    pub fn y() -> Self {
        Self::from_poly(Polynomial::var())
    }

    /// `Y^d X^m` with coefficient one.
    pub fn basis_monomial(d: usize, m: usize) -> Self {
        Self::monomial(Polynomial::monomial(S::one(), d), m)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Polynomial<S>)>) -> Self {
        let mut out = Self::zero();
        for (m, a) in terms {
            out.add_term(m, &a);
        }
        out
    }

    fn add_term(&mut self, m: usize, a: &Polynomial<S>) {
        if a.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.plus(a);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, a.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// X-degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    /// Largest Y-degree among coefficients; `None` for zero.
    pub fn y_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(|a| a.degree()).max()
    }

    pub fn coeff(&self, m: usize) -> Polynomial<S> {
        self.terms.get(&m).cloned().unwrap_or_else(Polynomial::zero)
    }

    /// Nonzero `(m, a_m)` in increasing X-degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (usize, &Polynomial<S>)> {
        self.terms.iter().map(|(m, a)| (*m, a))
    }

    pub fn leading_coeff(&self) -> Option<&Polynomial<S>> {
        self.terms.values().next_back()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, a) in other.terms() {
            out.add_term(m, a);
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    pub fn negated(&self) -> Self {
        self.map_coeffs(|a| a.negated())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map_coeffs(|a| a.scale(c))
    }

    /// Applies `f` to every coefficient, keeping X-degrees.
    pub fn map_coeffs(&self, f: impl Fn(&Polynomial<S>) -> Polynomial<S>) -> Self {
        Self::from_terms(self.terms().map(|(m, a)| (m, f(a))))
    }

    /// True when every coefficient is a constant polynomial.
    pub fn has_scalar_coeffs(&self) -> bool {
        self.terms.values().all(|a| a.is_constant())
    }
}

impl<S: Scalar> fmt::Display for OrePoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms()
            .rev()
            .map(|(m, a)| {
                if m == 0 {
                    return a.to_string();
                }
                let x = render_power("X", m);
                let c = a.to_string();
                match c.as_str() {
                    "1" => x,
                    "-1" => format!("-{x}"),
                    _ if a.is_atomic() => format!("{c}*{x}"),
                    _ => format!("({c})*{x}"),
                }
            })
            .collect();
        write!(f, "{}", join_terms(&terms))
    }
}

impl<S: Scalar> fmt::Debug for OrePoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Every `Y^d X^m` with `d ≤ deg_y`, `m ≤ deg_x`, ordered by `(m, d)`.
pub fn monomial_grid<S: Scalar>(bounds: Bounds) -> Vec<OrePoly<S>> {
    (0..=bounds.deg_x)
        .flat_map(|m| (0..=bounds.deg_y).map(move |d| OrePoly::basis_monomial(d, m)))
        .collect()
}

/// A dense element with small integer coefficients in `[-5, 5]`.
pub fn random_ore_poly<S: Scalar, R: Rng>(rng: &mut R, bounds: Bounds) -> OrePoly<S> {
    OrePoly::from_terms((0..=bounds.deg_x).map(|m| {
        let coeffs = (0..=bounds.deg_y).map(|_| S::from_int(rng.gen_range(-5..=5))).collect();
        (m, Polynomial::from_coeffs(coeffs))
    }))
}

/// A dense polynomial in `Y` with small integer coefficients.
pub fn random_poly<S: Scalar, R: Rng>(rng: &mut R, deg_y: usize) -> Polynomial<S> {
    Polynomial::from_coeffs((0..=deg_y).map(|_| S::from_int(rng.gen_range(-5..=5))).collect())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OreError {
    #[error("star mode needs a homogeneous twist")]
    StarNeedsHomogeneousTwist,
    #[error("the closed differential form needs sigma = id (fails on {0})")]
    SigmaNotIdentity(String),
}

/// The product on the coefficient ring `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseProduct<S: Scalar> {
    /// The ordinary product of `K[Y]`.
    Plain,
    /// `a * b = α(a·b)`.
    Star(MapSpec<S>),
}

impl<S: Scalar> BaseProduct<S> {
    pub fn apply(&self, a: &Polynomial<S>, b: &Polynomial<S>) -> Polynomial<S> {
        match self {
            BaseProduct::Plain => a.times(b),
            BaseProduct::Star(alpha) => alpha.apply(&a.times(b)),
        }
    }
}

/// The data `(R, ·, σ, δ)` from which an Ore extension is built.
#[derive(Clone, Debug)]
pub struct BaseRing<S: Scalar> {
    pub sigma: MapSpec<S>,
    pub delta: MapSpec<S>,
    pub product: BaseProduct<S>,
}

impl<S: Scalar> BaseRing<S> {
    pub fn new(sigma: MapSpec<S>, delta: MapSpec<S>, product: BaseProduct<S>) -> Self {
        BaseRing { sigma, delta, product }
    }

    pub fn mul(&self, a: &Polynomial<S>, b: &Polynomial<S>) -> Polynomial<S> {
        self.product.apply(a, b)
    }

    /// Rows `0..=max_m` of `π` applied to `p`.
    pub fn pi_rows(&self, max_m: usize, p: &Polynomial<S>) -> Vec<Vec<Polynomial<S>>> {
        pi_rows(max_m, &self.sigma, &self.delta, p)
    }

    /// `aX^m · bX^n = Σ_i (a·π^m_i(b)) X^{i+n}`, extended bilinearly.
    pub fn ore_mul(&self, p: &OrePoly<S>, q: &OrePoly<S>) -> OrePoly<S> {
        match p.degree() {
            Some(max_m) => self.ore_mul_prepared(p, &self.prepare(q, max_m)),
            None => OrePoly::zero(),
        }
    }

    /// Computes the `π` rows of every coefficient of `q` up to row `max_m`.
    pub fn prepare(&self, q: &OrePoly<S>, max_m: usize) -> PreparedRight<S> {
        let terms = q.terms().map(|(n, b)| (n, self.pi_rows(max_m, b))).collect();
        PreparedRight { max_m, terms }
    }

    /// [`BaseRing::ore_mul`] against a prepared right factor.
    ///
    /// Panics if `p` has X-degree above the prepared `max_m`.
    pub fn ore_mul_prepared(&self, p: &OrePoly<S>, q: &PreparedRight<S>) -> OrePoly<S> {
        let mut out = OrePoly::zero();
        if let Some(d) = p.degree() {
            assert!(d <= q.max_m, "left factor of X-degree {d} exceeds prepared rows {}", q.max_m);
        }
        for (n, rows) in &q.terms {
            for (m, a) in p.terms() {
                for (i, pib) in rows[m].iter().enumerate() {
                    if !pib.is_zero() {
                        out.add_term(i + n, &self.mul(a, pib));
                    }
                }
            }
        }
        out
    }
}

/// A right factor with its `π` rows computed once, for multiplying many
/// left factors of X-degree at most `max_m`.
#[derive(Clone, Debug)]
pub struct PreparedRight<S: Scalar> {
    max_m: usize,
    terms: Vec<(usize, Vec<Vec<Polynomial<S>>>)>,
}

impl<S: Scalar> PreparedRight<S> {
    pub fn max_m(&self) -> usize {
        self.max_m
    }
}

/// How the twisting map acts on `R[X;σ,δ]`.
#[derive(Clone, Debug)]
pub enum Twist<S: Scalar> {
    /// `α(aX^m) = α(a)X^m`.
    Homogeneous(MapSpec<S>),
    /// `α(aX^m) = Σ_i α_{i+1,m+1}(a) X^i`.
    Table(TwistTable<S>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// The Ore product over `K[Y]`; the twist only enters the hom-associativity identity.
    Plain,
    /// `p * q = α(p·q)`.
    Star,
}

/// An Ore extension of `K[Y]` together with a twisting map.
#[derive(Clone, Debug)]
pub struct OreContext<S: Scalar> {
    sigma: MapSpec<S>,
    delta: MapSpec<S>,
    twist: Twist<S>,
    mode: Mode,
    plain: BaseRing<S>,
}

impl<S: Scalar> OreContext<S> {
    pub fn new(sigma: MapSpec<S>, delta: MapSpec<S>, twist: Twist<S>, mode: Mode) -> Result<Self, OreError> {
        if mode == Mode::Star && !matches!(twist, Twist::Homogeneous(_)) {
            return Err(OreError::StarNeedsHomogeneousTwist);
        }
        let plain = BaseRing::new(sigma.clone(), delta.clone(), BaseProduct::Plain);
        Ok(OreContext { sigma, delta, twist, mode, plain })
    }

    /// The untwisted Ore extension, with identity twist.
    pub fn plain(sigma: MapSpec<S>, delta: MapSpec<S>) -> Self {
        Self::new(sigma, delta, Twist::Homogeneous(MapSpec::Identity), Mode::Plain).expect("plain mode")
    }

    /// The star deformation by a homogeneously extended `alpha`.
    pub fn star(sigma: MapSpec<S>, delta: MapSpec<S>, alpha: MapSpec<S>) -> Self {
        Self::new(sigma, delta, Twist::Homogeneous(alpha), Mode::Star).expect("homogeneous twist")
    }

    pub fn sigma(&self) -> &MapSpec<S> {
        &self.sigma
    }

    pub fn delta(&self) -> &MapSpec<S> {
        &self.delta
    }

    pub fn twist(&self) -> &Twist<S> {
        &self.twist
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// The homogeneous twist on `R`, if the twist is homogeneous.
    pub fn alpha(&self) -> Option<&MapSpec<S>> {
        match &self.twist {
            Twist::Homogeneous(a) => Some(a),
            Twist::Table(_) => None,
        }
    }

    /// Same maps, different mode.
    pub fn with_mode(&self, mode: Mode) -> Result<Self, OreError> {
        Self::new(self.sigma.clone(), self.delta.clone(), self.twist.clone(), mode)
    }

    /// The coefficient ring as seen by this context's multiplication. In
    /// star mode the product on `R` is `a * b = α(a·b)`, and the star product
    /// on `R[X;σ,δ]` is the Ore product over that ring.
    pub fn base_ring(&self) -> BaseRing<S> {
        match (&self.mode, &self.twist) {
            (Mode::Star, Twist::Homogeneous(alpha)) => {
                BaseRing::new(self.sigma.clone(), self.delta.clone(), BaseProduct::Star(alpha.clone()))
            }
            _ => self.plain.clone(),
        }
    }

    /// The untwisted product over `K[Y]`.
    pub fn ore_mul(&self, p: &OrePoly<S>, q: &OrePoly<S>) -> OrePoly<S> {
        self.plain.ore_mul(p, q)
    }

    /// `p * q = α(p·q)` for a homogeneous `α`.
    pub fn star_mul(&self, p: &OrePoly<S>, q: &OrePoly<S>) -> Result<OrePoly<S>, OreError> {
        match &self.twist {
            Twist::Homogeneous(alpha) => Ok(self.ore_mul(p, q).map_coeffs(|a| alpha.apply(a))),
            Twist::Table(_) => Err(OreError::StarNeedsHomogeneousTwist),
        }
    }

    /// Prepares `q` as a right factor for left factors of X-degree up to `max_m`.
    pub fn prepare(&self, q: &OrePoly<S>, max_m: usize) -> PreparedRight<S> {
        self.plain.prepare(q, max_m)
    }

    /// [`OreContext::mul`] against a prepared right factor.
    pub fn mul_prepared(&self, p: &OrePoly<S>, q: &PreparedRight<S>) -> OrePoly<S> {
        let product = self.plain.ore_mul_prepared(p, q);
        match (self.mode, &self.twist) {
            (Mode::Star, Twist::Homogeneous(alpha)) => product.map_coeffs(|a| alpha.apply(a)),
            _ => product,
        }
    }

    /// The product selected by the mode.
    pub fn mul(&self, p: &OrePoly<S>, q: &OrePoly<S>) -> OrePoly<S> {
        match self.mode {
            Mode::Plain => self.ore_mul(p, q),
            Mode::Star => self.star_mul(p, q).expect("checked at construction"),
        }
    }

    /// `α(p)`. A table twist is zero outside its window.
    pub fn twist_apply(&self, p: &OrePoly<S>) -> OrePoly<S> {
        match &self.twist {
            Twist::Homogeneous(alpha) => p.map_coeffs(|a| alpha.apply(a)),
            Twist::Table(table) => table.apply(p),
        }
    }

    /// `[p, q] = pq - qp` under the mode's product.
    pub fn commutator(&self, p: &OrePoly<S>, q: &OrePoly<S>) -> OrePoly<S> {
        self.mul(p, q).minus(&self.mul(q, p))
    }

    /// `aX^n · b = Σ_i C(n,i)·a·δ^{n-i}(b) X^i`, valid when `σ = id`.
    ///
    /// The untwisted product is used. `σ` is checked against the identity on
    /// every monomial up to the degree of `b`.
    pub fn diff_mult(&self, a: &Polynomial<S>, n: usize, b: &Polynomial<S>) -> Result<OrePoly<S>, OreError> {
        let deg = b.degree().unwrap_or(0).max(1);
        if !self.sigma.is_identity_up_to(deg) {
            return Err(OreError::SigmaNotIdentity(format!("monomials up to Y^{deg}")));
        }
        let mut powers = Vec::with_capacity(n + 1);
        powers.push(b.clone());
        for j in 1..=n {
            let next = self.delta.apply(&powers[j - 1]);
            powers.push(next);
        }
        let mut out = OrePoly::zero();
        for i in 0..=n {
            let c = S::from_int(binomial(n, i));
            out.add_term(i, &a.times(&powers[n - i]).scale(&c));
        }
        Ok(out)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, t| acc * (n - t) as i64 / (t as i64 + 1))
}
