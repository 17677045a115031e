use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::Scalar;

/// Dense univariate polynomial in `Y` over a scalar ring.
///
/// The coefficient vector is indexed by degree and never ends in a zero;
/// the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate `Y`.
    pub fn var() -> Self {
        Self::monomial(S::one(), 1)
    }

    /// `c·Y^d`.
    pub fn monomial(c: S, d: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); d + 1];
        coeffs[d] = c;
        Polynomial { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> S {
        self.coeffs.get(d).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `Y`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&S> {
        self.coeffs.last()
    }

    /// Nonzero `(degree, coefficient)` pairs in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &S)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn plus(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, d) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = c.plus(d);
        }
        Self::from_coeffs(coeffs)
    }

    pub fn minus(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.minus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.negate(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn negated(&self) -> Self {
        Polynomial { coeffs: self.coeffs.iter().map(S::negate).collect() }
    }

    pub fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.times(self))
    }

    /// Formal derivative `d/dY`.
    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times(&S::from_int(i as i64)))
                .collect(),
        )
    }

    /// The ring homomorphism `Y ↦ image` applied to `self`, fixing scalars.
    pub fn substitute(&self, image: &Self) -> Self {
        // Horner's rule from the top coefficient down.
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.times(image).plus(&Self::constant(c.clone())))
    }

    pub fn eval(&self, y: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc.times(y).plus(c))
    }

    /// Whether the display form is a single signed factor, so it can be
    /// followed by `*Y^d` or `*X^n` without parentheses.
    pub fn is_atomic(&self) -> bool {
        let mut terms = self.terms();
        match (terms.next(), terms.next()) {
            (Some((_, c)), None) => scalar_is_atomic(&c.to_string()),
            _ => false,
        }
    }
}

/// A rendered scalar is atomic when it has no top-level `+`/`-` after its
/// leading sign.
pub(crate) fn scalar_is_atomic(s: &str) -> bool {
    !s.contains(" + ") && !s.contains(" - ")
}

/// Joins rendered terms, turning a leading `-` into a subtraction.
pub(crate) fn join_terms(terms: &[String]) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}

/// Renders `coeff*var` where `var` is a power such as `Y^2`.
pub(crate) fn render_scaled(coeff: &str, var: &str) -> String {
    match coeff {
        "1" => var.to_string(),
        "-1" => format!("-{var}"),
        c if scalar_is_atomic(c) => format!("{c}*{var}"),
        c => format!("({c})*{var}"),
    }
}

pub(crate) fn render_power(var: &str, d: usize) -> String {
    if d == 1 {
        var.to_string()
    } else {
        format!("{var}^{d}")
    }
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms()
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .map(|(d, c)| {
                let cs = c.to_string();
                if d == 0 {
                    cs
                } else {
                    render_scaled(&cs, &render_power("Y", d))
                }
            })
            .collect();
        write!(f, "{}", join_terms(&terms))
    }
}

impl<S: Scalar> fmt::Debug for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inherent:ident) => {
        impl<S: Scalar> $tr<&Polynomial<S>> for &Polynomial<S> {
            type Output = Polynomial<S>;
            fn $method(self, rhs: &Polynomial<S>) -> Polynomial<S> {
                Polynomial::$inherent(self, rhs)
            }
        }
        impl<S: Scalar> $tr for Polynomial<S> {
            type Output = Polynomial<S>;
            fn $method(self, rhs: Polynomial<S>) -> Polynomial<S> {
                Polynomial::$inherent(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, plus);
forward_binop!(Sub, sub, minus);
forward_binop!(Mul, mul, times);

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn neg(self) -> Polynomial<S> {
        Polynomial::negated(self)
    }
}

impl<S: Scalar> Neg for Polynomial<S> {
    type Output = Polynomial<S>;
    fn neg(self) -> Polynomial<S> {
        Polynomial::negated(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{IntMod, KQ, ParamPoly, Rational};

    type P = Polynomial<Rational>;

    fn y() -> P {
        P::var()
    }
    fn c(n: i64) -> P {
        P::constant(Rational::integer(n))
    }

    #[test]
    fn add_examples() {
        let a = &y().pow(2) + &c(1);
        assert_eq!(&a + &(-&y().pow(2)), c(1));
        assert_eq!(&a + &P::zero(), a);
        assert_eq!(&y().scale(&Rational::integer(2)) + &y().scale(&Rational::integer(3)), y().scale(&Rational::integer(5)));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&y() * &y(), y().pow(2));
        assert_eq!(&(&y() + &c(1)) * &(&y() - &c(1)), &y().pow(2) - &c(1));
        type Z2 = IntMod<2>;
        let one = Polynomial::<Z2>::one();
        let yp = Polynomial::<Z2>::var();
        let s = &yp + &one;
        assert_eq!(&s * &s, &yp.pow(2) + &one);
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(P::zero().degree(), None);
        assert_eq!(c(3).degree(), Some(0));
        assert_eq!((&y().pow(3) - &y().pow(3)).degree(), None);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(y().pow(3).derivative(), y().pow(2).scale(&Rational::integer(3)));
        assert_eq!(c(7).derivative(), P::zero());
        // Y·d/dY on Y³
        assert_eq!(&y() * &y().pow(3).derivative(), y().pow(3).scale(&Rational::integer(3)));
    }

    #[test]
    fn substitute_examples() {
        type KP = ParamPoly<KQ>;
        let k = Polynomial::constant(KP::param("k").unwrap());
        let q = KP::param("q").unwrap();
        let yy = Polynomial::<KP>::var();
        let shifted = yy.pow(2).substitute(&(&yy + &k));
        let expected = &(&yy.pow(2) + &(&yy * &k).scale(&KP::from_int(2))) + &(&k * &k);
        assert_eq!(shifted, expected);
        let scaled = yy.pow(2).substitute(&yy.scale(&q));
        assert_eq!(scaled, yy.pow(2).scale(&q.times(&q)));
        assert_eq!(c(5).substitute(&y().pow(4)), c(5));
    }

    #[test]
    fn display() {
        let p = &(&y().pow(2).scale(&Rational::new(-3, 2)) + &y()) - &c(1);
        assert_eq!(p.to_string(), "-3/2*Y^2 + Y - 1");
        assert_eq!(P::zero().to_string(), "0");
        type KP = ParamPoly<KQ>;
        let k = KP::param("k").unwrap();
        let p = Polynomial::monomial(k.plus(&KP::one()), 2);
        assert_eq!(p.to_string(), "(k + 1)*Y^2");
    }
}
