use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use super::rational::Rational;
use super::scalar::{RingDescriptor, Scalar};

/// A fixed, ordered list of parameter names.
///
/// The list is part of the type, so polynomials over different parameter
/// lists cannot be combined by accident.
pub trait ParamSet: Send + Sync + 'static {
    const NAMES: &'static [&'static str];
}

/// The parameters `k` and `q` used by the deformation families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KQ;

impl ParamSet for KQ {
    const NAMES: &'static [&'static str] = &["k", "q"];
}

/// Sparse polynomial over the rationals in the parameters of `P`.
///
/// Exponent vectors always have length `P::NAMES.len()` and no zero
/// coefficient is ever stored.
pub struct ParamPoly<P: ParamSet> {
    terms: BTreeMap<Vec<u32>, Rational>,
    _params: PhantomData<P>,
}

impl<P: ParamSet> Clone for ParamPoly<P> {
    fn clone(&self) -> Self {
        ParamPoly { terms: self.terms.clone(), _params: PhantomData }
    }
}

impl<P: ParamSet> PartialEq for ParamPoly<P> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<P: ParamSet> Eq for ParamPoly<P> {}

impl<P: ParamSet> ParamPoly<P> {
    fn arity() -> usize {
        P::NAMES.len()
    }

    fn from_terms(terms: BTreeMap<Vec<u32>, Rational>) -> Self {
        ParamPoly { terms, _params: PhantomData }
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; Self::arity()], c);
        }
        Self::from_terms(terms)
    }

    /// The parameter called `name`, if it belongs to `P`.
    pub fn param(name: &str) -> Option<Self> {
        let idx = P::NAMES.iter().position(|n| *n == name)?;
        let mut exps = vec![0; Self::arity()];
        exps[idx] = 1;
        Some(Self::from_terms(BTreeMap::from([(exps, Rational::one())])))
    }

    /// `c · Π name_i^{exps_i}`.
    pub fn monomial(c: Rational, exps: &[u32]) -> Self {
        assert_eq!(exps.len(), Self::arity(), "exponent vector has wrong arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps.to_vec(), c);
        }
        Self::from_terms(terms)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.times(self))
    }

    /// Evaluates at rational values given in the order of `P::NAMES`.
    pub fn eval(&self, values: &[Rational]) -> Rational {
        assert_eq!(values.len(), Self::arity());
        self.terms.iter().fold(Rational::zero(), |acc, (exps, c)| {
            let term = exps.iter().zip(values).fold(c.clone(), |t, (&e, v)| {
                (0..e).fold(t, |t, _| t.times(v))
            });
            acc.plus(&term)
        })
    }

    fn fmt_monomial(c: &Rational, exps: &[u32], f: &mut fmt::Formatter<'_>, first: bool) -> fmt::Result {
        let neg = c.is_negative();
        let abs = if neg { c.negate() } else { c.clone() };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        let mut factors: Vec<String> = Vec::new();
        let is_const = exps.iter().all(|&e| e == 0);
        if is_const || !abs.is_one() {
            factors.push(abs.to_string());
        }
        for (name, &e) in P::NAMES.iter().zip(exps) {
            match e {
                0 => {}
                1 => factors.push((*name).to_string()),
                _ => factors.push(format!("{name}^{e}")),
            }
        }
        write!(f, "{}", factors.join("*"))
    }
}

impl<P: ParamSet> fmt::Display for ParamPoly<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by_key(|(e, _)| (Reverse(e.iter().sum::<u32>()), Reverse((*e).clone())));
        for (i, (exps, c)) in sorted.into_iter().enumerate() {
            Self::fmt_monomial(c, exps, f, i == 0)?;
        }
        Ok(())
    }
}

impl<P: ParamSet> fmt::Debug for ParamPoly<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<P: ParamSet> Scalar for ParamPoly<P> {
    fn zero() -> Self {
        Self::from_terms(BTreeMap::new())
    }
    fn one() -> Self {
        Self::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let sum = terms.get(e).map_or_else(|| c.clone(), |d| d.plus(c));
            if sum.is_zero() {
                terms.remove(e);
            } else {
                terms.insert(e.clone(), sum);
            }
        }
        Self::from_terms(terms)
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }
    fn times(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let prod = c1.times(c2);
                let entry = terms.entry(e).or_insert_with(Rational::zero);
                *entry = entry.plus(&prod);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Self::from_terms(terms)
    }
    fn negate(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e.clone(), c.negate())).collect())
    }
    fn from_int(n: i64) -> Self {
        Self::constant(Rational::integer(n))
    }
    fn try_inverse(&self) -> Option<Self> {
        // Only nonzero constants are units.
        match self.terms.len() {
            1 => {
                let (e, c) = self.terms.iter().next()?;
                if e.iter().all(|&x| x == 0) {
                    Some(Self::constant(c.try_inverse()?))
                } else {
                    None
                }
            }
            _ => None,
        }
    }
    fn descriptor() -> RingDescriptor {
        RingDescriptor::ParamPoly(P::NAMES.iter().map(|s| s.to_string()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type KQPoly = ParamPoly<KQ>;

    fn k() -> KQPoly {
        KQPoly::param("k").unwrap()
    }
    fn q() -> KQPoly {
        KQPoly::param("q").unwrap()
    }

    #[test]
    fn arithmetic_and_display() {
        let x = k().times(&q()).times(&q()).plus(&KQPoly::from_int(-1));
        assert_eq!(x.to_string(), "k*q^2 - 1");
        let y = k().plus(&KQPoly::from_int(1)).pow(2);
        assert_eq!(y.to_string(), "k^2 + 2*k + 1");
        assert!(k().minus(&k()).is_zero());
        assert_eq!(KQPoly::zero().to_string(), "0");
        assert_eq!(KQPoly::constant(Rational::new(-1, 2)).times(&k()).to_string(), "-1/2*k");
    }

    #[test]
    fn units_are_nonzero_constants() {
        assert!(k().try_inverse().is_none());
        assert_eq!(KQPoly::from_int(2).try_inverse(), Some(KQPoly::constant(Rational::new(1, 2))));
    }

    #[test]
    fn unknown_parameter() {
        assert!(KQPoly::param("z").is_none());
    }

    #[test]
    fn eval_matches() {
        let x = k().pow(4).times(&q().pow(2));
        assert_eq!(x.eval(&[Rational::integer(3), Rational::integer(2)]), Rational::integer(324));
    }
}
