use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::{RingDescriptor, Scalar};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
///
/// Values whose numerator and denominator fit in machine words are kept
/// unboxed; arithmetic on them runs in `i128` and only falls back to big
/// integers on overflow.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Lowest terms, `den > 0`, `num != i64::MIN`.
    Small(i64, i64),
    /// Only used when the value does not fit `Small`.
    Big(BigRational),
}

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Self::from_big(BigRational::new(numer.into(), denom.into()))
    }

    pub fn integer(n: i64) -> Self {
        if n == i64::MIN {
            return Self::from_big(BigRational::from_integer(n.into()));
        }
        Rational(Repr::Small(n, 1))
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(r)),
        }
    }

    /// Reduces `num/den` with `den > 0`.
    fn from_i128(num: i128, den: i128) -> Self {
        let g = num.gcd(&den);
        let (num, den) = if g > 1 { (num / g, den / g) } else { (num, den) };
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) if n != i64::MIN => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(BigRational::new_raw(num.into(), den.into()))),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw((*n).into(), (*d).into()),
            Repr::Big(r) => r.clone(),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational::from_big(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `n` or `n/d` with optional leading sign; no decimals.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let digits = |x: &str| {
            let body = x.strip_prefix('-').or_else(|| x.strip_prefix('+')).unwrap_or(x);
            !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
        };
        if !digits(n) || !d.bytes().all(|b| b.is_ascii_digit()) || d.is_empty() {
            return Err(err());
        }
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Rational::new(n, d))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }
    fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }
    fn plus(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (_, Repr::Small(0, _)) => self.clone(),
            (Repr::Small(0, _), _) => other.clone(),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rational::from_i128(a + c, b)
                } else {
                    Rational::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Rational::from_big(self.to_big() + other.to_big()),
        }
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }
    fn times(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small(0, _), _) | (_, Repr::Small(0, _)) => Rational::zero(),
            (_, Repr::Small(1, 1)) => self.clone(),
            (Repr::Small(1, 1), _) => other.clone(),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * other.to_big()),
        }
    }
    fn negate(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-n, *d)),
            Repr::Big(r) => Rational::from_big(-r),
        }
    }
    fn from_int(n: i64) -> Self {
        Rational::integer(n)
    }
    fn try_inverse(&self) -> Option<Self> {
        match &self.0 {
            Repr::Small(0, _) => None,
            Repr::Small(n, d) if *n < 0 => Some(Rational(Repr::Small(-d, -n))),
            Repr::Small(n, d) => Some(Rational(Repr::Small(*d, *n))),
            Repr::Big(r) => Some(Rational::from_big(r.recip())),
        }
    }
    fn descriptor() -> RingDescriptor {
        RingDescriptor::Rational
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = Rational::new(6, -4);
        assert_eq!(r.numer(), BigInt::from(-3));
        assert_eq!(r.denom(), BigInt::from(2));
        assert_eq!(Rational::new(0, 7), Rational::zero());
        assert_eq!(Rational::zero().denom(), BigInt::from(1));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::integer(i64::MAX);
        let sum = big.plus(&big);
        assert_eq!(sum.numer(), BigInt::from(i64::MAX) * 2);
        assert_eq!(sum.minus(&big), big);
        let tiny = Rational::new(1, i64::MAX).times(&Rational::new(1, 3));
        assert_eq!(tiny.times(&Rational::integer(3)), Rational::new(1, i64::MAX));
        let min = Rational::integer(i64::MIN);
        assert_eq!(min.negate().negate(), min);
        assert_eq!(min.plus(&Rational::one()), Rational::integer(i64::MIN + 1));
        assert!(Rational::new(-1, 3) < Rational::new(1, i64::MAX));
        assert!(min < Rational::integer(0));
    }

    #[test]
    fn small_and_big_paths_agree() {
        let vals = [(3, 4), (-7, 6), (i64::MAX, 5), (5, i64::MAX - 1), (-1, 1), (0, 1)];
        for &(a, b) in &vals {
            for &(c, d) in &vals {
                let (x, y) = (Rational::new(a, b), Rational::new(c, d));
                assert_eq!(x.plus(&y).to_big(), x.to_big() + y.to_big());
                assert_eq!(x.times(&y).to_big(), x.to_big() * y.to_big());
                assert_eq!(x.minus(&y).to_big(), x.to_big() - y.to_big());
                assert_eq!(x.cmp(&y), x.to_big().cmp(&y.to_big()));
            }
        }
    }

    #[test]
    fn parse_literals() {
        assert_eq!("3/2".parse::<Rational>().unwrap(), Rational::new(3, 2));
        assert_eq!("-2".parse::<Rational>().unwrap(), Rational::integer(-2));
        assert_eq!(" 4/6 ".parse::<Rational>().unwrap(), Rational::new(2, 3));
        assert!("1.5".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Rational::new(-3, 2).to_string(), "-3/2");
        assert_eq!(Rational::integer(5).to_string(), "5");
    }
}
