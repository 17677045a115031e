use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::scalar::{RingDescriptor, Scalar};

/// Arbitrary-precision integer, the base ring `Z`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Integer(pub BigInt);

impl From<i64> for Integer {
    fn from(n: i64) -> Self {
        Integer(n.into())
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Scalar for Integer {
    fn zero() -> Self {
        Integer(BigInt::zero())
    }
    fn one() -> Self {
        Integer(BigInt::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        Integer(&self.0 + &other.0)
    }
    fn minus(&self, other: &Self) -> Self {
        Integer(&self.0 - &other.0)
    }
    fn times(&self, other: &Self) -> Self {
        Integer(&self.0 * &other.0)
    }
    fn negate(&self) -> Self {
        Integer(-&self.0)
    }
    fn from_int(n: i64) -> Self {
        Integer(n.into())
    }
    fn try_inverse(&self) -> Option<Self> {
        let one = BigInt::one();
        (self.0 == one || self.0 == -one).then(|| self.clone())
    }
    fn descriptor() -> RingDescriptor {
        RingDescriptor::Integer
    }
}
