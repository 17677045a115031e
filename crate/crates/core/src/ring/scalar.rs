use std::fmt;

use serde::Serialize;

/// Describes a coefficient ring well enough to answer structural questions
/// such as its characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RingDescriptor {
    Rational,
    Integer,
    IntMod(u64),
    /// Polynomials over the rationals in the given parameter names.
    ParamPoly(Vec<String>),
    /// `M ⊕ R` built over the described base ring.
    WeakUnitalization(Box<RingDescriptor>),
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Rational => write!(f, "Q"),
            RingDescriptor::Integer => write!(f, "Z"),
            RingDescriptor::IntMod(n) => write!(f, "Z/{n}"),
            RingDescriptor::ParamPoly(names) => write!(f, "Q[{}]", names.join(", ")),
            RingDescriptor::WeakUnitalization(base) => write!(f, "M (+) {base}"),
        }
    }
}

/// Characteristic of a described ring: the least `n > 0` with `n·a = 0`
/// for every `a`, or 0 when there is none.
///
/// A weak unitalization `M ⊕ R` has the characteristic of `R`: `n·R = 0`
/// forces `n·M = 0` because `M` is an `R`-module, and `(0, 1)` has additive
/// order `char R`.
pub fn characteristic(desc: &RingDescriptor) -> u64 {
    match desc {
        RingDescriptor::Rational | RingDescriptor::Integer | RingDescriptor::ParamPoly(_) => 0,
        RingDescriptor::IntMod(n) => *n,
        RingDescriptor::WeakUnitalization(base) => characteristic(base),
    }
}

/// An exact commutative unital coefficient ring.
///
/// Arithmetic goes through borrowed receivers so that big-number types do
/// not have to be cloned for every operation.
pub trait Scalar:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Image of an integer under the unique ring map from `Z`.
    fn from_int(n: i64) -> Self;
    /// Multiplicative inverse, when it exists in the ring.
    fn try_inverse(&self) -> Option<Self>;
    fn descriptor() -> RingDescriptor;
}
