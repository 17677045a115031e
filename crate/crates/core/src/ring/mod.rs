//! Exact coefficient rings and dense polynomials in `Y` over them.

mod integer;
mod intmod;
mod param;
mod poly;
mod rational;
mod scalar;

pub use integer::Integer;
pub use intmod::IntMod;
pub use param::{ParamPoly, ParamSet, KQ};
pub use poly::Polynomial;
pub(crate) use poly::{join_terms, render_power};
pub use rational::{ParseRationalError, Rational};
pub use scalar::{characteristic, RingDescriptor, Scalar};
