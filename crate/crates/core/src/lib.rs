//! Exact computer algebra for hom-associative Ore extensions.
//!
//! The crate is organized bottom-up:
//! - [`ring`]: exact scalar rings and polynomials in `Y`,
//! - [`maps`]: linear maps on `K[Y]` (endomorphisms, twisted derivations) and
//!   the interleaving operator `π`,
//! - [`ore`]: Ore polynomials with the plain and the twisted (star) product,
//! - [`homcheck`]: bounded verifiers for hom-associativity and its
//!   necessary and sufficient conditions,
//! - [`catalog`]: the quantum plane, enveloping algebra and Weyl algebra
//!   families and the simplicity reduction,
//! - [`unitalization`]: embedding into a weakly unital algebra `M ⊕ R`.

pub mod catalog;
pub mod homcheck;
pub mod maps;
pub mod ore;
pub mod report;
pub mod ring;
pub mod unitalization;
