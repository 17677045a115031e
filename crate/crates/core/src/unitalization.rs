//! Weak unitalization: embedding a multiplicative hom-associative algebra
//! `(M, ·, α)` over `R` into `M ⊕ R` with
//!
//! `(m₁, r₁) • (m₂, r₂) = (m₁·m₂ + r₁·α(m₂) + r₂·α(m₁), r₁·r₂)`
//!
//! and twist `β_α(m, r) = (α(m), r)`, which has weak unit `(0, 1)`.

use std::fmt;
use std::marker::PhantomData;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::maps::{monomials, MapSpec};
use crate::ore::{monomial_grid, random_ore_poly, random_poly, OreContext, OrePoly};
use crate::report::{compare, run_cases, Bounds, Counterexample, Report};
use crate::ring::{characteristic, Polynomial, RingDescriptor, Scalar};

/// A module over `Scalar` with a bilinear product and a linear twist.
pub trait HomAlgebra: Sync {
    type Scalar: Scalar;
    type Elem: Clone + PartialEq + fmt::Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Self::Scalar, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn twist(&self, x: &Self::Elem) -> Self::Elem;
    /// A spanning set of the part of the algebra within `bounds`.
    fn basis(&self, bounds: Bounds) -> Vec<Self::Elem>;
    /// A dense element within `bounds`.
    fn random(&self, rng: &mut ChaCha8Rng, bounds: Bounds) -> Self::Elem;
    /// The ring the algebra is a module over, for characteristic questions.
    fn descriptor(&self) -> RingDescriptor {
        Self::Scalar::descriptor()
    }
}

/// `R[X;σ,δ]` with its context's product and twist.
pub struct OreAlgebra<S: Scalar>(pub OreContext<S>);

impl<S: Scalar> HomAlgebra for OreAlgebra<S> {
    type Scalar = S;
    type Elem = OrePoly<S>;

    fn zero(&self) -> OrePoly<S> {
        OrePoly::zero()
    }
    fn add(&self, x: &OrePoly<S>, y: &OrePoly<S>) -> OrePoly<S> {
        x.plus(y)
    }
    fn scale(&self, c: &S, x: &OrePoly<S>) -> OrePoly<S> {
        x.scale(c)
    }
    fn mul(&self, x: &OrePoly<S>, y: &OrePoly<S>) -> OrePoly<S> {
        self.0.mul(x, y)
    }
    fn twist(&self, x: &OrePoly<S>) -> OrePoly<S> {
        self.0.twist_apply(x)
    }
    fn basis(&self, bounds: Bounds) -> Vec<OrePoly<S>> {
        monomial_grid(bounds)
    }
    fn random(&self, rng: &mut ChaCha8Rng, bounds: Bounds) -> OrePoly<S> {
        random_ore_poly(rng, bounds)
    }
}

/// `K[Y]` with `a·b` or, when `star` is set, `a * b = α(a·b)`.
pub struct PolyAlgebra<S: Scalar> {
    pub alpha: MapSpec<S>,
    pub star: bool,
}

impl<S: Scalar> HomAlgebra for PolyAlgebra<S> {
    type Scalar = S;
    type Elem = Polynomial<S>;

    fn zero(&self) -> Polynomial<S> {
        Polynomial::zero()
    }
    fn add(&self, x: &Polynomial<S>, y: &Polynomial<S>) -> Polynomial<S> {
        x.plus(y)
    }
    fn scale(&self, c: &S, x: &Polynomial<S>) -> Polynomial<S> {
        x.scale(c)
    }
    fn mul(&self, x: &Polynomial<S>, y: &Polynomial<S>) -> Polynomial<S> {
        let p = x.times(y);
        if self.star {
            self.alpha.apply(&p)
        } else {
            p
        }
    }
    fn twist(&self, x: &Polynomial<S>) -> Polynomial<S> {
        self.alpha.apply(x)
    }
    fn basis(&self, bounds: Bounds) -> Vec<Polynomial<S>> {
        monomials(bounds.deg_y)
    }
    fn random(&self, rng: &mut ChaCha8Rng, bounds: Bounds) -> Polynomial<S> {
        random_poly(rng, bounds.deg_y)
    }
}

/// The element of the zero algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Nil;

impl fmt::Display for Nil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0")
    }
}

/// The zero algebra over `S`.
pub struct ZeroAlgebra<S>(PhantomData<S>);

impl<S> Default for ZeroAlgebra<S> {
    fn default() -> Self {
        ZeroAlgebra(PhantomData)
    }
}

impl<S: Scalar> HomAlgebra for ZeroAlgebra<S> {
    type Scalar = S;
    type Elem = Nil;

    fn zero(&self) -> Nil {
        Nil
    }
    fn add(&self, _: &Nil, _: &Nil) -> Nil {
        Nil
    }
    fn scale(&self, _: &S, _: &Nil) -> Nil {
        Nil
    }
    fn mul(&self, _: &Nil, _: &Nil) -> Nil {
        Nil
    }
    fn twist(&self, _: &Nil) -> Nil {
        Nil
    }
    fn basis(&self, _: Bounds) -> Vec<Nil> {
        vec![Nil]
    }
    fn random(&self, _: &mut ChaCha8Rng, _: Bounds) -> Nil {
        Nil
    }
}

/// An element `(m, r)` of `M ⊕ R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unitalized<E, S> {
    pub m: E,
    pub r: S,
}

impl<E: fmt::Display, S: fmt::Display> fmt::Display for Unitalized<E, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.r)
    }
}

/// `(M ⊕ R, •, β_α)`.
pub struct WeakUnitalization<A: HomAlgebra> {
    pub inner: A,
}

type Pair<A> = Unitalized<<A as HomAlgebra>::Elem, <A as HomAlgebra>::Scalar>;

impl<A: HomAlgebra> WeakUnitalization<A> {
    pub fn new(inner: A) -> Self {
        WeakUnitalization { inner }
    }

    /// `(0, 1)`.
    pub fn unit(&self) -> Pair<A> {
        Unitalized { m: self.inner.zero(), r: A::Scalar::one() }
    }

    /// `m ↦ (m, 0)`.
    pub fn embed(&self, m: A::Elem) -> Pair<A> {
        Unitalized { m, r: A::Scalar::zero() }
    }

    pub fn bullet_mul(&self, x: &Pair<A>, y: &Pair<A>) -> Pair<A> {
        let a = &self.inner;
        let m = a.add(
            &a.mul(&x.m, &y.m),
            &a.add(&a.scale(&x.r, &a.twist(&y.m)), &a.scale(&y.r, &a.twist(&x.m))),
        );
        Unitalized { m, r: x.r.times(&y.r) }
    }

    pub fn beta_alpha(&self, x: &Pair<A>) -> Pair<A> {
        Unitalized { m: self.inner.twist(&x.m), r: x.r.clone() }
    }

    pub fn characteristic(&self) -> u64 {
        characteristic(&self.descriptor())
    }
}

impl<A: HomAlgebra> HomAlgebra for WeakUnitalization<A> {
    type Scalar = A::Scalar;
    type Elem = Pair<A>;

    fn zero(&self) -> Pair<A> {
        self.embed(self.inner.zero())
    }
    fn add(&self, x: &Pair<A>, y: &Pair<A>) -> Pair<A> {
        Unitalized { m: self.inner.add(&x.m, &y.m), r: x.r.plus(&y.r) }
    }
    fn scale(&self, c: &A::Scalar, x: &Pair<A>) -> Pair<A> {
        Unitalized { m: self.inner.scale(c, &x.m), r: c.times(&x.r) }
    }
    fn mul(&self, x: &Pair<A>, y: &Pair<A>) -> Pair<A> {
        self.bullet_mul(x, y)
    }
    fn twist(&self, x: &Pair<A>) -> Pair<A> {
        self.beta_alpha(x)
    }
    fn basis(&self, bounds: Bounds) -> Vec<Pair<A>> {
        let mut out: Vec<_> = self.inner.basis(bounds).into_iter().map(|m| self.embed(m)).collect();
        out.push(self.unit());
        out
    }
    fn random(&self, rng: &mut ChaCha8Rng, bounds: Bounds) -> Pair<A> {
        let m = self.inner.random(rng, bounds);
        Unitalized { m, r: A::Scalar::from_int(rng.gen_range(-5..=5)) }
    }
    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::WeakUnitalization(Box::new(self.inner.descriptor()))
    }
}

fn samples<A: HomAlgebra>(alg: &A, bounds: Bounds, rng: &mut ChaCha8Rng, extra: usize) -> Vec<A::Elem> {
    let mut out = alg.basis(bounds);
    out.extend((0..extra).map(|_| alg.random(rng, bounds)));
    out
}

/// Number of random elements mixed into every sampled check.
pub const RANDOM_SAMPLES: usize = 20;

/// Checks on a hom-algebra `(A, ·, α)`, one report each:
///
/// - `weak_unit`: `e·x = x·e = α(x)`
/// - `hom_associativity`: `α(x)·(y·z) = (x·y)·α(z)`
/// - `multiplicative`: `α(x·y) = α(x)·α(y)`
/// - `bilinearity`: `(λx + y)·z = λ(x·z) + y·z` and `z·(λx + y) = λ(z·x) + z·y`
///
/// on the basis within `bounds` and on [`RANDOM_SAMPLES`] random elements
/// drawn from `seed`. Run on a [`WeakUnitalization`] with `e = (0, 1)`.
pub fn check_hom_algebra<A: HomAlgebra>(alg: &A, e: &A::Elem, bounds: Bounds, seed: u64) -> Vec<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = alg.basis(bounds);
    let randoms: Vec<_> = (0..RANDOM_SAMPLES).map(|_| alg.random(&mut rng, bounds)).collect();
    let singles: Vec<_> = basis.iter().chain(&randoms).cloned().collect();

    let weak_unit = run_cases("weak_unit", bounds, &singles, |x| {
        let ax = alg.twist(x);
        let named = || vec![format!("e = {e}"), format!("x = {x}")];
        compare(alg.mul(e, x), ax.clone(), named).or_else(|| compare(alg.mul(x, e), ax, named))
    });

    let mut triples: Vec<(A::Elem, A::Elem, A::Elem)> = Vec::new();
    for x in &basis {
        for y in &basis {
            for z in &basis {
                triples.push((x.clone(), y.clone(), z.clone()));
            }
        }
    }
    for _ in 0..RANDOM_SAMPLES {
        triples.push((alg.random(&mut rng, bounds), alg.random(&mut rng, bounds), alg.random(&mut rng, bounds)));
    }
    let hom_assoc = run_cases("hom_associativity", bounds, &triples, |(x, y, z)| {
        compare(alg.mul(&alg.twist(x), &alg.mul(y, z)), alg.mul(&alg.mul(x, y), &alg.twist(z)), || {
            vec![format!("x = {x}"), format!("y = {y}"), format!("z = {z}")]
        })
    });

    let mut pairs: Vec<(A::Elem, A::Elem)> = Vec::new();
    for x in &basis {
        for y in &basis {
            pairs.push((x.clone(), y.clone()));
        }
    }
    for _ in 0..RANDOM_SAMPLES {
        pairs.push((alg.random(&mut rng, bounds), alg.random(&mut rng, bounds)));
    }
    let multiplicative = run_cases("multiplicative", bounds, &pairs, |(x, y)| {
        compare(alg.twist(&alg.mul(x, y)), alg.mul(&alg.twist(x), &alg.twist(y)), || {
            vec![format!("x = {x}"), format!("y = {y}")]
        })
    });

    let linear_cases: Vec<_> = (0..RANDOM_SAMPLES)
        .map(|_| {
            let lambda = A::Scalar::from_int(rng.gen_range(-7..=7));
            (lambda, alg.random(&mut rng, bounds), alg.random(&mut rng, bounds), alg.random(&mut rng, bounds))
        })
        .collect();
    let bilinearity = run_cases("bilinearity", bounds, &linear_cases, |(lambda, x, y, z)| {
        let combo = alg.add(&alg.scale(lambda, x), y);
        let named = || vec![format!("lambda = {lambda}"), format!("x = {x}"), format!("y = {y}"), format!("z = {z}")];
        compare(alg.mul(&combo, z), alg.add(&alg.scale(lambda, &alg.mul(x, z)), &alg.mul(y, z)), named).or_else(|| {
            compare(alg.mul(z, &combo), alg.add(&alg.scale(lambda, &alg.mul(z, x)), &alg.mul(z, y)), named)
        })
    });

    [weak_unit, hom_assoc, multiplicative, bilinearity].into_iter().map(|r| r.with_seed(seed)).collect()
}

/// [`check_hom_algebra`] on the weak unitalization of `alg`, with weak
/// unit `(0, 1)`.
pub fn check_unitalization<A: HomAlgebra>(alg: A, bounds: Bounds, seed: u64) -> Vec<Report> {
    let u = WeakUnitalization::new(alg);
    let e = u.unit();
    check_hom_algebra(&u, &e, bounds, seed)
}

/// The projection `M ⊕ 0 → M` intertwines the twists and the products:
/// `π(β_α(m, 0)) = α(m)` and `π((m, 0)•(m', 0)) = m·m'` with `(m, 0)•(m', 0) ∈ M ⊕ 0`.
pub fn check_embedding<A: HomAlgebra>(u: &WeakUnitalization<A>, bounds: Bounds, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ms = samples(&u.inner, bounds, &mut rng, RANDOM_SAMPLES);
    let twist = run_cases("embedding", bounds, &ms, |m| {
        compare(u.beta_alpha(&u.embed(m.clone())), u.embed(u.inner.twist(m)), || vec![format!("m = {m}")])
    });
    let mut pairs = Vec::new();
    for i in 0..ms.len() {
        for j in 0..ms.len() {
            pairs.push((i, j));
        }
    }
    let product = run_cases("embedding", bounds, &pairs, |&(i, j)| {
        let (m, n) = (&ms[i], &ms[j]);
        compare(u.bullet_mul(&u.embed(m.clone()), &u.embed(n.clone())), u.embed(u.inner.mul(m, n)), || {
            vec![format!("m = {m}"), format!("m' = {n}")]
        })
    });
    Report::merge("embedding", bounds, vec![twist, product]).with_seed(seed)
}

/// `M ⊕ 0` is a two-sided ideal closed under `β_α`: `(m, r)•(m', 0)`,
/// `(m', 0)•(m, r)` and `β_α(m', 0)` all have zero scalar part.
pub fn check_hom_ideal<A: HomAlgebra>(u: &WeakUnitalization<A>, bounds: Bounds, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs = samples(u, bounds, &mut rng, RANDOM_SAMPLES);
    let ms = samples(&u.inner, bounds, &mut rng, RANDOM_SAMPLES);
    let mut cases = Vec::new();
    for i in 0..xs.len() {
        for j in 0..ms.len() {
            cases.push((i, j));
        }
    }
    let zero = A::Scalar::zero();
    run_cases("hom_ideal", bounds, &cases, |&(i, j)| {
        let (x, m) = (&xs[i], u.embed(ms[j].clone()));
        let named = || vec![format!("x = {x}"), format!("m = {}", ms[j])];
        let outside = |p: Pair<A>| (p.r != zero).then(|| Counterexample::new(named(), p.r.clone(), &zero));
        outside(u.bullet_mul(x, &m)).or_else(|| outside(u.bullet_mul(&m, x))).or_else(|| outside(u.beta_alpha(&m)))
    })
    .with_seed(seed)
}

/// `n·x = 0` on sampled `x` for `n = char(M ⊕ R)`, and `j·(0, 1) ≠ 0` for
/// `0 < j < n` (for `n = 0`, for `0 < j ≤ 64`).
pub fn check_characteristic<A: HomAlgebra>(u: &WeakUnitalization<A>, bounds: Bounds, seed: u64) -> Report {
    let n = u.characteristic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs = samples(u, bounds, &mut rng, RANDOM_SAMPLES);
    let zero = u.zero();
    let annihilated = if n == 0 {
        run_cases("characteristic", bounds, &xs[..0], |_: &Pair<A>| None)
    } else {
        run_cases("characteristic", bounds, &xs, |x| {
            compare(u.scale(&A::Scalar::from_int(n as i64), x), zero.clone(), || {
                vec![format!("n = {n}"), format!("x = {x}")]
            })
        })
    };
    let below: Vec<u64> = if n == 0 { (1..=64).collect() } else { (1..n).collect() };
    let unit = u.unit();
    let minimal = run_cases("characteristic", bounds, &below, |&j| {
        let ju = u.scale(&A::Scalar::from_int(j as i64), &unit);
        (ju == zero).then(|| Counterexample::new(vec![format!("j = {j}")], &ju, "a nonzero multiple of (0, 1)"))
    });
    Report::merge("characteristic", bounds, vec![annihilated, minimal]).with_seed(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{IntMod, Integer, Rational};

    type Q = Rational;

    fn r(n: i64) -> Q {
        Q::integer(n)
    }
    fn y(d: usize) -> Polynomial<Q> {
        Polynomial::monomial(Q::one(), d)
    }
    fn weyl<S: Scalar>(k: i64) -> OreAlgebra<S> {
        OreAlgebra(OreContext::star(MapSpec::Identity, MapSpec::d_dy(), MapSpec::shift(S::from_int(k))))
    }
    fn b(x: usize, yy: usize) -> Bounds {
        Bounds::new(x, yy).unwrap()
    }

    #[test]
    fn bullet_examples() {
        let u = WeakUnitalization::new(weyl::<Q>(1));
        let m = OrePoly::monomial(y(1), 1);
        let n = OrePoly::y();
        let zero_r = u.bullet_mul(&u.embed(m.clone()), &u.embed(n.clone()));
        assert_eq!(zero_r, u.embed(u.inner.mul(&m, &n)));

        let x = Unitalized { m: m.clone(), r: r(2) };
        assert_eq!(u.bullet_mul(&u.unit(), &x), Unitalized { m: u.inner.twist(&m), r: r(2) });

        let got = u.bullet_mul(&x, &Unitalized { m: n.clone(), r: r(3) });
        let y_plus_1 = y(1).plus(&Polynomial::one());
        let expected_m = u
            .inner
            .mul(&m, &n)
            .plus(&OrePoly::from_poly(y_plus_1.clone()).scale(&r(2)))
            .plus(&OrePoly::monomial(y_plus_1, 1).scale(&r(3)));
        let hand = OrePoly::from_terms([
            (0, Polynomial::from_coeffs(vec![r(3), r(3)])),
            (1, Polynomial::from_coeffs(vec![r(4), r(5), r(1)])),
        ]);
        assert_eq!(expected_m, hand);
        assert_eq!(got, Unitalized { m: expected_m, r: r(6) });
    }

    #[test]
    fn beta_examples() {
        let u = WeakUnitalization::new(weyl::<Q>(4));
        let x = Unitalized { m: OrePoly::y(), r: r(5) };
        let shifted = OrePoly::from_poly(y(1).plus(&Polynomial::constant(r(4))));
        assert_eq!(u.beta_alpha(&x), Unitalized { m: shifted, r: r(5) });
        let pure = Unitalized { m: OrePoly::zero(), r: r(7) };
        assert_eq!(u.beta_alpha(&pure), pure);
    }

    #[test]
    fn hom_weyl_unitalization() {
        for rep in check_unitalization(weyl::<Q>(1), b(1, 1), 3) {
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn identity_twist_gives_a_unit() {
        let assoc = OreAlgebra(OreContext::plain(MapSpec::<Q>::Identity, MapSpec::d_dy()));
        let u = WeakUnitalization::new(assoc);
        let x = Unitalized { m: OrePoly::monomial(y(2), 1), r: r(3) };
        assert_eq!(u.bullet_mul(&u.unit(), &x), x);
        assert_eq!(u.bullet_mul(&x, &u.unit()), x);
    }

    #[test]
    fn non_multiplicative_twist_is_detected() {
        let alpha = MapSpec::Endo { image_of_y: y(1).plus(&Polynomial::one()), image_of_one: r(2) };
        let reports = check_unitalization(PolyAlgebra { alpha, star: false }, b(1, 2), 0);
        let mult = reports.iter().find(|r| r.property == "multiplicative").unwrap();
        assert!(!mult.passed());
    }

    #[test]
    fn embedding_and_ideal() {
        let u = WeakUnitalization::new(weyl::<Q>(2));
        assert!(check_embedding(&u, b(1, 1), 1).passed());
        assert!(check_hom_ideal(&u, b(1, 1), 1).passed());
        let m = OrePoly::monomial(y(2), 1);
        let twisted = y(1).plus(&Polynomial::constant(r(2))).pow(2);
        assert_eq!(u.beta_alpha(&u.embed(m)).m, OrePoly::monomial(twisted, 1));
        let z = WeakUnitalization::new(ZeroAlgebra::<Q>::default());
        assert!(check_embedding(&z, b(1, 1), 1).passed());
    }

    #[test]
    fn characteristics() {
        let z6 = WeakUnitalization::new(weyl::<IntMod<6>>(1));
        assert_eq!(z6.characteristic(), 6);
        assert!(check_characteristic(&z6, b(1, 1), 2).passed());
        let z2 = WeakUnitalization::new(weyl::<IntMod<2>>(1));
        assert_eq!(z2.characteristic(), 2);
        assert!(check_characteristic(&z2, b(1, 1), 2).passed());
        let zz = WeakUnitalization::new(weyl::<Integer>(1));
        assert_eq!(zz.characteristic(), 0);
        assert!(check_characteristic(&zz, b(1, 1), 2).passed());
    }
}
