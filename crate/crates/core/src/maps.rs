//! Linear maps on `K[Y]` and the interleaving operator `π`.
//!
//! A [`MapSpec`] is a finite description of a linear map: an algebra
//! endomorphism given by the image of `Y`, a twisted derivation given by the
//! image of `Y` and its twisting endomorphism, or sums, scalings and
//! compositions of those. Maps are compared extensionally on the monomial
//! basis up to a caller-supplied degree, never structurally.

use crate::report::{compare, run_cases, Bounds, Report};
use crate::ring::{Polynomial, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapSpec<S: Scalar> {
    Identity,
    Zero,
    /// `1 ↦ image_of_one`, `Y^n ↦ image_of_y^n` for `n ≥ 1`, extended
    /// linearly. With `image_of_one = 1` this is the unital algebra
    /// endomorphism `Y ↦ image_of_y`.
    Endo { image_of_y: Polynomial<S>, image_of_one: S },
    /// The twisted derivation `δ` with `δ(1) = 0`, `δ(Y) = image_of_y` and
    /// `δ(Y^n) = σ(Y)·δ(Y^{n-1}) + δ(Y)·Y^{n-1}` where `σ = twist`.
    Derivation { image_of_y: Polynomial<S>, twist: Box<MapSpec<S>> },
    Scale(S, Box<MapSpec<S>>),
    Sum(Vec<MapSpec<S>>),
    /// `Compose([f, g, h])` is `f ∘ g ∘ h`: `h` is applied first.
    Compose(Vec<MapSpec<S>>),
}

impl<S: Scalar> MapSpec<S> {
    /// The unital endomorphism `Y ↦ image`.
    pub fn endo(image_of_y: Polynomial<S>) -> Self {
        MapSpec::Endo { image_of_y, image_of_one: S::one() }
    }

    pub fn derivation(image_of_y: Polynomial<S>, twist: MapSpec<S>) -> Self {
        MapSpec::Derivation { image_of_y, twist: Box::new(twist) }
    }

    /// `d/dY`.
    pub fn d_dy() -> Self {
        Self::derivation(Polynomial::one(), MapSpec::Identity)
    }

    /// `Y·d/dY`.
    pub fn y_d_dy() -> Self {
        Self::derivation(Polynomial::var(), MapSpec::Identity)
    }

    /// `Y ↦ c·Y`.
    pub fn scaling(c: S) -> Self {
        Self::endo(Polynomial::monomial(c, 1))
    }

    /// `Y ↦ Y + c`.
    pub fn shift(c: S) -> Self {
        Self::endo(Polynomial::var().plus(&Polynomial::constant(c)))
    }

    pub fn scale(c: S, inner: MapSpec<S>) -> Self {
        MapSpec::Scale(c, Box::new(inner))
    }

    pub fn apply(&self, p: &Polynomial<S>) -> Polynomial<S> {
        if p.is_zero() {
            return Polynomial::zero();
        }
        match self {
            MapSpec::Identity => p.clone(),
            MapSpec::Zero => Polynomial::zero(),
            MapSpec::Endo { image_of_y, image_of_one } => apply_endo(image_of_y, image_of_one, p),
            MapSpec::Derivation { image_of_y, twist } => apply_derivation(image_of_y, twist, p),
            MapSpec::Scale(c, inner) => inner.apply(p).scale(c),
            MapSpec::Sum(parts) => parts.iter().fold(Polynomial::zero(), |acc, f| acc.plus(&f.apply(p))),
            MapSpec::Compose(parts) => parts.iter().rev().fold(p.clone(), |acc, f| f.apply(&acc)),
        }
    }

    /// Extensional equality on `1, Y, …, Y^deg`.
    pub fn agrees_with(&self, other: &MapSpec<S>, deg: usize) -> bool {
        monomials::<S>(deg).iter().all(|m| self.apply(m) == other.apply(m))
    }

    pub fn is_identity_up_to(&self, deg: usize) -> bool {
        self.agrees_with(&MapSpec::Identity, deg)
    }
}

fn apply_endo<S: Scalar>(image: &Polynomial<S>, image_of_one: &S, p: &Polynomial<S>) -> Polynomial<S> {
    let constant = Polynomial::constant(p.coeff(0).times(image_of_one));
    let coeffs = p.coeffs();
    if coeffs.len() == 1 {
        return constant;
    }
    // Y ↦ s·Y + c: Taylor shift by c in place, then rescale by powers of s.
    if image.coeffs().len() <= 2 {
        let (c, s) = (image.coeff(0), image.coeff(1));
        let mut a = coeffs.to_vec();
        a[0] = S::zero();
        if !c.is_zero() {
            let n = a.len();
            for i in 0..n - 1 {
                for j in (i..n - 1).rev() {
                    a[j] = a[j].plus(&c.times(&a[j + 1]));
                }
            }
        }
        if !s.is_one() {
            let mut power = S::one();
            for x in a.iter_mut().skip(1) {
                power = power.times(&s);
                *x = x.times(&power);
            }
        }
        a[0] = a[0].plus(&constant.coeff(0));
        return Polynomial::from_coeffs(a);
    }
    // Horner on the non-constant part: Σ_{d≥1} a_d·image^d.
    let upper = coeffs[1..]
        .iter()
        .rev()
        .fold(Polynomial::zero(), |acc, c| acc.times(image).plus(&Polynomial::constant(c.clone())));
    upper.times(image).plus(&constant)
}

fn apply_derivation<S: Scalar>(image: &Polynomial<S>, twist: &MapSpec<S>, p: &Polynomial<S>) -> Polynomial<S> {
    if let MapSpec::Identity = twist {
        // An ordinary derivation on K[Y] is p ↦ p'·δ(Y).
        return p.derivative().times(image);
    }
    let sigma_y = twist.apply(&Polynomial::var());
    let mut acc = Polynomial::zero();
    let mut delta_pow = Polynomial::zero(); // δ(Y^0) = 0
    let mut y_pow = Polynomial::one(); // Y^{n-1}
    for (n, c) in p.coeffs().iter().enumerate().skip(1) {
        delta_pow = sigma_y.times(&delta_pow).plus(&image.times(&y_pow));
        y_pow = y_pow.times(&Polynomial::var());
        let _ = n;
        if !c.is_zero() {
            acc = acc.plus(&delta_pow.scale(c));
        }
    }
    acc
}

/// `1, Y, …, Y^deg`.
pub fn monomials<S: Scalar>(deg: usize) -> Vec<Polynomial<S>> {
    (0..=deg).map(|d| Polynomial::monomial(S::one(), d)).collect()
}

/// `[π^m_0(p), …, π^m_m(p)]`, by the recurrence
/// `π^m_i = δ∘π^{m-1}_i + σ∘π^{m-1}_{i-1}`.
pub fn pi_row<S: Scalar>(m: usize, sigma: &MapSpec<S>, delta: &MapSpec<S>, p: &Polynomial<S>) -> Vec<Polynomial<S>> {
    pi_rows(m, sigma, delta, p).pop().expect("at least one row")
}

/// All rows `0..=max_m` of the `π` triangle applied to `p`.
pub fn pi_rows<S: Scalar>(
    max_m: usize,
    sigma: &MapSpec<S>,
    delta: &MapSpec<S>,
    p: &Polynomial<S>,
) -> Vec<Vec<Polynomial<S>>> {
    let mut rows = Vec::with_capacity(max_m + 1);
    rows.push(vec![p.clone()]);
    for m in 1..=max_m {
        let prev: &Vec<Polynomial<S>> = &rows[m - 1];
        let mut row = Vec::with_capacity(m + 1);
        let sigma_prev: Vec<_> = prev.iter().map(|x| sigma.apply(x)).collect();
        for i in 0..=m {
            let mut v = if i < m { delta.apply(&prev[i]) } else { Polynomial::zero() };
            if i > 0 {
                v = v.plus(&sigma_prev[i - 1]);
            }
            row.push(v);
        }
        rows.push(row);
    }
    rows
}

/// `π^m_i(p)`: the sum of all compositions of `i` copies of `σ` and `m - i`
/// copies of `δ`. Zero when `i < 0` or `i > m`.
pub fn pi<S: Scalar>(i: i64, m: usize, sigma: &MapSpec<S>, delta: &MapSpec<S>, p: &Polynomial<S>) -> Polynomial<S> {
    if i < 0 || i as usize > m {
        return Polynomial::zero();
    }
    pi_row(m, sigma, delta, p).swap_remove(i as usize)
}

/// `π^m_i(p)` by explicit enumeration of all `C(m, i)` words in `σ`, `δ`.
///
/// Exponential in `m`; kept as an independent check on [`pi`].
pub fn pi_enumerated<S: Scalar>(
    i: i64,
    m: usize,
    sigma: &MapSpec<S>,
    delta: &MapSpec<S>,
    p: &Polynomial<S>,
) -> Polynomial<S> {
    if i < 0 || i as usize > m {
        return Polynomial::zero();
    }
    let i = i as usize;
    let mut total = Polynomial::zero();
    // Bit b of `word` set means the b-th letter (from the right) is σ.
    for word in 0u64..(1u64 << m) {
        if word.count_ones() as usize != i {
            continue;
        }
        let mut v = p.clone();
        for b in 0..m {
            v = if word >> b & 1 == 1 { sigma.apply(&v) } else { delta.apply(&v) };
        }
        total = total.plus(&v);
    }
    total
}

fn y_bounds(deg_y: usize) -> Bounds {
    Bounds { deg_x: 0, deg_y }
}

/// Checks `f(pq) = f(p)f(q)` on non-constant monomial pairs of degree at
/// most `deg_y`, then `f(1) = 1`.
pub fn check_endomorphism<S: Scalar>(f: &MapSpec<S>, deg_y: usize) -> Report {
    let basis = monomials::<S>(deg_y);
    let pairs: Vec<(usize, usize)> = (1..=deg_y).flat_map(|a| (1..=deg_y).map(move |b| (a, b))).collect();
    let mult = run_cases("endomorphism", y_bounds(deg_y), &pairs, |&(a, b)| {
        let (p, q) = (&basis[a], &basis[b]);
        compare(f.apply(&p.times(q)), f.apply(p).times(&f.apply(q)), || vec![format!("p = {p}"), format!("q = {q}")])
    });
    if !mult.passed() {
        return mult;
    }
    let unit = run_cases("endomorphism", y_bounds(deg_y), &[()], |_| {
        compare(f.apply(&Polynomial::one()), Polynomial::one(), || vec!["p = 1".to_string()])
    });
    Report::merge("endomorphism", y_bounds(deg_y), vec![mult, unit])
}

/// Checks `f(pq) = f(p)f(q)` on all monomial pairs including constants,
/// without requiring `f(1) = 1`.
pub fn check_multiplicative<S: Scalar>(f: &MapSpec<S>, deg_y: usize) -> Report {
    let basis = monomials::<S>(deg_y);
    let pairs: Vec<(usize, usize)> = (0..=deg_y).flat_map(|a| (0..=deg_y).map(move |b| (a, b))).collect();
    run_cases("multiplicative", y_bounds(deg_y), &pairs, |&(a, b)| {
        let (p, q) = (&basis[a], &basis[b]);
        compare(f.apply(&p.times(q)), f.apply(p).times(&f.apply(q)), || vec![format!("p = {p}"), format!("q = {q}")])
    })
}

/// Checks `δ(ab) = σ(a)δ(b) + δ(a)b` on monomial pairs of degree at most
/// `deg_y`.
pub fn check_sigma_derivation<S: Scalar>(delta: &MapSpec<S>, sigma: &MapSpec<S>, deg_y: usize) -> Report {
    let basis = monomials::<S>(deg_y);
    let pairs: Vec<(usize, usize)> = (0..=deg_y).flat_map(|a| (0..=deg_y).map(move |b| (a, b))).collect();
    run_cases("sigma_derivation", y_bounds(deg_y), &pairs, |&(i, j)| {
        let (a, b) = (&basis[i], &basis[j]);
        let lhs = delta.apply(&a.times(b));
        let rhs = sigma.apply(a).times(&delta.apply(b)).plus(&delta.apply(a).times(b));
        compare(lhs, rhs, || vec![format!("a = {a}"), format!("b = {b}")])
    })
}

/// Checks `f(g(p)) = g(f(p))` on monomials of degree at most `deg_y`.
pub fn check_commute<S: Scalar>(f: &MapSpec<S>, g: &MapSpec<S>, deg_y: usize) -> Report {
    let basis = monomials::<S>(deg_y);
    run_cases("commute", y_bounds(deg_y), &basis, |p| {
        compare(f.apply(&g.apply(p)), g.apply(&f.apply(p)), || vec![format!("p = {p}")])
    })
}
