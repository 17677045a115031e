//! Bounded verifiers for hom-associativity and its consequences.
//!
//! Every check enumerates monomial inputs up to explicit degree bounds and
//! compares both sides exactly. All identities involved are multilinear in
//! their ring arguments, so agreement on monomials implies agreement on
//! every element within the bounds.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::maps::{check_commute, check_endomorphism, monomials, MapSpec};
use crate::ore::{monomial_grid, random_ore_poly, BaseProduct, BaseRing, OreContext, OrePoly};
use crate::report::{compare, run_cases, Bounds, Counterexample, Report};
use crate::ring::{Polynomial, Scalar};

/// A general twisting map `α(aX^m) = Σ_i α_{i+1,m+1}(a) X^i`, given by
/// finitely many linear maps `α_{i+1,m+1}` with `i ≤ max_i`, `m ≤ max_m`.
/// Every entry outside the window, and every missing entry, is zero.
#[derive(Clone, Debug)]
pub struct TwistTable<S: Scalar> {
    max_i: usize,
    max_m: usize,
    entries: BTreeMap<(usize, usize), MapSpec<S>>,
}

#[derive(Debug, Error)]
pub enum HomError {
    #[error("entry ({i}, {m}) lies outside the table window (i <= {max_i}, m <= {max_m})")]
    OutsideWindow { i: usize, m: usize, max_i: usize, max_m: usize },
    #[error("deg_x = {deg_x} exceeds the table window max_m = {max_m}")]
    WindowExceeded { deg_x: usize, max_m: usize },
    #[error("the twist must be homogeneous for this check")]
    NeedsHomogeneousTwist,
    #[error("precondition {0}")]
    Precondition(Box<Report>),
}

impl<S: Scalar> TwistTable<S> {
    pub fn new(max_i: usize, max_m: usize) -> Self {
        TwistTable { max_i, max_m, entries: BTreeMap::new() }
    }

    /// The homogeneous extension of `alpha`: `α_{i+1,m+1} = δ_{i,m}·alpha`.
    pub fn homogeneous(alpha: MapSpec<S>, window: usize) -> Self {
        let mut t = Self::new(window, window);
        for m in 0..=window {
            t.entries.insert((m, m), alpha.clone());
        }
        t
    }

    /// Sets `α_{i+1,m+1} = f`.
    pub fn set(&mut self, i: usize, m: usize, f: MapSpec<S>) -> Result<(), HomError> {
        if i > self.max_i || m > self.max_m {
            return Err(HomError::OutsideWindow { i, m, max_i: self.max_i, max_m: self.max_m });
        }
        self.entries.insert((i, m), f);
        Ok(())
    }

    pub fn window(&self) -> (usize, usize) {
        (self.max_i, self.max_m)
    }

    /// The map `α_{i+1,m+1}`, or `None` where it is zero.
    pub fn get(&self, i: usize, m: usize) -> Option<&MapSpec<S>> {
        self.entries.get(&(i, m))
    }

    /// `α_{i+1,m+1}(a)`, with `α_{0,m+1} = 0`.
    pub fn eval(&self, i: i64, m: usize, a: &Polynomial<S>) -> Polynomial<S> {
        if i < 0 {
            return Polynomial::zero();
        }
        self.get(i as usize, m).map_or_else(Polynomial::zero, |f| f.apply(a))
    }

    /// `[α_{1,m+1}(a), …, α_{max_i+1,m+1}(a)]`.
    pub fn column(&self, m: usize, a: &Polynomial<S>) -> Vec<Polynomial<S>> {
        (0..=self.max_i as i64).map(|i| self.eval(i, m, a)).collect()
    }

    /// `I_{p,a}`: the largest `i` with `α_{i+1,p+1}(a) ≠ 0`, or 0 if there is none.
    pub fn top_index(&self, p: usize, a: &Polynomial<S>) -> usize {
        (0..=self.max_i).rev().find(|&i| !self.eval(i as i64, p, a).is_zero()).unwrap_or(0)
    }

    pub fn apply(&self, p: &OrePoly<S>) -> OrePoly<S> {
        let mut out = OrePoly::zero();
        for (m, a) in p.terms() {
            for (i, v) in self.column(m, a).into_iter().enumerate() {
                out = out.plus(&OrePoly::monomial(v, i));
            }
        }
        out
    }
}

fn add_at<S: Scalar>(acc: &mut Vec<Polynomial<S>>, k: usize, v: &Polynomial<S>) {
    if v.is_zero() {
        return;
    }
    if acc.len() <= k {
        acc.resize(k + 1, Polynomial::zero());
    }
    acc[k] = acc[k].plus(v);
}

/// The first X-degree where two coefficient vectors differ.
fn first_difference<S: Scalar>(lhs: &[Polynomial<S>], rhs: &[Polynomial<S>]) -> Option<usize> {
    let zero = Polynomial::zero();
    (0..lhs.len().max(rhs.len())).find(|&k| lhs.get(k).unwrap_or(&zero) != rhs.get(k).unwrap_or(&zero))
}

fn coefficient_counterexample<S: Scalar>(
    lhs: &[Polynomial<S>],
    rhs: &[Polynomial<S>],
    index_name: &str,
    inputs: impl FnOnce() -> Vec<String>,
) -> Option<Counterexample> {
    let k = first_difference(lhs, rhs)?;
    let zero = Polynomial::zero();
    let mut named = inputs();
    named.push(format!("{index_name} = {k}"));
    Some(Counterexample::new(named, lhs.get(k).unwrap_or(&zero), rhs.get(k).unwrap_or(&zero)))
}

fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))).collect()
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
}

fn abc(a: &impl std::fmt::Display, b: &impl std::fmt::Display, c: &impl std::fmt::Display) -> Vec<String> {
    vec![format!("a = {a}"), format!("b = {b}"), format!("c = {c}")]
}

/// `α(a)·(b·c) = (a·b)·α(c)` on all monomial triples within `bounds`, using
/// the context's product and twist.
pub fn check_hom_associativity<S: Scalar>(ctx: &OreContext<S>, bounds: Bounds) -> Report {
    let grid = monomial_grid::<S>(bounds);
    let twisted: Vec<_> = grid.iter().map(|p| ctx.twist_apply(p)).collect();
    let prod: Vec<Vec<_>> = grid.iter().map(|p| grid.iter().map(|q| ctx.mul(p, q)).collect()).collect();
    let max_deg = |ps: &mut dyn Iterator<Item = &OrePoly<S>>| ps.filter_map(OrePoly::degree).max().unwrap_or(0);
    let twisted_deg = max_deg(&mut twisted.iter());
    let prod_deg = max_deg(&mut prod.iter().flatten());
    let prod_right: Vec<Vec<_>> = prod.iter().map(|row| row.iter().map(|q| ctx.prepare(q, twisted_deg)).collect()).collect();
    let twisted_right: Vec<_> = twisted.iter().map(|q| ctx.prepare(q, prod_deg)).collect();
    run_cases("hom_associativity", bounds, &triples(grid.len()), |&(a, b, c)| {
        let lhs = ctx.mul_prepared(&twisted[a], &prod_right[b][c]);
        let rhs = ctx.mul_prepared(&prod[a][b], &twisted_right[c]);
        compare(lhs, rhs, || {
            abc(&grid[a], &grid[b], &grid[c])
        })
    })
}

/// Evaluates both sides of the hom-associativity identity at one triple.
pub fn hom_associativity_sides<S: Scalar>(
    ctx: &OreContext<S>,
    a: &OrePoly<S>,
    b: &OrePoly<S>,
    c: &OrePoly<S>,
) -> (OrePoly<S>, OrePoly<S>) {
    let lhs = ctx.mul(&ctx.twist_apply(a), &ctx.mul(b, c));
    let rhs = ctx.mul(&ctx.mul(a, b), &ctx.twist_apply(c));
    (lhs, rhs)
}

/// The coefficient form of hom-associativity for a table twist: for all
/// monomials `a, b, c` in `Y` and `m, n, p ≤ deg_x`, and every X-degree `k`,
///
/// `Σ_j Σ_i α_{i+1,m+1}(a)·π^i_{k-j}(b·π^n_{j-p}(c))
///   = Σ_j Σ_i (a·π^m_i(b))·π^{i+n}_{k-j}(α_{j+1,p+1}(c))`,
///
/// with `·` the product of `base`.
pub fn check_general_condition<S: Scalar>(
    base: &BaseRing<S>,
    table: &TwistTable<S>,
    bounds: Bounds,
) -> Result<Report, HomError> {
    let (max_i, max_m) = table.window();
    if bounds.deg_x > max_m {
        return Err(HomError::WindowExceeded { deg_x: bounds.deg_x, max_m });
    }
    let mons = monomials::<S>(bounds.deg_y);
    let dx = bounds.deg_x;
    let columns: Vec<Vec<Vec<Polynomial<S>>>> =
        (0..=dx).map(|m| mons.iter().map(|a| table.column(m, a)).collect()).collect();
    let rows: Vec<_> = mons.iter().map(|x| base.pi_rows(dx, x)).collect();
    let mut cases = Vec::new();
    for (a, b, c) in triples(mons.len()) {
        for m in 0..=dx {
            for n in 0..=dx {
                for p in 0..=dx {
                    cases.push((a, b, c, m, n, p));
                }
            }
        }
    }
    Ok(run_cases("general_condition", bounds, &cases, |&(a, b, c, m, n, p)| {
        let mut lhs = Vec::new();
        for q in 0..=n {
            let u = base.mul(&mons[b], &rows[c][n][q]);
            if u.is_zero() {
                continue;
            }
            let rows_u = base.pi_rows(max_i, &u);
            for (i, t) in columns[m][a].iter().enumerate() {
                if t.is_zero() {
                    continue;
                }
                for (l, v) in rows_u[i].iter().enumerate() {
                    add_at(&mut lhs, l + q + p, &base.mul(t, v));
                }
            }
        }
        let mut rhs = Vec::new();
        let twisted_rows: Vec<_> = columns[p][c].iter().map(|v| base.pi_rows(m + n, v)).collect();
        for i in 0..=m {
            let s = base.mul(&mons[a], &rows[b][m][i]);
            if s.is_zero() {
                continue;
            }
            for (j, rows_v) in twisted_rows.iter().enumerate() {
                for (l, w) in rows_v[i + n].iter().enumerate() {
                    add_at(&mut rhs, l + j, &base.mul(&s, w));
                }
            }
        }
        coefficient_counterexample(&lhs, &rhs, "k", || {
            let mut v = abc(&mons[a], &mons[b], &mons[c]);
            v.extend([format!("m = {m}"), format!("n = {n}"), format!("p = {p}")]);
            v
        })
    }))
}

/// The instances of the general condition at `m, n ∈ {0, 1}` and their
/// consequences, one report each:
///
/// - `degree_zero_condition`:
///   `Σ_{i=k-p}^{I_{0,a}} α_{i+1,1}(a)·π^i_{k-p}(b·c) = (a·b)·α_{k+1,p+1}(c)`
/// - `delta_shift_condition`:
///   `Σ_{i=k-p-1}^{I_{0,a}} α_{i+1,1}(a)·π^i_{k-p-1}(b·σ(c)) + Σ_{i=k-p}^{I_{0,a}} α_{i+1,1}(a)·π^i_{k-p}(b·δ(c))
///    = (a·b)·(δ(α_{k+1,p+1}(c)) + σ(α_{k,p+1}(c)))`
/// - `delta_shift_commuted`: the right side above equals
///   `(a·b)·(α_{k+1,p+1}(δ(c)) + α_{k,p+1}(σ(c)))`
/// - `degree_one_condition`:
///   `Σ_{i=k-p}^{I_{1,a}} α_{i+1,2}(a)·π^i_{k-p}(b·c)
///    = (a·σ(b))·(δ(α_{k+1,p+1}(c)) + σ(α_{k,p+1}(c))) + (a·δ(b))·α_{k+1,p+1}(c)`
/// - `sigma_top_coefficient`: `(a·b)·σ(α_{I+1,p+1}(c)) = (a·b)·α_{I+1,p+1}(σ(c))`
///   with `I = max(I_{p,c}, I_{p,δ(c)})`
/// - `delta_bottom_coefficient`: `(a·b)·δ(α_{1,p+1}(c)) = (a·b)·α_{1,p+1}(δ(c))`,
///   which equals `(a·b)·α_{j+1,j+1}(δ(c))` for every `j` when `p = 0`, and 0 otherwise.
///
/// `α_{0,p+1} = 0`, and `I_{p,a}` is [`TwistTable::top_index`]. Inputs range
/// over monomials up to `deg_y`, `p, j ≤ deg_x` and every `k` at which a
/// side can be nonzero.
pub fn check_necessary_conditions<S: Scalar>(
    base: &BaseRing<S>,
    table: &TwistTable<S>,
    bounds: Bounds,
) -> Result<Vec<Report>, HomError> {
    let (max_i, max_m) = table.window();
    if bounds.deg_x > max_m {
        return Err(HomError::WindowExceeded { deg_x: bounds.deg_x, max_m });
    }
    let mons = monomials::<S>(bounds.deg_y);
    let (sigma, delta) = (&base.sigma, &base.delta);
    let mul = |x: &Polynomial<S>, y: &Polynomial<S>| base.mul(x, y);
    let al = |i: i64, m: usize, x: &Polynomial<S>| table.eval(i, m, x);
    // Σ_{i=lo}^{top} α_{i+1,col+1}(a)·π^i_lo(x)
    let partial = |a: &Polynomial<S>, x: &Polynomial<S>, lo: i64, top: usize, col: usize| {
        let mut acc = Polynomial::zero();
        if lo < 0 || lo as usize > top || x.is_zero() {
            return acc;
        }
        let rows = base.pi_rows(top, x);
        for (i, row) in rows.iter().enumerate().skip(lo as usize) {
            acc = acc.plus(&mul(&al(i as i64, col, a), &row[lo as usize]));
        }
        acc
    };

    let mut cases = Vec::new();
    for (a, b, c) in triples(mons.len()) {
        for p in 0..=bounds.deg_x {
            for k in 0..=(max_i + p + 1) {
                cases.push((a, b, c, p, k));
            }
        }
    }
    let inputs = |a: usize, b: usize, c: usize, p: usize, k: usize| {
        let mut v = abc(&mons[a], &mons[b], &mons[c]);
        v.extend([format!("k = {k}"), format!("p = {p}")]);
        v
    };

    let eq4 = run_cases("degree_zero_condition", bounds, &cases, |&(a, b, c, p, k)| {
        let (a_, b_, c_) = (&mons[a], &mons[b], &mons[c]);
        let lhs = partial(a_, &mul(b_, c_), k as i64 - p as i64, table.top_index(0, a_), 0);
        let rhs = mul(&mul(a_, b_), &al(k as i64, p, c_));
        compare(lhs, rhs, || inputs(a, b, c, p, k))
    });

    let shift_rhs = |ab: &Polynomial<S>, c_: &Polynomial<S>, p: usize, k: usize| {
        let inner = delta.apply(&al(k as i64, p, c_)).plus(&sigma.apply(&al(k as i64 - 1, p, c_)));
        mul(ab, &inner)
    };
    let eq5a = run_cases("delta_shift_condition", bounds, &cases, |&(a, b, c, p, k)| {
        let (a_, b_, c_) = (&mons[a], &mons[b], &mons[c]);
        let top = table.top_index(0, a_);
        let lo = k as i64 - p as i64;
        let lhs = partial(a_, &mul(b_, &sigma.apply(c_)), lo - 1, top, 0)
            .plus(&partial(a_, &mul(b_, &delta.apply(c_)), lo, top, 0));
        compare(lhs, shift_rhs(&mul(a_, b_), c_, p, k), || inputs(a, b, c, p, k))
    });

    let eq5b = run_cases("delta_shift_commuted", bounds, &cases, |&(a, b, c, p, k)| {
        let (a_, b_, c_) = (&mons[a], &mons[b], &mons[c]);
        let ab = mul(a_, b_);
        let rhs = al(k as i64, p, &delta.apply(c_)).plus(&al(k as i64 - 1, p, &sigma.apply(c_)));
        compare(shift_rhs(&ab, c_, p, k), mul(&ab, &rhs), || inputs(a, b, c, p, k))
    });

    let eq6 = run_cases("degree_one_condition", bounds, &cases, |&(a, b, c, p, k)| {
        let (a_, b_, c_) = (&mons[a], &mons[b], &mons[c]);
        let lhs = partial(a_, &mul(b_, c_), k as i64 - p as i64, table.top_index(1, a_), 1);
        let rhs = shift_rhs(&mul(a_, &sigma.apply(b_)), c_, p, k)
            .plus(&mul(&mul(a_, &delta.apply(b_)), &al(k as i64, p, c_)));
        compare(lhs, rhs, || inputs(a, b, c, p, k))
    });

    let mut short = Vec::new();
    for (a, b, c) in triples(mons.len()) {
        for p in 0..=bounds.deg_x {
            short.push((a, b, c, p));
        }
    }
    let a1 = run_cases("sigma_top_coefficient", bounds, &short, |&(a, b, c, p)| {
        let (a_, b_, c_) = (&mons[a], &mons[b], &mons[c]);
        let top = table.top_index(p, c_).max(table.top_index(p, &delta.apply(c_)));
        let ab = mul(a_, b_);
        let lhs = mul(&ab, &sigma.apply(&al(top as i64, p, c_)));
        let rhs = mul(&ab, &al(top as i64, p, &sigma.apply(c_)));
        compare(lhs, rhs, || {
            let mut v = abc(a_, b_, c_);
            v.extend([format!("p = {p}"), format!("I = {top}")]);
            v
        })
    });

    let a2 = run_cases("delta_bottom_coefficient", bounds, &short, |&(a, b, c, p)| {
        let (a_, b_, c_) = (&mons[a], &mons[b], &mons[c]);
        let ab = mul(a_, b_);
        let dc = delta.apply(c_);
        let mid = mul(&ab, &al(0, p, &dc));
        let named = |extra: Option<usize>| {
            let mut v = abc(a_, b_, c_);
            v.push(format!("p = {p}"));
            v.extend(extra.map(|j| format!("j = {j}")));
            v
        };
        if let Some(cx) = compare(mul(&ab, &delta.apply(&al(0, p, c_))), mid.clone(), || named(None)) {
            return Some(cx);
        }
        if p != 0 {
            return compare(mid, Polynomial::zero(), || named(None));
        }
        (0..=bounds.deg_x).find_map(|j| compare(mid.clone(), mul(&ab, &al(j as i64, j, &dc)), || named(Some(j))))
    });

    Ok(vec![eq4, eq5a, eq5b, eq6, a1, a2])
}

/// Both sides of an identity in three base ring elements.
type TripleSides<'f, S> = dyn Fn(&Polynomial<S>, &Polynomial<S>, &Polynomial<S>) -> (Polynomial<S>, Polynomial<S>) + Sync + 'f;

/// The four identities a homogeneous twist must satisfy, one report each:
///
/// - `delta_commutes_with_twist`: `(a·b)·δ(α(c)) = (a·b)·α(δ(c))`
/// - `sigma_commutes_with_twist`: `(a·b)·σ(α(c)) = (a·b)·α(σ(c))`
/// - `twisted_leibniz`: `α(a)·δ(b·c) = α(a)·(δ(b)·c + σ(b)·δ(c))`
/// - `sigma_multiplicative`: `α(a)·σ(b·c) = α(a)·(σ(b)·σ(c))`
pub fn check_homogeneous_corollaries<S: Scalar>(base: &BaseRing<S>, alpha: &MapSpec<S>, deg_y: usize) -> Vec<Report> {
    let mons = monomials::<S>(deg_y);
    let bounds = Bounds { deg_x: 0, deg_y };
    let cases = triples(mons.len());
    let (sigma, delta) = (&base.sigma, &base.delta);
    let mul = |x: &Polynomial<S>, y: &Polynomial<S>| base.mul(x, y);
    let check = |name: &str, f: &TripleSides<'_, S>| {
        run_cases(name, bounds, &cases, |&(a, b, c)| {
            let (l, r) = f(&mons[a], &mons[b], &mons[c]);
            compare(l, r, || abc(&mons[a], &mons[b], &mons[c]))
        })
    };
    vec![
        check("delta_commutes_with_twist", &|a, b, c| {
            let ab = mul(a, b);
            (mul(&ab, &delta.apply(&alpha.apply(c))), mul(&ab, &alpha.apply(&delta.apply(c))))
        }),
        check("sigma_commutes_with_twist", &|a, b, c| {
            let ab = mul(a, b);
            (mul(&ab, &sigma.apply(&alpha.apply(c))), mul(&ab, &alpha.apply(&sigma.apply(c))))
        }),
        check("twisted_leibniz", &|a, b, c| {
            let aa = alpha.apply(a);
            let rhs = mul(&delta.apply(b), c).plus(&mul(&sigma.apply(b), &delta.apply(c)));
            (mul(&aa, &delta.apply(&mul(b, c))), mul(&aa, &rhs))
        }),
        check("sigma_multiplicative", &|a, b, c| {
            let aa = alpha.apply(a);
            (mul(&aa, &sigma.apply(&mul(b, c))), mul(&aa, &mul(&sigma.apply(b), &sigma.apply(c))))
        }),
    ]
}

/// The criterion for a homogeneous twist: for monomials `a, b, c` up to
/// `deg_y`, `m, n ≤ deg_x` and every `l`,
///
/// `Σ_i α(a)·π^m_i(b·π^n_{l-i}(c)) = Σ_i (a·π^m_i(b))·π^{i+n}_l(α(c))`.
///
/// Running this on a context's [`OreContext::base_ring`] gives the same
/// verdict as [`check_hom_associativity`] at the same bounds.
pub fn check_pi_sum_condition<S: Scalar>(base: &BaseRing<S>, alpha: &MapSpec<S>, bounds: Bounds) -> Report {
    let mons = monomials::<S>(bounds.deg_y);
    let dx = bounds.deg_x;
    let rows: Vec<_> = mons.iter().map(|x| base.pi_rows(dx, x)).collect();
    let twisted_rows: Vec<_> = mons.iter().map(|x| base.pi_rows(2 * dx, &alpha.apply(x))).collect();
    let mut cases = Vec::new();
    for (a, b, c) in triples(mons.len()) {
        for m in 0..=dx {
            for n in 0..=dx {
                cases.push((a, b, c, m, n));
            }
        }
    }
    run_cases("pi_sum_condition", bounds, &cases, |&(a, b, c, m, n)| {
        let aa = alpha.apply(&mons[a]);
        let mut lhs = Vec::new();
        for q in 0..=n {
            let u = base.mul(&mons[b], &rows[c][n][q]);
            let rows_u = base.pi_rows(m, &u);
            for (i, v) in rows_u[m].iter().enumerate() {
                add_at(&mut lhs, i + q, &base.mul(&aa, v));
            }
        }
        let mut rhs = Vec::new();
        for i in 0..=m {
            let s = base.mul(&mons[a], &rows[b][m][i]);
            for (l, w) in twisted_rows[c][i + n].iter().enumerate() {
                add_at(&mut rhs, l, &base.mul(&s, w));
            }
        }
        coefficient_counterexample(&lhs, &rhs, "l", || {
            let mut v = abc(&mons[a], &mons[b], &mons[c]);
            v.extend([format!("m = {m}"), format!("n = {n}")]);
            v
        })
    })
}

/// `Σ_i π^m_i(b·π^n_{l-i}(c)) = Σ_i π^m_i(b)·π^{i+n}_l(c)` over the
/// ordinary product of `K[Y]`, for monomials `b, c` up to `deg_y`,
/// `m, n ≤ deg_x` and every `l`.
pub fn check_pi_product_identity<S: Scalar>(sigma: &MapSpec<S>, delta: &MapSpec<S>, bounds: Bounds) -> Report {
    let base = BaseRing::new(sigma.clone(), delta.clone(), BaseProduct::Plain);
    let mons = monomials::<S>(bounds.deg_y);
    let dx = bounds.deg_x;
    let rows: Vec<_> = mons.iter().map(|x| base.pi_rows(2 * dx, x)).collect();
    let mut cases = Vec::new();
    for (b, c) in pairs(mons.len()) {
        for m in 0..=dx {
            for n in 0..=dx {
                cases.push((b, c, m, n));
            }
        }
    }
    run_cases("pi_product_identity", bounds, &cases, |&(b, c, m, n)| {
        let mut lhs = Vec::new();
        for q in 0..=n {
            let u = mons[b].times(&rows[c][n][q]);
            for (i, v) in base.pi_rows(m, &u)[m].iter().enumerate() {
                add_at(&mut lhs, i + q, v);
            }
        }
        let mut rhs = Vec::new();
        for i in 0..=m {
            for (l, w) in rows[c][i + n].iter().enumerate() {
                add_at(&mut rhs, l, &rows[b][m][i].times(w));
            }
        }
        coefficient_counterexample(&lhs, &rhs, "l", || {
            vec![format!("b = {}", mons[b]), format!("c = {}", mons[c]), format!("m = {m}"), format!("n = {n}")]
        })
    })
}

/// For an endomorphism `γ` of `K[Y]`: `γ(a)·π^m_i(γ(b)) = γ(a)·γ(π^m_i(b))`
/// on monomials, and multiplicativity of the homogeneous extension of `γ`
/// for the untwisted Ore product on the monomial grid.
pub fn check_endo_extension<S: Scalar>(
    gamma: &MapSpec<S>,
    sigma: &MapSpec<S>,
    delta: &MapSpec<S>,
    bounds: Bounds,
) -> Result<Report, HomError> {
    let pre = check_endomorphism(gamma, bounds.deg_y);
    if !pre.passed() {
        return Err(HomError::Precondition(Box::new(pre)));
    }
    let base = BaseRing::new(sigma.clone(), delta.clone(), BaseProduct::Plain);
    let mons = monomials::<S>(bounds.deg_y);
    let mut cases = Vec::new();
    for (a, b) in pairs(mons.len()) {
        for m in 0..=bounds.deg_x {
            cases.push((a, b, m));
        }
    }
    let coefficientwise = run_cases("endo_extension", bounds, &cases, |&(a, b, m)| {
        let ga = gamma.apply(&mons[a]);
        let lhs: Vec<_> = base.pi_rows(m, &gamma.apply(&mons[b]))[m].iter().map(|v| ga.times(v)).collect();
        let rhs: Vec<_> = base.pi_rows(m, &mons[b])[m].iter().map(|v| ga.times(&gamma.apply(v))).collect();
        coefficient_counterexample(&lhs, &rhs, "i", || {
            vec![format!("a = {}", mons[a]), format!("b = {}", mons[b]), format!("m = {m}")]
        })
    });
    let ctx = OreContext::plain(sigma.clone(), delta.clone());
    let grid = monomial_grid::<S>(bounds);
    let ext = |p: &OrePoly<S>| p.map_coeffs(|a| gamma.apply(a));
    let multiplicative = run_cases("endo_extension", bounds, &pairs(grid.len()), |&(p, q)| {
        let (p_, q_) = (&grid[p], &grid[q]);
        compare(ext(&ctx.ore_mul(p_, q_)), ctx.ore_mul(&ext(p_), &ext(q_)), || {
            vec![format!("p = {p_}"), format!("q = {q_}")]
        })
    });
    Ok(Report::merge("endo_extension", bounds, vec![coefficientwise, multiplicative]))
}

/// `e·p = p·e = α(p)` for every monomial `p` within `bounds`.
pub fn check_weak_unit<S: Scalar>(ctx: &OreContext<S>, e: &OrePoly<S>, bounds: Bounds) -> Report {
    let grid = monomial_grid::<S>(bounds);
    run_cases("weak_unit", bounds, &grid, |p| {
        let ap = ctx.twist_apply(p);
        let named = || vec![format!("e = {e}"), format!("p = {p}")];
        compare(ctx.mul(e, p), ap.clone(), named).or_else(|| compare(ctx.mul(p, e), ap, named))
    })
}

fn homogeneous_alpha<S: Scalar>(ctx: &OreContext<S>) -> Result<&MapSpec<S>, HomError> {
    ctx.alpha().ok_or(HomError::NeedsHomogeneousTwist)
}

fn require(report: Report) -> Result<(), HomError> {
    if report.passed() {
        Ok(())
    } else {
        Err(HomError::Precondition(Box::new(report)))
    }
}

/// The three statements about a weak unit `e` of `R` when `σ = id`, one
/// report each:
///
/// - `weak_unit_kills_derivatives`: `a·δ^n(e) = δ^n(e)·a = 0` for `1 ≤ n ≤ deg_x`
/// - `weak_unit_extends`: `e` is a weak unit of the Ore extension
/// - `weak_unit_commutator`: `eX·q - q·eX = Σ_i α(δ(q_i)) X^i`, on the
///   monomial grid and on `samples` random `q` drawn from `seed`
///
/// Products are those of the context. Fails with an error unless `σ` is the
/// identity, `α` is homogeneous and commutes with `δ`, and `e` is a weak
/// unit of `R`.
pub fn check_weak_unit_lemma<S: Scalar>(
    ctx: &OreContext<S>,
    e: &Polynomial<S>,
    bounds: Bounds,
    seed: u64,
    samples: usize,
) -> Result<Vec<Report>, HomError> {
    let alpha = homogeneous_alpha(ctx)?;
    let base = ctx.base_ring();
    let mons = monomials::<S>(bounds.deg_y);
    let y_bounds = Bounds { deg_x: 0, deg_y: bounds.deg_y };
    require(run_cases("sigma_is_identity", y_bounds, &mons, |a| {
        compare(ctx.sigma().apply(a), a.clone(), || vec![format!("a = {a}")])
    }))?;
    require(check_commute(alpha, ctx.delta(), bounds.deg_y))?;
    require(run_cases("weak_unit", y_bounds, &mons, |a| {
        let aa = alpha.apply(a);
        let named = || vec![format!("e = {e}"), format!("a = {a}")];
        compare(base.mul(e, a), aa.clone(), named).or_else(|| compare(base.mul(a, e), aa, named))
    }))?;

    let mut derivs = vec![e.clone()];
    for n in 1..=bounds.deg_x {
        let next = ctx.delta().apply(&derivs[n - 1]);
        derivs.push(next);
    }
    let mut cases = Vec::new();
    for a in 0..mons.len() {
        for n in 1..=bounds.deg_x {
            cases.push((a, n));
        }
    }
    let first = run_cases("weak_unit_kills_derivatives", bounds, &cases, |&(a, n)| {
        let named = || vec![format!("a = {}", mons[a]), format!("n = {n}")];
        compare(base.mul(&mons[a], &derivs[n]), Polynomial::zero(), named)
            .or_else(|| compare(base.mul(&derivs[n], &mons[a]), Polynomial::zero(), named))
    });

    let e_ore = OrePoly::from_poly(e.clone());
    let mut second = check_weak_unit(ctx, &e_ore, bounds);
    second.property = "weak_unit_extends".to_string();

    let ex = OrePoly::monomial(e.clone(), 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut qs = monomial_grid::<S>(bounds);
    qs.extend((0..samples).map(|_| random_ore_poly::<S, _>(&mut rng, bounds)));
    let third = run_cases("weak_unit_commutator", bounds, &qs, |q| {
        let expected = q.map_coeffs(|qi| alpha.apply(&ctx.delta().apply(qi)));
        compare(ctx.commutator(&ex, q), expected, || vec![format!("e = {e}"), format!("q = {q}")])
    })
    .with_seed(seed);
    Ok(vec![first, second, third])
}

/// When `e` is a weak unit with `α(e) = e`, the twist is multiplicative:
/// `α(p·q) = α(p)·α(q)` on the monomial grid.
pub fn check_multiplicative_from_fixed_unit<S: Scalar>(
    ctx: &OreContext<S>,
    e: &OrePoly<S>,
    bounds: Bounds,
) -> Result<Report, HomError> {
    require(check_weak_unit(ctx, e, bounds))?;
    require(run_cases("twist_fixes_unit", bounds, &[()], |_| {
        compare(ctx.twist_apply(e), e.clone(), || vec![format!("e = {e}")])
    }))?;
    let grid = monomial_grid::<S>(bounds);
    Ok(run_cases("multiplicative_twist", bounds, &pairs(grid.len()), |&(p, q)| {
        let (p_, q_) = (&grid[p], &grid[q]);
        compare(ctx.twist_apply(&ctx.mul(p_, q_)), ctx.mul(&ctx.twist_apply(p_), &ctx.twist_apply(q_)), || {
            vec![format!("p = {p_}"), format!("q = {q_}")]
        })
    }))
}

/// With `a * b = α(a·b)` on `K[Y]`: `σ(a*b) = σ(a)*σ(b)` and
/// `δ(a*b) = σ(a)*δ(b) + δ(a)*b` on monomial pairs up to `deg_y`.
pub fn check_star_sigma_derivation<S: Scalar>(
    sigma: &MapSpec<S>,
    delta: &MapSpec<S>,
    alpha: &MapSpec<S>,
    deg_y: usize,
) -> Vec<Report> {
    let star = BaseProduct::Star(alpha.clone());
    let mons = monomials::<S>(deg_y);
    let bounds = Bounds { deg_x: 0, deg_y };
    let cases = pairs(mons.len());
    let named = |a: usize, b: usize| vec![format!("a = {}", mons[a]), format!("b = {}", mons[b])];
    let mult = run_cases("star_sigma_multiplicative", bounds, &cases, |&(a, b)| {
        let (a_, b_) = (&mons[a], &mons[b]);
        compare(sigma.apply(&star.apply(a_, b_)), star.apply(&sigma.apply(a_), &sigma.apply(b_)), || named(a, b))
    });
    let der = run_cases("star_sigma_derivation", bounds, &cases, |&(a, b)| {
        let (a_, b_) = (&mons[a], &mons[b]);
        let rhs = star.apply(&sigma.apply(a_), &delta.apply(b_)).plus(&star.apply(&delta.apply(a_), b_));
        compare(delta.apply(&star.apply(a_, b_)), rhs, || named(a, b))
    });
    vec![mult, der]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ore::{Mode, Twist};
    use crate::ring::Rational;

    type Q = Rational;

    fn r(n: i64) -> Q {
        Q::integer(n)
    }
    fn y(d: usize) -> Polynomial<Q> {
        Polynomial::monomial(Q::one(), d)
    }
    fn b(x: usize, yy: usize) -> Bounds {
        Bounds::new(x, yy).unwrap()
    }
    fn weyl(k: Q) -> OreContext<Q> {
        OreContext::star(MapSpec::Identity, MapSpec::d_dy(), MapSpec::shift(k))
    }

    #[test]
    fn hom_weyl_is_hom_associative() {
        assert!(check_hom_associativity(&weyl(Q::new(3, 2)), b(2, 2)).passed());
        let assoc = OreContext::plain(MapSpec::<Q>::Identity, MapSpec::d_dy());
        assert!(check_hom_associativity(&assoc, b(2, 2)).passed());
    }

    #[test]
    fn plain_quantum_plane_fails() {
        let (q, k) = (r(2), r(3));
        let ctx = OreContext::new(
            MapSpec::scaling(q.clone()),
            MapSpec::Zero,
            Twist::Homogeneous(MapSpec::scaling(k.clone())),
            Mode::Plain,
        )
        .unwrap();
        let rep = check_hom_associativity(&ctx, b(1, 1));
        assert!(!rep.passed());
        let cx = rep.counterexample.unwrap();
        assert_ne!(cx.lhs, cx.rhs);
        let (x, yy) = (OrePoly::x(), OrePoly::y());
        let (lhs, rhs) = hom_associativity_sides(&ctx, &x, &yy, &yy);
        let y2x = |c: Q| OrePoly::monomial(Polynomial::monomial(c, 2), 1);
        assert_eq!(lhs, y2x(q.times(&q)));
        assert_eq!(rhs, y2x(k.times(&q).times(&q)));
    }

    #[test]
    fn general_condition_examples() {
        let alpha = MapSpec::shift(Q::new(3, 2));
        let star = BaseRing::new(MapSpec::Identity, MapSpec::d_dy(), BaseProduct::Star(alpha.clone()));
        let table = TwistTable::homogeneous(alpha, 2);
        assert!(check_general_condition(&star, &table, b(2, 2)).unwrap().passed());

        let plain = BaseRing::new(MapSpec::<Q>::Identity, MapSpec::d_dy(), BaseProduct::Plain);
        let zero = TwistTable::new(2, 2);
        assert!(check_general_condition(&plain, &zero, b(2, 2)).unwrap().passed());

        let mut only = TwistTable::new(1, 1);
        only.set(0, 0, MapSpec::Identity).unwrap();
        let rep = check_general_condition(&plain, &only, b(1, 1)).unwrap();
        let cx = rep.counterexample.expect("a lone α_{1,1} is not hom-associative");
        assert_eq!(cx.inputs.len(), 7);

        assert!(matches!(
            check_general_condition(&plain, &only, b(2, 1)),
            Err(HomError::WindowExceeded { deg_x: 2, max_m: 1 })
        ));
        assert!(only.set(2, 0, MapSpec::Identity).is_err());
    }

    #[test]
    fn general_condition_agrees_with_direct_check_for_tables() {
        let mut t = TwistTable::new(1, 1);
        t.set(0, 0, MapSpec::Identity).unwrap();
        t.set(1, 1, MapSpec::Identity).unwrap();
        t.set(0, 1, MapSpec::d_dy()).unwrap();
        let plain = BaseRing::new(MapSpec::<Q>::Identity, MapSpec::d_dy(), BaseProduct::Plain);
        let ctx = OreContext::new(MapSpec::Identity, MapSpec::d_dy(), Twist::Table(t.clone()), Mode::Plain).unwrap();
        let bounds = b(1, 2);
        assert_eq!(
            check_general_condition(&plain, &t, bounds).unwrap().passed(),
            check_hom_associativity(&ctx, bounds).passed()
        );
    }

    #[test]
    fn top_index() {
        let mut t = TwistTable::<Q>::new(3, 1);
        t.set(2, 0, MapSpec::d_dy()).unwrap();
        t.set(1, 0, MapSpec::Identity).unwrap();
        assert_eq!(t.top_index(0, &y(1)), 2);
        assert_eq!(t.top_index(0, &y(0)), 1);
        assert_eq!(t.top_index(1, &y(1)), 0);
        assert_eq!(t.eval(-1, 0, &y(1)), Polynomial::zero());
    }

    #[test]
    fn necessary_conditions_hold_for_homogeneous_weyl() {
        let alpha = MapSpec::shift(r(2));
        let star = BaseRing::new(MapSpec::Identity, MapSpec::d_dy(), BaseProduct::Star(alpha.clone()));
        let reports = check_necessary_conditions(&star, &TwistTable::homogeneous(alpha, 2), b(2, 2)).unwrap();
        assert_eq!(reports.len(), 6);
        for rep in reports {
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn necessary_conditions_catch_a_bad_table() {
        let plain = BaseRing::new(MapSpec::<Q>::Identity, MapSpec::d_dy(), BaseProduct::Plain);
        let mut only = TwistTable::new(1, 1);
        only.set(0, 0, MapSpec::Identity).unwrap();
        let reports = check_necessary_conditions(&plain, &only, b(1, 1)).unwrap();
        assert!(reports.iter().any(|r| !r.passed()));
    }

    #[test]
    fn homogeneous_corollaries() {
        let w = weyl(r(5));
        for rep in check_homogeneous_corollaries(&w.base_ring(), w.alpha().unwrap(), 3) {
            assert!(rep.passed(), "{rep}");
        }
        let env = BaseRing::new(MapSpec::Identity, MapSpec::y_d_dy(), BaseProduct::Plain);
        let reps = check_homogeneous_corollaries(&env, &MapSpec::shift(r(1)), 3);
        let cx = reps[0].counterexample.clone().unwrap();
        assert_eq!(cx.inputs, vec!["a = 1", "b = 1", "c = Y"]);
        assert_eq!((cx.lhs.as_str(), cx.rhs.as_str()), ("Y", "Y + 1"));
        assert!(reps[1..].iter().all(|r| r.passed()));
    }

    #[test]
    fn pi_sum_condition() {
        let w = weyl(r(-2));
        assert!(check_pi_sum_condition(&w.base_ring(), w.alpha().unwrap(), b(2, 2)).passed());
        let bad = OreContext::star(MapSpec::scaling(r(2)), MapSpec::Zero, MapSpec::shift(r(1)));
        let rep = check_pi_sum_condition(&bad.base_ring(), bad.alpha().unwrap(), b(1, 1));
        assert!(!rep.passed());
        assert!(!check_hom_associativity(&bad, b(1, 1)).passed());
    }

    #[test]
    fn pi_product_identity() {
        assert!(check_pi_product_identity(&MapSpec::<Q>::Identity, &MapSpec::d_dy(), b(2, 2)).passed());
        let delta = MapSpec::derivation(y(1).scale(&r(2)), MapSpec::scaling(r(3)));
        assert!(check_pi_product_identity(&MapSpec::scaling(r(3)), &delta, b(2, 2)).passed());
    }

    #[test]
    fn endo_extension() {
        let (s, d) = (MapSpec::<Q>::Identity, MapSpec::d_dy());
        assert!(check_endo_extension(&MapSpec::shift(r(4)), &s, &d, b(2, 2)).unwrap().passed());
        assert!(check_endo_extension(&MapSpec::Identity, &s, &d, b(2, 2)).unwrap().passed());
        let gamma = MapSpec::endo(y(2).plus(&y(1)));
        assert!(!check_endo_extension(&gamma, &s, &d, b(2, 2)).unwrap().passed());
        assert!(matches!(check_endo_extension(&MapSpec::d_dy(), &s, &d, b(1, 2)), Err(HomError::Precondition(_))));
    }

    #[test]
    fn weak_units() {
        let w = weyl(r(1));
        assert!(check_weak_unit(&w, &OrePoly::one(), b(2, 2)).passed());
        let assoc = OreContext::plain(MapSpec::<Q>::Identity, MapSpec::d_dy());
        assert!(check_weak_unit(&assoc, &OrePoly::one(), b(2, 2)).passed());
        assert!(!check_weak_unit(&w, &OrePoly::y(), b(2, 2)).passed());
    }

    #[test]
    fn weak_unit_lemma() {
        let w = weyl(r(3));
        let reports = check_weak_unit_lemma(&w, &Polynomial::one(), b(2, 2), 7, 5).unwrap();
        assert_eq!(reports.len(), 3);
        assert!(reports.iter().all(|r| r.passed()));
        assert_eq!(reports[2].seed, Some(7));

        let q = OrePoly::monomial(y(2), 1);
        let ex = OrePoly::x();
        let expected = OrePoly::monomial(y(1).plus(&Polynomial::constant(r(3))).scale(&r(2)), 1);
        assert_eq!(w.commutator(&ex, &q), expected);

        let skew = OreContext::star(MapSpec::scaling(r(2)), MapSpec::Zero, MapSpec::Identity);
        assert!(matches!(check_weak_unit_lemma(&skew, &Polynomial::one(), b(1, 1), 0, 0), Err(HomError::Precondition(_))));
    }

    #[test]
    fn fixed_unit_gives_multiplicative_twist() {
        let w = weyl(r(2));
        assert!(check_multiplicative_from_fixed_unit(&w, &OrePoly::one(), b(2, 2)).unwrap().passed());
        let assoc = OreContext::plain(MapSpec::<Q>::Identity, MapSpec::d_dy());
        assert!(check_multiplicative_from_fixed_unit(&assoc, &OrePoly::one(), b(2, 2)).unwrap().passed());
        assert!(check_multiplicative_from_fixed_unit(&w, &OrePoly::y(), b(1, 1)).is_err());
    }

    #[test]
    fn star_sigma_derivation() {
        for rep in check_star_sigma_derivation(&MapSpec::<Q>::Identity, &MapSpec::y_d_dy(), &MapSpec::scaling(r(3)), 3) {
            assert!(rep.passed(), "{rep}");
        }
    }
}
