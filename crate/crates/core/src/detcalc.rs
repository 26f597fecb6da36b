//! Column-determinants with operator-valued entries.
//!
//! Entries `δ_ij (x + λ_i T) + E_ij(u)` act on vacuum-module states from
//! the left, so `cdet` is evaluated right to left on the vacuum vector.
//! The permutation sum is replaced by a recursion over the set of rows
//! still available, memoized by row subset.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use rayon::prelude::*;

use crate::pbw::{Element, LieContext, LoopGen};
use crate::pyramid::{GenId, Pyramid};
use crate::scalar::{binomial, Scalar};

/// Polynomial in commuting `u`, `x` with coefficients in the algebra.
/// Keys are `(u-exponent, x-exponent)`.
#[derive(Clone, Debug, PartialEq)]
pub struct UXElem<S> {
    coeffs: BTreeMap<(u32, u32), Element<S>>,
}

impl<S: Scalar> Default for UXElem<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> UXElem<S> {
    pub fn zero() -> Self {
        UXElem {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Element::one())
    }

    pub fn monomial(u: u32, x: u32, e: Element<S>) -> Self {
        let mut out = Self::zero();
        out.add(u, x, &e, &S::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `u^u x^x`.
    pub fn coeff(&self, u: u32, x: u32) -> Element<S> {
        self.coeffs.get(&(u, x)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &Element<S>)> {
        self.coeffs.iter()
    }

    pub fn add(&mut self, u: u32, x: u32, e: &Element<S>, c: &S) {
        if e.is_zero() || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((u, x)).or_default();
        slot.add_scaled(e, c);
        if slot.is_zero() {
            self.coeffs.remove(&(u, x));
        }
    }

    pub fn add_scaled(&mut self, other: &UXElem<S>, c: &S) {
        for (&(u, x), e) in &other.coeffs {
            self.add(u, x, e, c);
        }
    }

    /// Largest `x` exponent, `None` for zero.
    pub fn x_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|&(_, x)| x).max()
    }

    /// Largest `u` exponent among coefficients of `x^x`.
    pub fn u_degree_at(&self, x: u32) -> Option<u32> {
        self.coeffs
            .keys()
            .filter(|&&(_, xx)| xx == x)
            .map(|&(u, _)| u)
            .max()
    }
}

/// One entry `δ_ij (x + λ_i T) + E_ij(u)` of the operator matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixEntry<S> {
    pub x_flag: bool,
    pub t_coeff: i64,
    pub mult_part: UXElem<S>,
}

/// `E_ij(u) = Σ_r E_ij^(r)[depth] u^r` over the window of `(i, j)`.
pub(crate) fn series_entry<S: Scalar>(p: &Pyramid, i: usize, j: usize, depth: i32) -> UXElem<S> {
    let mut out = UXElem::zero();
    for r in p.window(i, j) {
        out.add(
            r as u32,
            0,
            &Element::loop_gen(GenId::new(i, j, r), depth),
            &S::one(),
        );
    }
    out
}

/// The `n × n` matrix of the Segal–Sugawara column-determinant.
pub fn build_entry_matrix<S: Scalar>(p: &Pyramid) -> Vec<Vec<MatrixEntry<S>>> {
    let n = p.n();
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| MatrixEntry {
                    x_flag: i == j,
                    t_coeff: if i == j { p.lambda(i) as i64 } else { 0 },
                    mult_part: series_entry(p, i, j, -1),
                })
                .collect()
        })
        .collect()
}

/// `x·s + t_coeff·T(s) + mult_part·s`; `u`, `x` are constants for `T`.
pub fn apply_entry<S: Scalar>(
    ctx: &LieContext,
    entry: &MatrixEntry<S>,
    s: &UXElem<S>,
) -> UXElem<S> {
    let mut out = UXElem::zero();
    let one = S::one();
    for (&(u, x), e) in &s.coeffs {
        if entry.x_flag {
            out.add(u, x + 1, e, &one);
        }
        if entry.t_coeff != 0 {
            out.add(u, x, &ctx.translation(e), &S::from_i64(entry.t_coeff));
        }
        for (&(mu, mx), m) in &entry.mult_part.coeffs {
            out.add(u + mu, x + mx, &ctx.mul_unchecked(m, e), &one);
        }
    }
    out
}

/// Values that can be summed with signs during column expansion.
pub(crate) trait SignedSum: Clone + Send + Sync {
    fn zero() -> Self;
    fn add_signed(&mut self, other: &Self, negative: bool);
}

impl<S: Scalar> SignedSum for UXElem<S> {
    fn zero() -> Self {
        UXElem::zero()
    }
    fn add_signed(&mut self, other: &Self, negative: bool) {
        let c = if negative { -S::one() } else { S::one() };
        self.add_scaled(other, &c);
    }
}

/// `Σ_σ sgn σ · a_{σ(1)1}(a_{σ(2)2}(… a_{σ(n)n}(base)))` by recursion on
/// the surviving row set. Each subset size is one parallel layer.
pub(crate) fn subset_expand<V, F>(n: usize, base: V, apply: F) -> V
where
    V: SignedSum,
    F: Fn(usize, usize, &V) -> V + Sync,
{
    let mut memo: HashMap<u32, V> = HashMap::new();
    memo.insert(0, base);
    for size in 1..=n {
        let col = n - size;
        let masks: Vec<u32> = (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == size)
            .collect();
        let layer: Vec<(u32, V)> = masks
            .par_iter()
            .map(|&mask| {
                let mut acc = V::zero();
                let rows = (0..n).filter(|&i| mask & (1 << i) != 0);
                for (pos, row) in rows.enumerate() {
                    let sub = &memo[&(mask & !(1 << row))];
                    acc.add_signed(&apply(row, col, sub), pos % 2 == 1);
                }
                (mask, acc)
            })
            .collect();
        memo.extend(layer);
    }
    memo.remove(&((1u32 << n) - 1))
        .expect("full row set computed")
}

/// Column-determinant of an operator matrix, applied to `1`.
pub fn cdet_matrix<S: Scalar>(ctx: &LieContext, matrix: &[Vec<MatrixEntry<S>>]) -> UXElem<S> {
    subset_expand(matrix.len(), UXElem::one(), |row, col, s| {
        apply_entry(ctx, &matrix[row][col], s)
    })
}

/// Reference evaluation as the explicit `n!`-term permutation sum.
pub fn cdet_by_permutations<S: Scalar>(
    ctx: &LieContext,
    matrix: &[Vec<MatrixEntry<S>>],
) -> UXElem<S> {
    let n = matrix.len();
    let mut total = UXElem::zero();
    for sigma in (0..n).permutations(n) {
        let inversions = (0..n)
            .tuple_combinations()
            .filter(|&(a, b)| sigma[a] > sigma[b])
            .count();
        let mut v = UXElem::one();
        for col in (0..n).rev() {
            v = apply_entry(ctx, &matrix[sigma[col]][col], &v);
        }
        let sign = if inversions % 2 == 1 {
            -S::one()
        } else {
            S::one()
        };
        total.add_scaled(&v, &sign);
    }
    total
}

/// The Segal–Sugawara column-determinant as a polynomial in `u` and `x`.
pub fn cdet<S: Scalar>(p: &Pyramid) -> UXElem<S> {
    let ctx = LieContext::vacuum(p.clone());
    cdet_matrix(&ctx, &build_entry_matrix(p))
}

/// Element of `V(a) ⊗ C[τ]` with `τ` kept to the right; keys are
/// `τ`-exponents. Multiplication uses `τ X[r] = X[r] τ − r X[r−1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TauPoly<S> {
    coeffs: BTreeMap<u32, Element<S>>,
}

impl<S: Scalar> Default for TauPoly<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> TauPoly<S> {
    pub fn zero() -> Self {
        TauPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, Element::one())
    }

    pub fn monomial(k: u32, e: Element<S>) -> Self {
        let mut out = Self::zero();
        out.add(k, &e, &S::one());
        out
    }

    pub fn coeff(&self, k: u32) -> Element<S> {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &Element<S>)> {
        self.coeffs.iter()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&mut self, k: u32, e: &Element<S>, c: &S) {
        if e.is_zero() || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_default();
        slot.add_scaled(e, c);
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn add_scaled(&mut self, other: &TauPoly<S>, c: &S) {
        for (&k, e) in &other.coeffs {
            self.add(k, e, c);
        }
    }

    /// Skew product: `(A τ^a)(B τ^b) = Σ_j C(a,j) A·T^j(B) τ^{a−j+b}`.
    pub fn mul(&self, ctx: &LieContext, rhs: &TauPoly<S>) -> TauPoly<S> {
        let mut out = TauPoly::zero();
        for (&kb, b) in &rhs.coeffs {
            let top = self.degree().unwrap_or(0);
            let mut shifted = Vec::with_capacity(top as usize + 1);
            shifted.push(b.clone());
            for j in 1..=top as usize {
                let next = ctx.translation(&shifted[j - 1]);
                shifted.push(next);
            }
            for (&ka, a) in &self.coeffs {
                for j in 0..=ka {
                    let tb = &shifted[j as usize];
                    if tb.is_zero() {
                        continue;
                    }
                    let prod = ctx.mul_unchecked(a, tb);
                    out.add(ka - j + kb, &prod, &binomial(ka, j));
                }
            }
        }
        out
    }
}

impl<S: Scalar> SignedSum for TauPoly<S> {
    fn zero() -> Self {
        TauPoly::zero()
    }
    fn add_signed(&mut self, other: &Self, negative: bool) {
        let c = if negative { -S::one() } else { S::one() };
        self.add_scaled(other, &c);
    }
}

/// `ℰ_ij(τ) = δ_ij τ^{λ_j} + Σ_r E_ij^(r)[−1] τ^{λ_j−1−r}`.
pub fn build_tau_matrix<S: Scalar>(p: &Pyramid) -> Vec<Vec<TauPoly<S>>> {
    let n = p.n();
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let lj = p.lambda(j) as i32;
                    let mut e = TauPoly::zero();
                    if i == j {
                        e.add(lj as u32, &Element::one(), &S::one());
                    }
                    for r in p.window(i, j) {
                        let g = LoopGen::new(GenId::new(i, j, r), -1);
                        e.add((lj - 1 - r) as u32, &Element::gen(g), &S::one());
                    }
                    e
                })
                .collect()
        })
        .collect()
}

/// Column-determinant of `ℰ(τ)` in the skew ring.
pub fn cdet_tau<S: Scalar>(p: &Pyramid) -> TauPoly<S> {
    let ctx = LieContext::vacuum(p.clone());
    let m = build_tau_matrix(p);
    subset_expand(p.n(), TauPoly::one(), |row, col, rest| {
        m[row][col].mul(&ctx, rest)
    })
}

/// `φ°_k`, the coefficient of `τ^{N−k}`.
pub fn tau_coefficient<S: Scalar>(p: &Pyramid, cdet: &TauPoly<S>, k: usize) -> Element<S> {
    if k > p.big_n() {
        return Element::zero();
    }
    cdet.coeff((p.big_n() - k) as u32)
}

/// Weight-`w` homogeneous part.
pub fn max_weight_component<S: Scalar>(v: &Element<S>, w: i32) -> Element<S> {
    v.weight_component(w)
}
