//! Shift-of-argument subalgebras of `U(a)`, generators of the center of
//! `U(a)`, the diagonal-shift automorphism, and the commutative symbols.

use std::collections::BTreeMap;

use crate::detcalc::{cdet_matrix, subset_expand, MatrixEntry, SignedSum, UXElem};
use crate::error::{Error, Result};
use crate::pbw::{Element, LieContext, LoopGen};
use crate::pyramid::{GenId, Pyramid};
use crate::sample;
use crate::scalar::Scalar;
use crate::suga::{phi_table, selected_indices, SugaTable};

/// A linear functional on `a`, by its values on basis elements.
/// Absent keys are zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Chi<S> {
    values: BTreeMap<GenId, S>,
}

impl<S: Scalar> Chi<S> {
    pub fn zero() -> Self {
        Chi {
            values: BTreeMap::new(),
        }
    }

    pub fn new(p: &Pyramid, values: BTreeMap<GenId, S>) -> Result<Self> {
        for g in values.keys() {
            p.check(*g)?;
        }
        let values = values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(Chi { values })
    }

    /// Random values `a/b`, `a ∈ {−3..3}`, `b ∈ {1..3}`, on every basis element.
    pub fn random(p: &Pyramid, seed: u64) -> Self {
        let mut rng = sample::rng(seed);
        let values = p
            .basis()
            .into_iter()
            .map(|g| (g, sample::small_rational::<S, _>(&mut rng)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Chi { values }
    }

    pub fn get(&self, g: GenId) -> S {
        self.values.get(&g).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GenId, &S)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }
}

/// Laurent polynomial in `z` (nonpositive exponents) over `U(a)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ZSeries<S> {
    coeffs: BTreeMap<i32, Element<S>>,
}

impl<S: Scalar> ZSeries<S> {
    pub fn zero() -> Self {
        ZSeries {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(e: Element<S>) -> Self {
        let mut out = Self::zero();
        out.add(0, &e, &S::one());
        out
    }

    pub fn coeff(&self, exp: i32) -> Element<S> {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i32, &Element<S>)> {
        self.coeffs.iter()
    }

    pub fn add(&mut self, exp: i32, e: &Element<S>, c: &S) {
        if e.is_zero() || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_default();
        slot.add_scaled(e, c);
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn add_scaled(&mut self, other: &ZSeries<S>, c: &S) {
        for (&e, v) in &other.coeffs {
            self.add(e, v, c);
        }
    }

    pub fn mul(&self, ctx: &LieContext, rhs: &ZSeries<S>) -> ZSeries<S> {
        let mut out = ZSeries::zero();
        for (&ea, a) in &self.coeffs {
            for (&eb, b) in &rhs.coeffs {
                out.add(ea + eb, &ctx.mul_unchecked(a, b), &S::one());
            }
        }
        out
    }

    /// Specializes `z` to a nonzero value.
    pub fn evaluate(&self, z: &S) -> Result<Element<S>> {
        if z.is_zero() {
            return Err(Error::WrongShape {
                expected: "a nonzero value of z".into(),
                got: "0".into(),
            });
        }
        let mut out = Element::zero();
        for (&e, v) in &self.coeffs {
            let mut w = S::one();
            for _ in 0..e.unsigned_abs() {
                w = w * z.clone();
            }
            if e < 0 {
                w = S::one() / w;
            }
            out.add_scaled(v, &w);
        }
        Ok(out)
    }
}

/// `ρ_χ: X[r] ↦ X z^r + δ_{r,−1} χ(X)`, extended multiplicatively from
/// `U(t^{-1} a[t^{-1}])` to `U(a)[z^{-1}]`.
pub fn rho_chi<S: Scalar>(p: &Pyramid, v: &Element<S>, chi: &Chi<S>) -> Result<ZSeries<S>> {
    for g in chi.values.keys() {
        p.check(*g)?;
    }
    LieContext::vacuum(p.clone()).validate(v)?;
    let ctx = LieContext::finite(p.clone());
    Ok(rho_unchecked(&ctx, v, chi))
}

fn rho_unchecked<S: Scalar>(ctx: &LieContext, v: &Element<S>, chi: &Chi<S>) -> ZSeries<S> {
    let mut out = ZSeries::zero();
    for (m, c) in v.terms() {
        let mut acc = ZSeries::constant(Element::scalar(c.clone()));
        for g in m.gens() {
            let mut factor = ZSeries::zero();
            factor.add(g.depth, &Element::loop_gen(g.gen, 0), &S::one());
            if g.depth == -1 {
                factor.add(0, &Element::one(), &chi.get(g.gen));
            }
            acc = acc.mul(ctx, &factor);
        }
        out.add_scaled(&acc, &S::one());
    }
    out
}

/// `φ^(r)_{k(m)}`: coefficient of `z^{−k+m}` in `ρ_χ(φ_k^(r))`.
#[derive(Clone, Debug, PartialEq)]
pub struct AChiGen<S> {
    pub k: usize,
    pub r: i32,
    pub m: usize,
    pub element: Element<S>,
}

impl<S: Scalar> AChiGen<S> {
    pub fn label(&self) -> String {
        format!("phi[{},{}]({})", self.k, self.r, self.m)
    }
}

/// Generators `φ^(r)_{k(m)}`, `m = 0..k−1`, for every selected `(k, r)`.
pub fn a_chi_generators<S: Scalar>(p: &Pyramid, chi: &Chi<S>) -> Result<Vec<AChiGen<S>>> {
    let table = phi_table::<S>(p);
    a_chi_generators_from(p, &table, chi)
}

pub fn a_chi_generators_from<S: Scalar>(
    p: &Pyramid,
    table: &SugaTable<S>,
    chi: &Chi<S>,
) -> Result<Vec<AChiGen<S>>> {
    let mut out = Vec::new();
    for ((k, r), phi) in table.selected_vectors() {
        let series = rho_chi(p, &phi, chi)?;
        for m in 0..k {
            out.push(AChiGen {
                k,
                r,
                m,
                element: series.coeff(m as i32 - k as i32),
            });
        }
    }
    Ok(out)
}

/// `Σ_k k · λ_{n−k+1}`.
pub fn a_chi_generator_count(p: &Pyramid) -> usize {
    let n = p.n();
    (1..=n).map(|k| k * p.lambda(n - k + 1)).sum()
}

/// Column-determinant over `U(a)` with diagonal `x + (n−i) λ_i + ℰ_ii(u)`.
pub fn center_cdet<S: Scalar>(p: &Pyramid) -> UXElem<S> {
    let n = p.n();
    let ctx = LieContext::finite(p.clone());
    let matrix: Vec<Vec<MatrixEntry<S>>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let mut mult = crate::detcalc::series_entry(p, i, j, 0);
                    if i == j {
                        let shift = ((n - i) * p.lambda(i)) as i64;
                        mult.add(0, 0, &Element::one(), &S::from_i64(shift));
                    }
                    MatrixEntry {
                        x_flag: i == j,
                        t_coeff: 0,
                        mult_part: mult,
                    }
                })
                .collect()
        })
        .collect();
    cdet_matrix(&ctx, &matrix)
}

/// `Φ_k^(r)` for selected `(k, r)`.
pub fn center_generators<S: Scalar>(p: &Pyramid) -> Vec<((usize, i32), Element<S>)> {
    let det = center_cdet::<S>(p);
    let n = p.n();
    selected_indices(p)
        .into_iter()
        .map(|(k, r)| ((k, r), det.coeff(r as u32, (n - k) as u32)))
        .collect()
}

/// `E_ij^(q) ↦ E_ij^(q) + δ_{q0} δ_ij c λ_i`, extended multiplicatively on `U(a)`.
pub fn apply_automorphism<S: Scalar>(p: &Pyramid, v: &Element<S>, c: &S) -> Result<Element<S>> {
    let ctx = LieContext::finite(p.clone());
    ctx.validate(v)?;
    let mut out = Element::zero();
    for (m, coeff) in v.terms() {
        let mut acc = Element::scalar(coeff.clone());
        for g in m.gens() {
            let mut image = Element::gen(*g);
            if g.gen.i == g.gen.j && g.gen.r == 0 {
                image.add_term(
                    crate::pbw::Monomial::one(),
                    c.clone() * S::from_i64(p.lambda(g.gen.i) as i64),
                );
            }
            acc = ctx.mul_unchecked(&acc, &image);
        }
        out.add_scaled(&acc, &S::one());
    }
    Ok(out)
}

/// Polynomial in commuting variables `E_ij^(r)`; monomials are sorted
/// variable lists with repetition.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SymPoly<S> {
    terms: BTreeMap<Vec<GenId>, S>,
}

impl<S: Scalar> SymPoly<S> {
    pub fn zero() -> Self {
        SymPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: S) -> Self {
        let mut out = Self::zero();
        out.add_term(Vec::new(), c);
        out
    }

    pub fn var(g: GenId) -> Self {
        let mut out = Self::zero();
        out.add_term(vec![g], S::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<GenId>, &S)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, mut mono: Vec<GenId>, c: S) {
        if c.is_zero() {
            return;
        }
        mono.sort();
        let slot = self.terms.entry(mono.clone()).or_insert_with(S::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn add_scaled(&mut self, other: &SymPoly<S>, c: &S) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v.clone() * c);
        }
    }

    pub fn mul(&self, rhs: &SymPoly<S>) -> SymPoly<S> {
        let mut out = SymPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                out.add_term(m, ca.clone() * cb);
            }
        }
        out
    }

    pub fn derivative(&self, g: GenId) -> SymPoly<S> {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            let mult = m.iter().filter(|&&h| h == g).count();
            if mult == 0 {
                continue;
            }
            let pos = m.iter().position(|&h| h == g).expect("counted above");
            let mut rest = m.clone();
            rest.remove(pos);
            out.add_term(rest, c.clone() * S::from_i64(mult as i64));
        }
        out
    }

    pub fn evaluate(&self, point: &BTreeMap<GenId, S>) -> S {
        let mut total = S::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for g in m {
                v = v * point.get(g).cloned().unwrap_or_else(S::zero);
            }
            total = total + v;
        }
        total
    }

    /// Total degree of the highest monomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).max()
    }
}

/// Polynomial in `u`, `x` with [`SymPoly`] coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
struct UXSym<S> {
    coeffs: BTreeMap<(u32, u32), SymPoly<S>>,
}

impl<S: Scalar> UXSym<S> {
    fn mul(&self, rhs: &UXSym<S>) -> UXSym<S> {
        let mut out = UXSym::default();
        for (&(ua, xa), a) in &self.coeffs {
            for (&(ub, xb), b) in &rhs.coeffs {
                out.add(ua + ub, xa + xb, &a.mul(b), &S::one());
            }
        }
        out
    }

    fn add(&mut self, u: u32, x: u32, p: &SymPoly<S>, c: &S) {
        let slot = self.coeffs.entry((u, x)).or_default();
        slot.add_scaled(p, c);
        if slot.is_zero() {
            self.coeffs.remove(&(u, x));
        }
    }
}

impl<S: Scalar> SignedSum for UXSym<S> {
    fn zero() -> Self {
        UXSym::default()
    }
    fn add_signed(&mut self, other: &Self, negative: bool) {
        let c = if negative { -S::one() } else { S::one() };
        for (&(u, x), p) in &other.coeffs {
            self.add(u, x, p, &c);
        }
    }
}

/// Coefficients `Φ̄_k^(r)` of `x^{n−k} u^r` in the commutative determinant
/// with diagonal `x + Ē_ii(u)`, for every `(k, r)` that occurs.
pub fn symbols<S: Scalar>(p: &Pyramid) -> BTreeMap<(usize, i32), SymPoly<S>> {
    let n = p.n();
    let matrix: Vec<Vec<UXSym<S>>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let mut e = UXSym::default();
                    if i == j {
                        e.add(0, 1, &SymPoly::constant(S::one()), &S::one());
                    }
                    for r in p.window(i, j) {
                        e.add(r as u32, 0, &SymPoly::var(GenId::new(i, j, r)), &S::one());
                    }
                    e
                })
                .collect()
        })
        .collect();
    let mut one = UXSym::default();
    one.add(0, 0, &SymPoly::constant(S::one()), &S::one());
    let det = subset_expand(n, one, |row, col, rest| matrix[row][col].mul(rest));
    det.coeffs
        .into_iter()
        .filter(|&((_, x), _)| (x as usize) < n)
        .map(|((u, x), poly)| ((n - x as usize, u as i32), poly))
        .collect()
}

/// The symbols at the selected indices.
pub fn selected_symbols<S: Scalar>(p: &Pyramid) -> Vec<((usize, i32), SymPoly<S>)> {
    let all = symbols::<S>(p);
    selected_indices(p)
        .into_iter()
        .map(|idx| (idx, all.get(&idx).cloned().unwrap_or_default()))
        .collect()
}

/// Random rational point on `a`, one value per basis element.
pub fn random_point<S: Scalar>(p: &Pyramid, seed: u64) -> BTreeMap<GenId, S> {
    let mut rng = sample::rng(seed);
    p.basis()
        .into_iter()
        .map(|g| (g, sample::small_rational::<S, _>(&mut rng)))
        .collect()
}

/// Exact rank of the Jacobian of `polys` with respect to the basis of `a`,
/// evaluated at `point`.
pub fn jacobian_rank<S: Scalar>(
    p: &Pyramid,
    polys: &[SymPoly<S>],
    point: &BTreeMap<GenId, S>,
) -> usize {
    let basis = p.basis();
    let rows: Vec<Vec<S>> = polys
        .iter()
        .map(|f| {
            basis
                .iter()
                .map(|&g| f.derivative(g).evaluate(point))
                .collect()
        })
        .collect();
    rank(rows)
}

/// Rank by fraction-exact Gaussian elimination.
pub fn rank<S: Scalar>(mut rows: Vec<Vec<S>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone() / pivot_row[col].clone();
            for (dst, src) in row.iter_mut().zip(&pivot_row).skip(col) {
                *dst = dst.clone() - factor.clone() * src;
            }
        }
        rank += 1;
    }
    rank
}

/// Leading part of a homogeneous vacuum-module element, read as a
/// commutative polynomial after `X[−1] ↦ X`. Terms with other depths or
/// shorter monomials are ignored.
pub fn symbol_of<S: Scalar>(v: &Element<S>, degree: usize) -> SymPoly<S> {
    let mut out = SymPoly::zero();
    for (m, c) in v.terms() {
        if m.len() == degree && m.gens().iter().all(|g: &LoopGen| g.depth == -1) {
            out.add_term(m.gens().iter().map(|g| g.gen).collect(), c.clone());
        }
    }
    out
}
