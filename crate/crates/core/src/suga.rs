//! Segal–Sugawara vectors: extraction from the column-determinant, the
//! index selection, and the identities they satisfy under `Δ` and in the
//! `τ`-skew ring.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;
use std::time::Instant;

use crate::detcalc::{cdet, cdet_tau, tau_coefficient};
use crate::error::{Error, Result};
use crate::pbw::{Element, LieContext};
use crate::pyramid::{GenId, Pyramid};
use crate::scalar::Scalar;
use crate::verify::{Case, Report};

/// Admissible `r` for `φ_k^(r)`:
/// `λ_{n−k+2}+…+λ_n < r+k ≤ λ_{n−k+1}+…+λ_n`.
pub fn selected_range(p: &Pyramid, k: usize) -> RangeInclusive<i32> {
    let n = p.n();
    let lower = p.lambda_sum(n - k + 2, n) as i32 - k as i32 + 1;
    let upper = p.lambda_sum(n - k + 1, n) as i32 - k as i32;
    lower..=upper
}

pub fn is_selected(p: &Pyramid, k: usize, r: i32) -> bool {
    (1..=p.n()).contains(&k) && selected_range(p, k).contains(&r)
}

/// All `(k, r)` passing the selection, ordered by `k` then `r`.
pub fn selected_indices(p: &Pyramid) -> Vec<(usize, i32)> {
    (1..=p.n())
        .flat_map(|k| selected_range(p, k).map(move |r| (k, r)))
        .collect()
}

/// Boundary `λ_{n−k+2}+…+λ_n − k + 1` of the `Δ`-ladder.
pub fn ladder_boundary(p: &Pyramid, k: usize) -> i32 {
    let n = p.n();
    p.lambda_sum(n - k + 2, n) as i32 - k as i32 + 1
}

/// Coefficient in `Δ φ_k^(b) = c · φ_{k−1}^(b)` at the boundary `b`:
/// `−(k−1)(λ_1+…+λ_{n−k+1})`.
pub fn ladder_coefficient(p: &Pyramid, k: usize) -> i64 {
    -((k as i64 - 1) * p.lambda_sum(1, p.n() - k + 1) as i64)
}

/// Every nonzero coefficient `φ_k^(r)` of `x^{n−k} u^r`, with selection flags.
#[derive(Clone, Debug, PartialEq)]
pub struct SugaTable<S> {
    pub pyramid: Pyramid,
    entries: BTreeMap<(usize, i32), Element<S>>,
    selected: BTreeSet<(usize, i32)>,
}

impl<S: Scalar> SugaTable<S> {
    pub fn get(&self, k: usize, r: i32) -> Element<S> {
        self.entries.get(&(k, r)).cloned().unwrap_or_default()
    }

    pub fn is_selected(&self, k: usize, r: i32) -> bool {
        self.selected.contains(&(k, r))
    }

    pub fn selected(&self) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.selected.iter().copied()
    }

    /// Selected vectors with their indices, ordered by `(k, r)`.
    pub fn selected_vectors(&self) -> Vec<((usize, i32), Element<S>)> {
        self.selected
            .iter()
            .map(|&(k, r)| ((k, r), self.get(k, r)))
            .collect()
    }

    /// Every stored or selected index, ordered by `(k, r)`.
    pub fn indices(&self) -> Vec<(usize, i32)> {
        let keys: BTreeSet<(usize, i32)> = self
            .entries
            .keys()
            .chain(self.selected.iter())
            .copied()
            .collect();
        keys.into_iter().collect()
    }

    pub fn rs_for(&self, k: usize) -> Vec<i32> {
        self.entries
            .keys()
            .filter(|&&(kk, _)| kk == k)
            .map(|&(_, r)| r)
            .collect()
    }
}

pub fn phi_table<S: Scalar>(p: &Pyramid) -> SugaTable<S> {
    let det = cdet::<S>(p);
    let n = p.n() as u32;
    let mut entries = BTreeMap::new();
    for (&(u, x), e) in det.iter() {
        if x < n {
            entries.insert(((n - x) as usize, u as i32), e.clone());
        }
    }
    SugaTable {
        pyramid: p.clone(),
        entries,
        selected: selected_indices(p).into_iter().collect(),
    }
}

fn lg<S: Scalar>(i: usize, j: usize, r: i32, depth: i32) -> Element<S> {
    Element::loop_gen(GenId::new(i, j, r), depth)
}

/// `E_ij^(r)[depth]` or zero outside the window.
fn lg_or_zero<S: Scalar>(p: &Pyramid, i: usize, j: usize, r: i32, depth: i32) -> Element<S> {
    if p.window(i, j).contains(&r) {
        lg(i, j, r, depth)
    } else {
        Element::zero()
    }
}

/// `|A_{ii} B_{ij}; A_{ji} B_{jj}|` column-determinant `A_ii B_jj − A_ji B_ij`
/// with `A = E^(a)[−1]`, `B = E^(b)[−1]`.
fn minor2<S: Scalar>(ctx: &LieContext, (i, j): (usize, usize), a: i32, b: i32) -> Element<S> {
    let p = ctx.pyramid();
    let first = ctx.mul_unchecked(&lg_or_zero(p, i, i, a, -1), &lg_or_zero(p, j, j, b, -1));
    let second = ctx.mul_unchecked(&lg_or_zero(p, j, i, a, -1), &lg_or_zero(p, i, j, b, -1));
    first - second
}

fn compare<S: Scalar>(
    cases: &mut Vec<Case<S>>,
    label: &str,
    k: usize,
    r: i32,
    got: &Element<S>,
    want: &Element<S>,
) {
    let diff = got - want;
    cases.push(Case::compared(label, None, Some(k), Some(r), diff));
}

/// `φ_1^(r) = E_1^(r)[−1]` for the single-row pyramid `(N)`.
pub fn principal_check<S: Scalar>(big_n: usize) -> Result<Report<S>> {
    let start = Instant::now();
    let p = Pyramid::new(vec![big_n])?;
    let table = phi_table::<S>(&p);
    let mut cases = Vec::new();
    for r in 0..big_n as i32 {
        compare(
            &mut cases,
            "principal phi1",
            1,
            r,
            &table.get(1, r),
            &lg(1, 1, r, -1),
        );
    }
    Ok(Report::new("principal", &p, cases, start))
}

/// Closed forms of `φ_1` and `φ_2` for two-row pyramids:
/// `φ_2^(r) = Σ_{a+b=r} |E_11^(a) E_12^(b); E_21^(a) E_22^(b)| + λ_1 E_22^(r)[−2]`.
pub fn phi_2_formula_check<S: Scalar>(p: &Pyramid) -> Result<Report<S>> {
    if p.n() != 2 {
        return Err(Error::WrongShape {
            expected: "a pyramid with 2 rows".into(),
            got: format!("{} rows", p.n()),
        });
    }
    let start = Instant::now();
    let ctx = LieContext::vacuum(p.clone());
    let table = phi_table::<S>(p);
    let (l1, l2) = (p.lambda(1) as i32, p.lambda(2) as i32);
    let mut cases = Vec::new();
    for r in 0..l2 {
        let want = lg_or_zero(p, 1, 1, r, -1) + lg_or_zero(p, 2, 2, r, -1);
        compare(
            &mut cases,
            "phi1 closed form",
            1,
            r,
            &table.get(1, r),
            &want,
        );
    }
    for r in 0..=(l1 + l2 - 2) {
        let mut want = lg_or_zero::<S>(p, 2, 2, r, -2).scaled(&S::from_i64(l1 as i64));
        for a in 0..=r {
            want = want + minor2(&ctx, (1, 2), a, r - a);
        }
        compare(
            &mut cases,
            "phi2 closed form",
            2,
            r,
            &table.get(2, r),
            &want,
        );
    }
    Ok(Report::new("phi2-closed-form", p, cases, start))
}

/// Minimal nilpotent pyramid `(1,…,1,2)` with `n` rows:
/// `φ_1^(0) = Σ E_ii^(0)[−1]`, `φ_1^(1) = E_nn^(1)[−1]` and
/// `φ_2^(1) = Σ_{i<n} |E_ii^(0) E_in^(1); E_ni^(0) E_nn^(1)| + (n−1) E_nn^(1)[−2]`.
pub fn minimal_nilpotent_check<S: Scalar>(n: usize) -> Result<Report<S>> {
    let start = Instant::now();
    let p = Pyramid::minimal_nilpotent(n)?;
    let ctx = LieContext::vacuum(p.clone());
    let table = phi_table::<S>(&p);
    let mut cases = Vec::new();

    let mut trace = Element::zero();
    for i in 1..=n {
        trace = trace + lg(i, i, 0, -1);
    }
    compare(&mut cases, "phi1^(0)", 1, 0, &table.get(1, 0), &trace);
    compare(
        &mut cases,
        "phi1^(1)",
        1,
        1,
        &table.get(1, 1),
        &lg(n, n, 1, -1),
    );

    if n >= 2 {
        let mut want = lg::<S>(n, n, 1, -2).scaled(&S::from_i64(n as i64 - 1));
        for i in 1..n {
            let first = ctx.mul_unchecked(&lg(i, i, 0, -1), &lg(n, n, 1, -1));
            let second = ctx.mul_unchecked(&lg(n, i, 0, -1), &lg(i, n, 1, -1));
            want = want + first - second;
        }
        compare(&mut cases, "phi2^(1)", 2, 1, &table.get(2, 1), &want);
    }
    Ok(Report::new("minimal-nilpotent", &p, cases, start))
}

/// `Δ φ_k^(r) = 0` above the boundary and the boundary relation at it.
pub fn delta_ladder<S: Scalar>(p: &Pyramid, table: &SugaTable<S>) -> Report<S> {
    let start = Instant::now();
    let ctx = LieContext::vacuum(p.clone());
    let mut cases = Vec::new();
    for k in 1..=p.n() {
        let b = ladder_boundary(p, k);
        let mut rs: BTreeSet<i32> = table.rs_for(k).into_iter().filter(|&r| r > b).collect();
        rs.insert(b);
        for r in rs {
            let image = ctx.delta(&table.get(k, r));
            let want = if r == b && k > 1 {
                table
                    .get(k - 1, r)
                    .scaled(&S::from_i64(ladder_coefficient(p, k)))
            } else {
                Element::zero()
            };
            compare(&mut cases, "delta", k, r, &image, &want);
        }
    }
    Report::new("delta-ladder", p, cases, start)
}

/// The `Δ`-tower for `gl_n` (all rows of length 1): returns `Δ^k φ` for
/// `k = 0..=n` with `φ = φ_n^(0)`, and checks `Δ^k φ = c_k φ_{n−k}^(0)`
/// with `c_k` obtained by iterating the ladder relation, plus `Δ^n φ = 0`.
pub fn gln_delta_tower<S: Scalar>(n: usize) -> Result<(Vec<Element<S>>, Report<S>)> {
    let start = Instant::now();
    let p = Pyramid::rectangular(n, 1)?;
    let ctx = LieContext::vacuum(p.clone());
    let table = phi_table::<S>(&p);
    let mut tower = vec![table.get(n, 0)];
    let mut cases = Vec::new();
    let mut c = S::one();
    for k in 0..n {
        let want = table.get(n - k, 0).scaled(&c);
        compare(&mut cases, "delta^k phi", n - k, 0, &tower[k], &want);
        c = c * S::from_i64(ladder_coefficient(&p, n - k));
        let next = ctx.delta(&tower[k]);
        tower.push(next);
    }
    cases.push(Case::compared(
        "delta^n phi",
        None,
        Some(0),
        Some(0),
        tower[n].clone(),
    ));
    Ok((tower, Report::new("gl-delta-tower", &p, cases, start)))
}

/// For each selected `(k, r)`, the weight-`r` part of `φ°_{r+k}` equals `φ_k^(r)`.
pub fn tau_cross_check<S: Scalar>(p: &Pyramid, table: &SugaTable<S>) -> Report<S> {
    let start = Instant::now();
    let det = cdet_tau::<S>(p);
    let mut cases = Vec::new();
    for (k, r) in table.selected() {
        let circ = tau_coefficient(p, &det, (r + k as i32) as usize);
        let top = circ.weight_component(r);
        compare(&mut cases, "tau", k, r, &top, &table.get(k, r));
    }
    Report::new("tau-cross-check", p, cases, start)
}
