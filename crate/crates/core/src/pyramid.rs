//! Pyramid combinatorics and the centralizer `a = gl_N^e`.
//!
//! A pyramid is a left-justified array of rows of lengths
//! `λ_1 ≤ … ≤ λ_n`. Its row-tableau numbers the boxes `1..=N` row by row.
//! The centralizer has basis `E_ij^(r)` for `λ_j − min(λ_i, λ_j) ≤ r < λ_j`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pyramid {
    lambdas: Vec<usize>,
    big_n: usize,
}

impl Pyramid {
    /// Builds a pyramid from non-decreasing row lengths. Unsorted input is
    /// rejected, never reordered.
    pub fn new(lambdas: Vec<usize>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::EmptyPyramid);
        }
        for (idx, &len) in lambdas.iter().enumerate() {
            if len == 0 {
                return Err(Error::NonPositiveRow {
                    row: idx + 1,
                    len: 0,
                });
            }
            if idx > 0 && lambdas[idx - 1] > len {
                return Err(Error::DecreasingRows {
                    row: idx + 1,
                    prev: lambdas[idx - 1],
                    len,
                });
            }
        }
        let big_n = lambdas.iter().sum();
        Ok(Pyramid { lambdas, big_n })
    }

    /// The rectangular pyramid with `rows` rows of length `len`.
    pub fn rectangular(rows: usize, len: usize) -> Result<Self> {
        Self::new(vec![len; rows])
    }

    /// Rows `1, …, 1, 2` (minimal nilpotent in `gl_{n+1}`).
    pub fn minimal_nilpotent(rows: usize) -> Result<Self> {
        if rows == 0 {
            return Err(Error::EmptyPyramid);
        }
        let mut lambdas = vec![1; rows];
        lambdas[rows - 1] = 2;
        Self::new(lambdas)
    }

    pub fn lambdas(&self) -> &[usize] {
        &self.lambdas
    }

    /// Number of rows.
    pub fn n(&self) -> usize {
        self.lambdas.len()
    }

    /// Total number of boxes.
    pub fn big_n(&self) -> usize {
        self.big_n
    }

    /// Row length `λ_i`, 1-based.
    pub fn lambda(&self, i: usize) -> usize {
        self.lambdas[i - 1]
    }

    /// `λ_a + … + λ_b` (1-based, inclusive); empty when `a > b`.
    pub fn lambda_sum(&self, a: usize, b: usize) -> usize {
        if a > b {
            return 0;
        }
        self.lambdas[a - 1..b].iter().sum()
    }

    pub fn is_rectangular(&self) -> bool {
        self.lambdas.iter().all(|&l| l == self.lambdas[0])
    }

    fn locate(&self, a: usize) -> Result<(usize, usize)> {
        if a == 0 || a > self.big_n {
            return Err(Error::BoxOutOfRange {
                index: a,
                max: self.big_n,
            });
        }
        let mut rest = a;
        for (idx, &len) in self.lambdas.iter().enumerate() {
            if rest <= len {
                return Ok((idx + 1, rest));
            }
            rest -= len;
        }
        unreachable!("box index checked against N")
    }

    pub fn row_of(&self, a: usize) -> Result<usize> {
        self.locate(a).map(|(row, _)| row)
    }

    pub fn col_of(&self, a: usize) -> Result<usize> {
        self.locate(a).map(|(_, col)| col)
    }

    /// First box number in row `i`.
    fn row_start(&self, i: usize) -> usize {
        self.lambda_sum(1, i - 1) + 1
    }

    /// Admissible shifts `r` for `E_ij^(r)`.
    pub fn window(&self, i: usize, j: usize) -> Range<i32> {
        let (li, lj) = (self.lambda(i), self.lambda(j));
        (lj - li.min(lj)) as i32..lj as i32
    }

    pub fn contains(&self, g: GenId) -> bool {
        (1..=self.n()).contains(&g.i)
            && (1..=self.n()).contains(&g.j)
            && self.window(g.i, g.j).contains(&g.r)
    }

    pub fn check(&self, g: GenId) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::InvalidGenId(g.to_string()))
        }
    }

    /// All basis elements in canonical `(i, j, r)` order.
    pub fn basis(&self) -> Vec<GenId> {
        let n = self.n();
        let mut out = Vec::with_capacity(self.dim());
        for i in 1..=n {
            for j in 1..=n {
                for r in self.window(i, j) {
                    out.push(GenId { i, j, r });
                }
            }
        }
        out
    }

    /// `Σ_{i,j} min(λ_i, λ_j)`.
    pub fn dim(&self) -> usize {
        let mut d = 0;
        for &a in &self.lambdas {
            for &b in &self.lambdas {
                d += a.min(b);
            }
        }
        d
    }

    /// `E_ij^(r)` with the convention that out-of-window shifts vanish.
    fn truncated(&self, i: usize, j: usize, r: i32) -> Option<GenId> {
        let g = GenId { i, j, r };
        if self.window(i, j).contains(&r) {
            Some(g)
        } else {
            debug_assert!(r >= self.lambda(j) as i32, "bracket fell below the window");
            None
        }
    }

    /// Structure constants of `[a, b]` as integer terms.
    pub(crate) fn bracket_terms(&self, a: GenId, b: GenId) -> Vec<(GenId, i64)> {
        let mut out: Vec<(GenId, i64)> = Vec::with_capacity(2);
        let s = a.r + b.r;
        if b.i == a.j {
            if let Some(g) = self.truncated(a.i, b.j, s) {
                out.push((g, 1));
            }
        }
        if a.i == b.j {
            if let Some(g) = self.truncated(b.i, a.j, s) {
                if let Some(pos) = out.iter().position(|(h, _)| *h == g) {
                    out[pos].1 -= 1;
                    if out[pos].1 == 0 {
                        out.remove(pos);
                    }
                } else {
                    out.push((g, -1));
                }
            }
        }
        out
    }

    pub fn bracket<S: Scalar>(&self, a: GenId, b: GenId) -> Result<LieCombo<S>> {
        self.check(a)?;
        self.check(b)?;
        let mut combo = LieCombo::zero();
        for (g, c) in self.bracket_terms(a, b) {
            combo.add_term(g, S::from_i64(c));
        }
        Ok(combo)
    }

    /// `λ_1 + … + λ_{i−1} + (n − i + 1) λ_i`: boxes in the first `λ_i` columns.
    pub fn column_boxes(&self, i: usize) -> usize {
        self.lambda_sum(1, i - 1) + (self.n() - i + 1) * self.lambda(i)
    }

    /// Integer value of the invariant form on basis elements.
    pub(crate) fn form_value(&self, a: GenId, b: GenId) -> i64 {
        if a.r != 0 || b.r != 0 {
            return 0;
        }
        if a.i == a.j && b.i == b.j {
            let (i, j) = (a.i, b.i);
            let mut v = self.lambda(i).min(self.lambda(j)) as i64;
            if i == j {
                v -= self.column_boxes(i) as i64;
            }
            return v;
        }
        if a.i != a.j && a.i == b.j && a.j == b.i && self.lambda(a.i) == self.lambda(a.j) {
            return -(self.column_boxes(a.i) as i64);
        }
        0
    }

    /// The normalized critical-level form `⟨a, b⟩`.
    pub fn form<S: Scalar>(&self, a: GenId, b: GenId) -> Result<S> {
        self.check(a)?;
        self.check(b)?;
        Ok(S::from_i64(self.form_value(a, b)))
    }

    /// `E_ij^(r)` as a sum of matrix units `e_ab` of `gl_N`.
    pub fn gln_expand(&self, g: GenId) -> Result<GlMatrix> {
        self.check(g)?;
        let mut m = GlMatrix::new();
        let (si, sj) = (self.row_start(g.i), self.row_start(g.j));
        for ca in 1..=self.lambda(g.i) {
            let cb = ca as i32 + g.r;
            if cb >= 1 && cb as usize <= self.lambda(g.j) {
                m.insert((si + ca - 1, sj + cb as usize - 1), 1);
            }
        }
        Ok(m)
    }
}

impl fmt::Display for Pyramid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lambdas.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Pyramid {
    type Err = Error;

    /// Parses `"2,3,4"`. Positions in errors are 1-based character offsets.
    fn from_str(s: &str) -> Result<Self> {
        let mut lambdas = Vec::new();
        let mut pos = 1;
        for field in s.split(',') {
            let trimmed = field.trim();
            let lead = field.len() - field.trim_start().len();
            let value: i64 = trimmed.parse().map_err(|_| Error::Parse {
                pos: pos + lead,
                msg: format!("expected a positive integer, found {trimmed:?}"),
            })?;
            if value <= 0 {
                return Err(Error::NonPositiveRow {
                    row: lambdas.len() + 1,
                    len: value,
                });
            }
            lambdas.push(value as usize);
            pos += field.chars().count() + 1;
        }
        Pyramid::new(lambdas)
    }
}

/// Basis symbol `E_ij^(r)`; ordered lexicographically by `(i, j, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId {
    pub i: usize,
    pub j: usize,
    pub r: i32,
}

impl GenId {
    pub const fn new(i: usize, j: usize, r: i32) -> Self {
        GenId { i, j, r }
    }

    /// The weight grading value.
    pub fn weight(&self) -> i32 {
        self.r
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E[{},{},{}]", self.i, self.j, self.r)
    }
}

impl FromStr for GenId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let offset = s.len() - s.trim_start().len() + 1;
        let inner = t
            .strip_prefix("E[")
            .and_then(|rest| rest.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                pos: offset,
                msg: format!("expected E[i,j,r], found {t:?}"),
            })?;
        let fields: Vec<&str> = inner.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                pos: offset + 2,
                msg: format!("expected three indices, found {}", fields.len()),
            });
        }
        let mut pos = offset + 2;
        let mut vals = [0i64; 3];
        for (slot, field) in vals.iter_mut().zip(&fields) {
            *slot = field.trim().parse().map_err(|_| Error::Parse {
                pos,
                msg: format!("expected an integer, found {:?}", field.trim()),
            })?;
            pos += field.len() + 1;
        }
        if vals[0] < 1 || vals[1] < 1 {
            return Err(Error::Parse {
                pos: offset + 2,
                msg: "row indices are 1-based".into(),
            });
        }
        Ok(GenId::new(
            vals[0] as usize,
            vals[1] as usize,
            vals[2] as i32,
        ))
    }
}

/// Sparse `gl_N` matrix in the matrix-unit basis, keyed by `(a, b)`.
pub type GlMatrix = BTreeMap<(usize, usize), i64>;

/// Commutator of two `gl_N` matrices with `[e_ab, e_cd] = δ_cb e_ad − δ_ad e_cb`.
pub fn gl_commutator(x: &GlMatrix, y: &GlMatrix) -> GlMatrix {
    let mut out = GlMatrix::new();
    for (&(a, b), &cx) in x {
        for (&(c, d), &cy) in y {
            if c == b {
                *out.entry((a, d)).or_insert(0) += cx * cy;
            }
            if a == d {
                *out.entry((c, b)).or_insert(0) -= cx * cy;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Linear combination of basis elements plus a multiple of the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct LieCombo<S> {
    pub terms: BTreeMap<GenId, S>,
    pub scalar: S,
}

impl<S: Scalar> LieCombo<S> {
    pub fn zero() -> Self {
        LieCombo {
            terms: BTreeMap::new(),
            scalar: S::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.scalar.is_zero()
    }

    pub fn add_term(&mut self, g: GenId, c: S) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(g).or_insert_with(S::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add_scaled(&mut self, other: &LieCombo<S>, c: &S) {
        for (g, v) in &other.terms {
            self.add_term(*g, v.clone() * c);
        }
        self.scalar = self.scalar.clone() + other.scalar.clone() * c;
    }

    /// Expansion in `gl_N`; the scalar part maps to a multiple of the identity.
    pub fn to_gl(&self, p: &Pyramid) -> BTreeMap<(usize, usize), S> {
        let mut out: BTreeMap<(usize, usize), S> = BTreeMap::new();
        for (g, c) in &self.terms {
            for (key, v) in p.gln_expand(*g).expect("combo keys are valid") {
                let slot = out.entry(key).or_insert_with(S::zero);
                *slot = slot.clone() + c.clone() * S::from_i64(v);
            }
        }
        if !self.scalar.is_zero() {
            for a in 1..=p.big_n() {
                let slot = out.entry((a, a)).or_insert_with(S::zero);
                *slot = slot.clone() + self.scalar.clone();
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

impl<S: Scalar> fmt::Display for LieCombo<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        let mut put = |f: &mut fmt::Formatter<'_>, c: &S, label: Option<String>| -> fmt::Result {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match label {
                Some(l) if mag.is_one() => write!(f, "{l}"),
                Some(l) => write!(f, "{mag}*{l}"),
                None => write!(f, "{mag}"),
            }
        };
        for (g, c) in &self.terms {
            put(f, c, Some(g.to_string()))?;
        }
        if !self.scalar.is_zero() {
            put(f, &self.scalar, None)?;
        }
        Ok(())
    }
}
