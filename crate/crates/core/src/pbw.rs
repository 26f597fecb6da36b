//! PBW normal forms in `U(a)` and in the critical-level vacuum module.
//!
//! Monomials are kept sorted by the key `(depth, i, j, r)`. Generators of
//! nonnegative depth therefore sit at the right end of a normal-ordered
//! word, and the vacuum quotient drops exactly the words whose last factor
//! has depth `≥ 0`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::pyramid::{GenId, Pyramid};
use crate::scalar::Scalar;

/// Loop generator `X[m] = X t^m`. Field order gives the PBW key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LoopGen {
    pub depth: i32,
    pub gen: GenId,
}

impl LoopGen {
    pub const fn new(gen: GenId, depth: i32) -> Self {
        LoopGen { depth, gen }
    }

    pub fn with_depth(self, depth: i32) -> Self {
        LoopGen { depth, ..self }
    }
}

impl fmt::Display for LoopGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.gen, self.depth)
    }
}

/// A normal-ordered word of loop generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<LoopGen>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// Sorts the factors. Only meaningful for commuting factors or for
    /// building test fixtures; products go through [`LieContext::mul`].
    pub fn sorted(mut gens: Vec<LoopGen>) -> Self {
        gens.sort();
        Monomial(gens)
    }

    /// Wraps a word that is already in PBW order.
    pub fn from_sorted(gens: Vec<LoopGen>) -> Option<Self> {
        if gens.windows(2).all(|w| w[0] <= w[1]) {
            Some(Monomial(gens))
        } else {
            None
        }
    }

    pub fn gens(&self) -> &[LoopGen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `deg X[r] = −r`, summed.
    pub fn degree(&self) -> i32 {
        -self.0.iter().map(|g| g.depth).sum::<i32>()
    }

    pub fn weight(&self) -> i32 {
        self.0.iter().map(|g| g.gen.r).sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (idx, g) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str("*")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Finite linear combination of normal-ordered monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<S> {
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Default for Element<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> Element<S> {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::scalar(S::one())
    }

    pub fn scalar(c: S) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: S) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    /// A single generator.
    pub fn gen(g: LoopGen) -> Self {
        Self::term(Monomial(vec![g]), S::one())
    }

    /// `X[depth]` for a basis symbol.
    pub fn loop_gen(g: GenId, depth: i32) -> Self {
        Self::gen(LoopGen::new(g, depth))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element<S>, c: &S) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v.clone() * c);
        }
    }

    pub fn scaled(&self, c: &S) -> Element<S> {
        if c.is_zero() {
            return Self::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c))
                .collect(),
        }
    }

    /// Terms satisfying a monomial predicate.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Element<S> {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest monomial length, `None` for zero.
    pub fn max_len(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).max()
    }

    /// Splits by `deg X[r] = −r`.
    pub fn grade_by_degree(&self) -> BTreeMap<i32, Element<S>> {
        self.grade_by(Monomial::degree)
    }

    /// Splits by the weight `b` of `E^(b)_ij[r]`.
    pub fn grade_by_weight(&self) -> BTreeMap<i32, Element<S>> {
        self.grade_by(Monomial::weight)
    }

    fn grade_by(&self, key: impl Fn(&Monomial) -> i32) -> BTreeMap<i32, Element<S>> {
        let mut out: BTreeMap<i32, Element<S>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(key(m))
                .or_default()
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn weight_component(&self, w: i32) -> Element<S> {
        self.filter(|m| m.weight() == w)
    }

    pub fn degree_component(&self, d: i32) -> Element<S> {
        self.filter(|m| m.degree() == d)
    }

    /// Coefficient of the empty monomial.
    pub fn constant_term(&self) -> S {
        self.coeff(&Monomial::one())
    }

    /// Applies a coefficient map (e.g. to change the scalar type).
    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Element<T> {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl<S: Scalar> Add for &Element<S> {
    type Output = Element<S>;
    fn add(self, rhs: &Element<S>) -> Element<S> {
        let mut out = self.clone();
        out.add_scaled(rhs, &S::one());
        out
    }
}

impl<S: Scalar> Sub for &Element<S> {
    type Output = Element<S>;
    fn sub(self, rhs: &Element<S>) -> Element<S> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-S::one());
        out
    }
}

impl<S: Scalar> Add for Element<S> {
    type Output = Element<S>;
    fn add(mut self, rhs: Element<S>) -> Element<S> {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<S: Scalar> Sub for Element<S> {
    type Output = Element<S>;
    fn sub(mut self, rhs: Element<S>) -> Element<S> {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<S: Scalar> Neg for Element<S> {
    type Output = Element<S>;
    fn neg(self) -> Element<S> {
        Element {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `U(a)`: all depths are zero and there is no cocycle.
    Finite,
    /// `V(a)` at the critical level, identified with `U(t^{-1} a[t^{-1}])`.
    AffineCritical,
}

/// Which adjacent out-of-order pair the word rewriter swaps first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schedule {
    Leftmost,
    Rightmost,
}

/// Lie data plus the mode. Cheap to clone and shareable across threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieContext {
    pyramid: Pyramid,
    mode: Mode,
}

impl LieContext {
    pub fn new(pyramid: Pyramid, mode: Mode) -> Self {
        LieContext { pyramid, mode }
    }

    pub fn finite(pyramid: Pyramid) -> Self {
        Self::new(pyramid, Mode::Finite)
    }

    pub fn vacuum(pyramid: Pyramid) -> Self {
        Self::new(pyramid, Mode::AffineCritical)
    }

    pub fn pyramid(&self) -> &Pyramid {
        &self.pyramid
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    fn is_vacuum(&self) -> bool {
        self.mode == Mode::AffineCritical
    }

    /// `[X[r], Y[s]] = [X,Y][r+s] + r δ_{r,−s} ⟨X,Y⟩`.
    pub fn bracket_loop(&self, a: LoopGen, b: LoopGen) -> (Vec<(LoopGen, i64)>, i64) {
        let depth = a.depth + b.depth;
        let terms = self
            .pyramid
            .bracket_terms(a.gen, b.gen)
            .into_iter()
            .map(|(g, c)| (LoopGen::new(g, depth), c))
            .collect();
        let scalar = if depth == 0 && a.depth != 0 {
            a.depth as i64 * self.pyramid.form_value(a.gen, b.gen)
        } else {
            0
        };
        (terms, scalar)
    }

    /// Checks that every generator is a basis element and that depths fit
    /// the mode (zero in `U(a)`, negative for vacuum-module states).
    pub fn validate<S: Scalar>(&self, v: &Element<S>) -> Result<()> {
        for m in v.terms.keys() {
            for g in m.gens() {
                self.pyramid.check(g.gen)?;
                let ok = match self.mode {
                    Mode::Finite => g.depth == 0,
                    Mode::AffineCritical => g.depth < 0,
                };
                if !ok {
                    return Err(Error::ContextMismatch(match self.mode {
                        Mode::Finite => "finite U(a)",
                        Mode::AffineCritical => "vacuum module",
                    }));
                }
            }
        }
        Ok(())
    }

    /// `c · g · m` normal ordered into `out`; `m` must be normal ordered.
    fn lmul_into<S: Scalar>(&self, g: LoopGen, m: &[LoopGen], c: &S, out: &mut Element<S>) {
        let Some((&head, rest)) = m.split_first() else {
            if !(self.is_vacuum() && g.depth >= 0) {
                out.add_term(Monomial(vec![g]), c.clone());
            }
            return;
        };
        if g <= head {
            let mut word = Vec::with_capacity(m.len() + 1);
            word.push(g);
            word.extend_from_slice(m);
            out.add_term(Monomial(word), c.clone());
            return;
        }
        // g·head·rest = head·(g·rest) + [g, head]·rest
        let mut tail = Element::zero();
        self.lmul_into(g, rest, c, &mut tail);
        for (mon, cc) in &tail.terms {
            self.lmul_into(head, &mon.0, cc, out);
        }
        let (terms, scalar) = self.bracket_loop(g, head);
        for (h, k) in terms {
            self.lmul_into(h, rest, &(c.clone() * S::from_i64(k)), out);
        }
        if scalar != 0 {
            out.add_term(Monomial(rest.to_vec()), c.clone() * S::from_i64(scalar));
        }
    }

    /// Left multiplication by one generator, normal ordered (and reduced
    /// modulo the vacuum ideal in the affine mode).
    pub(crate) fn lmul_gen<S: Scalar>(&self, g: LoopGen, v: &Element<S>) -> Element<S> {
        let mut out = Element::zero();
        for (m, c) in &v.terms {
            self.lmul_into(g, &m.0, c, &mut out);
        }
        out
    }

    /// `w · v` for a word `w` (not necessarily ordered).
    pub(crate) fn lmul_word<S: Scalar>(&self, word: &[LoopGen], v: &Element<S>) -> Element<S> {
        let mut cur = v.clone();
        for &g in word.iter().rev() {
            cur = self.lmul_gen(g, &cur);
        }
        cur
    }

    pub(crate) fn mul_unchecked<S: Scalar>(&self, a: &Element<S>, b: &Element<S>) -> Element<S> {
        let mut out = Element::zero();
        for (m, c) in &a.terms {
            let prod = self.lmul_word(&m.0, b);
            out.add_scaled(&prod, c);
        }
        out
    }

    /// Normal-ordered product.
    pub fn mul<S: Scalar>(&self, a: &Element<S>, b: &Element<S>) -> Result<Element<S>> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn commutator_unchecked<S: Scalar>(
        &self,
        a: &Element<S>,
        b: &Element<S>,
    ) -> Element<S> {
        self.mul_unchecked(a, b) - self.mul_unchecked(b, a)
    }

    /// `ab − ba`.
    pub fn commutator<S: Scalar>(&self, a: &Element<S>, b: &Element<S>) -> Result<Element<S>> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.commutator_unchecked(a, b))
    }

    /// Action of `X[s]`, `s ≥ 0`, on a vacuum-module state.
    pub fn act<S: Scalar>(&self, g: LoopGen, v: &Element<S>) -> Result<Element<S>> {
        if !self.is_vacuum() {
            return Err(Error::ContextMismatch("finite U(a)"));
        }
        if g.depth < 0 {
            return Err(Error::NegativeDepthAction(g.depth));
        }
        self.pyramid.check(g.gen)?;
        self.validate(v)?;
        Ok(self.lmul_gen(g, v))
    }

    fn assert_vacuum(&self, op: &str) {
        assert!(
            self.is_vacuum(),
            "{op} is defined on the vacuum module only"
        );
    }

    /// Applies a derivation given by its value on single generators.
    fn derive<S: Scalar>(
        &self,
        v: &Element<S>,
        image: impl Fn(LoopGen) -> Option<(LoopGen, i64)>,
    ) -> Element<S> {
        let mut out = Element::zero();
        for (m, c) in &v.terms {
            for (pos, &g) in m.0.iter().enumerate() {
                let Some((h, k)) = image(g) else { continue };
                let tail = self.lmul_gen(
                    h,
                    &Element::term(Monomial(m.0[pos + 1..].to_vec()), S::one()),
                );
                let full = self.lmul_word(&m.0[..pos], &tail);
                out.add_scaled(&full, &(c.clone() * S::from_i64(k)));
            }
        }
        out
    }

    /// Translation operator `T: X[r] ↦ −r X[r−1]`.
    pub fn translation<S: Scalar>(&self, v: &Element<S>) -> Element<S> {
        self.assert_vacuum("T");
        self.derive(v, |g| Some((g.with_depth(g.depth - 1), -(g.depth as i64))))
    }

    /// `Δ` with `[Δ, X[r]] = r X[r+1]` and `Δ 1 = 0`.
    pub fn delta<S: Scalar>(&self, v: &Element<S>) -> Element<S> {
        self.assert_vacuum("Δ");
        self.derive(v, |g| Some((g.with_depth(g.depth + 1), g.depth as i64)))
    }

    /// `d` with `[d, X[r]] = r X[r]`.
    pub fn degree_d<S: Scalar>(&self, v: &Element<S>) -> Element<S> {
        self.assert_vacuum("d");
        let mut out = Element::zero();
        for (m, c) in &v.terms {
            out.add_term(m.clone(), c.clone() * S::from_i64(-m.degree() as i64));
        }
        out
    }

    /// Normal form of an arbitrary word by repeated adjacent swaps, with the
    /// swap position chosen by `schedule`. Returns the result and the number
    /// of swaps performed. Independent of the recursive product used by
    /// [`LieContext::mul`].
    pub fn normal_order_word<S: Scalar>(
        &self,
        word: &[LoopGen],
        schedule: Schedule,
    ) -> (Element<S>, usize) {
        let mut out = Element::zero();
        let mut steps = 0;
        let mut stack: Vec<(Vec<LoopGen>, S)> = vec![(word.to_vec(), S::one())];
        while let Some((w, c)) = stack.pop() {
            let mut pairs = (0..w.len().saturating_sub(1)).filter(|&k| w[k] > w[k + 1]);
            let pick = match schedule {
                Schedule::Leftmost => pairs.next(),
                Schedule::Rightmost => pairs.next_back(),
            };
            let Some(k) = pick else {
                let dropped = self.is_vacuum() && w.last().is_some_and(|g| g.depth >= 0);
                if !dropped {
                    out.add_term(Monomial(w), c);
                }
                continue;
            };
            steps += 1;
            let (terms, scalar) = self.bracket_loop(w[k], w[k + 1]);
            for (h, kk) in terms {
                let mut nw = Vec::with_capacity(w.len() - 1);
                nw.extend_from_slice(&w[..k]);
                nw.push(h);
                nw.extend_from_slice(&w[k + 2..]);
                stack.push((nw, c.clone() * S::from_i64(kk)));
            }
            if scalar != 0 {
                let mut nw = w[..k].to_vec();
                nw.extend_from_slice(&w[k + 2..]);
                stack.push((nw, c.clone() * S::from_i64(scalar)));
            }
            let mut swapped = w;
            swapped.swap(k, k + 1);
            stack.push((swapped, c));
        }
        (out, steps)
    }
}
