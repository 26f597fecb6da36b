//! Seeded random inputs for property checks.
//!
//! Values come from small integers so that exact arithmetic stays cheap;
//! the generator is ChaCha8 so a seed reproduces across platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::pbw::{Element, LieContext, LoopGen};
use crate::pyramid::Pyramid;
use crate::scalar::Scalar;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `a/b` with `a ∈ {−3..3}` and `b ∈ {1..3}`.
pub fn small_rational<S: Scalar, R: Rng>(rng: &mut R) -> S {
    let num = rng.random_range(-3..=3);
    let den = rng.random_range(1..=3);
    S::from_i64(num) / S::from_i64(den)
}

/// Like [`small_rational`] but never zero.
pub fn nonzero_rational<S: Scalar, R: Rng>(rng: &mut R) -> S {
    loop {
        let v: S = small_rational(rng);
        if !v.is_zero() {
            return v;
        }
    }
}

/// A random generator `X[depth]` with `depth` in `depths`.
pub fn random_gen<R: Rng>(
    p: &Pyramid,
    rng: &mut R,
    depths: std::ops::RangeInclusive<i32>,
) -> LoopGen {
    let basis = p.basis();
    let g = basis[rng.random_range(0..basis.len())];
    LoopGen::new(g, rng.random_range(depths))
}

/// Random vacuum-module state: up to `terms` monomials of at most
/// `max_len` factors with depths in `−3..=−1`.
pub fn random_state<S: Scalar, R: Rng>(
    ctx: &LieContext,
    rng: &mut R,
    terms: usize,
    max_len: usize,
) -> Element<S> {
    random_element(ctx, rng, terms, max_len, -3..=-1)
}

/// Random element of `U(a)` (all depths zero).
pub fn random_finite<S: Scalar, R: Rng>(
    ctx: &LieContext,
    rng: &mut R,
    terms: usize,
    max_len: usize,
) -> Element<S> {
    random_element(ctx, rng, terms, max_len, 0..=0)
}

fn random_element<S: Scalar, R: Rng>(
    ctx: &LieContext,
    rng: &mut R,
    terms: usize,
    max_len: usize,
    depths: std::ops::RangeInclusive<i32>,
) -> Element<S> {
    let mut out = Element::zero();
    for _ in 0..terms {
        let len = rng.random_range(0..=max_len);
        let word: Vec<LoopGen> = (0..len)
            .map(|_| random_gen(ctx.pyramid(), rng, depths.clone()))
            .collect();
        let c: S = nonzero_rational(rng);
        let prod = ctx.lmul_word(&word, &Element::one());
        out.add_scaled(&prod, &c);
    }
    out
}
