//! Check batteries and their reports.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::pbw::{Element, LieContext, LoopGen};
use crate::pyramid::{GenId, Pyramid};
use crate::scalar::Scalar;
use crate::suga::SugaTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Not computed: the outcome is forced by the degree grading.
    Vacuous,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Vacuous => "vacuous",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Case<S> {
    pub generator: String,
    pub s: Option<i32>,
    pub k: Option<usize>,
    pub r: Option<i32>,
    pub status: Status,
    /// Present only on failure.
    pub difference: Option<Element<S>>,
}

impl<S: Scalar> Case<S> {
    /// Passes iff `difference` is zero.
    pub fn compared(
        generator: impl Into<String>,
        s: Option<i32>,
        k: Option<usize>,
        r: Option<i32>,
        difference: Element<S>,
    ) -> Self {
        let failed = !difference.is_zero();
        Case {
            generator: generator.into(),
            s,
            k,
            r,
            status: if failed { Status::Fail } else { Status::Pass },
            difference: failed.then_some(difference),
        }
    }

    pub fn vacuous(generator: impl Into<String>, s: i32, k: usize, r: i32) -> Self {
        Case {
            generator: generator.into(),
            s: Some(s),
            k: Some(k),
            r: Some(r),
            status: Status::Vacuous,
            difference: None,
        }
    }

    pub fn flag(generator: impl Into<String>, ok: bool) -> Self {
        Case {
            generator: generator.into(),
            s: None,
            k: None,
            r: None,
            status: if ok { Status::Pass } else { Status::Fail },
            difference: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report<S> {
    pub check: String,
    pub pyramid: String,
    pub seed: Option<u64>,
    pub cases: Vec<Case<S>>,
    /// Wall time; kept out of serialized output.
    pub elapsed: Duration,
}

impl<S: Scalar> Report<S> {
    pub fn new(check: &str, p: &Pyramid, cases: Vec<Case<S>>, start: Instant) -> Self {
        Report {
            check: check.to_string(),
            pyramid: p.to_string(),
            seed: None,
            cases,
            elapsed: start.elapsed(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case<S>> {
        self.cases.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }
}

/// Generators of `a[t]` as a Lie algebra: `E_{i+1,i}^(0)[0]`,
/// `E_{i,i+1}^(λ_{i+1}−λ_i)[0]`, and `E_ii^(p)[s]` for `s = 0..=s_max`.
pub fn generating_family(p: &Pyramid, s_max: i32) -> Vec<LoopGen> {
    let n = p.n();
    let mut out = Vec::new();
    for i in 1..n {
        out.push(LoopGen::new(GenId::new(i + 1, i, 0), 0));
        let shift = (p.lambda(i + 1) - p.lambda(i)) as i32;
        out.push(LoopGen::new(GenId::new(i, i + 1, shift), 0));
    }
    for i in 1..=n {
        for r in 0..p.lambda(i) as i32 {
            for s in 0..=s_max {
                out.push(LoopGen::new(GenId::new(i, i, r), s));
            }
        }
    }
    out
}

/// How far to push the mode `s` of `X[s]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SMaxPolicy {
    /// `s ≤ deg φ`; larger `s` lower the degree below zero.
    #[default]
    Degree,
    /// `s ≤ s_max`; cases with `s > deg φ` are recorded as vacuous.
    Fixed(i32),
}

/// `X[s] φ_k^(r) = 0` for every basis `X`, every admissible `s` and every
/// selected `(k, r)`. Also confirms that the generating family detects any
/// failure found on the full basis.
pub fn annihilation_check<S: Scalar>(
    p: &Pyramid,
    table: &SugaTable<S>,
    policy: SMaxPolicy,
) -> Report<S> {
    let start = Instant::now();
    let ctx = LieContext::vacuum(p.clone());
    let basis = p.basis();
    let mut jobs = Vec::new();
    for (k, r) in table.selected() {
        let deg = k as i32;
        let s_top = match policy {
            SMaxPolicy::Degree => deg,
            SMaxPolicy::Fixed(s) => s,
        };
        for &x in &basis {
            for s in 0..=s_top {
                jobs.push((k, r, LoopGen::new(x, s), s > deg));
            }
        }
    }
    let mut cases: Vec<Case<S>> = jobs
        .par_iter()
        .map(|&(k, r, g, vacuous)| {
            if vacuous {
                return Case::vacuous(g.gen.to_string(), g.depth, k, r);
            }
            let image = ctx.lmul_gen(g, &table.get(k, r));
            Case::compared(g.gen.to_string(), Some(g.depth), Some(k), Some(r), image)
        })
        .collect();

    let s_family = match policy {
        SMaxPolicy::Degree => p.n() as i32,
        SMaxPolicy::Fixed(s) => s,
    };
    let family: BTreeSet<LoopGen> = generating_family(p, s_family).into_iter().collect();
    let family_ok = jobs
        .iter()
        .zip(&cases)
        .filter(|((_, _, g, _), _)| family.contains(g))
        .all(|(_, c)| c.status != Status::Fail);
    let basis_ok = cases.iter().all(|c| c.status != Status::Fail);
    if family_ok && !basis_ok {
        cases.push(Case::flag("family-sufficiency", false));
    }
    Report::new("annihilation", p, cases, start)
}

/// Pairwise commutators vanish.
pub fn commutativity_check<S: Scalar>(
    ctx: &LieContext,
    elements: &[(String, Element<S>)],
) -> Report<S> {
    let start = Instant::now();
    let pairs: Vec<(usize, usize)> = (0..elements.len())
        .flat_map(|a| (a + 1..elements.len()).map(move |b| (a, b)))
        .collect();
    let cases = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (la, ea) = &elements[a];
            let (lb, eb) = &elements[b];
            let c = ctx.commutator_unchecked(ea, eb);
            Case::compared(format!("[{la}, {lb}]"), None, None, None, c)
        })
        .collect();
    Report::new("commutativity", ctx.pyramid(), cases, start)
}

/// Every element commutes with every basis element of `a` inside `U(a)`.
pub fn centrality_check<S: Scalar>(p: &Pyramid, elements: &[(String, Element<S>)]) -> Report<S> {
    let start = Instant::now();
    let ctx = LieContext::finite(p.clone());
    let jobs: Vec<(usize, GenId)> = (0..elements.len())
        .flat_map(|e| p.basis().into_iter().map(move |x| (e, x)))
        .collect();
    let cases = jobs
        .par_iter()
        .map(|&(e, x)| {
            let (label, v) = &elements[e];
            let c = ctx.commutator_unchecked(&Element::loop_gen(x, 0), v);
            Case::compared(format!("[{x}, {label}]"), None, None, None, c)
        })
        .collect();
    Report::new("centrality", p, cases, start)
}

/// Operator identity `s E_ii^(p)[s+1] = [Δ, E_ii^(p)[s]]` on sample states.
pub fn rered_consistency<S: Scalar>(
    p: &Pyramid,
    samples: &[Element<S>],
    s_values: &[i32],
) -> Report<S> {
    let start = Instant::now();
    let ctx = LieContext::vacuum(p.clone());
    let mut jobs = Vec::new();
    for i in 1..=p.n() {
        for r in 0..p.lambda(i) as i32 {
            for &s in s_values {
                for idx in 0..samples.len() {
                    jobs.push((GenId::new(i, i, r), s, idx));
                }
            }
        }
    }
    let cases = jobs
        .par_iter()
        .map(|&(x, s, idx)| {
            let v = &samples[idx];
            let lhs = ctx
                .lmul_gen(LoopGen::new(x, s + 1), v)
                .scaled(&S::from_i64(s as i64));
            let at = LoopGen::new(x, s);
            let rhs = ctx.delta(&ctx.lmul_gen(at, v)) - ctx.lmul_gen(at, &ctx.delta(v));
            Case::compared(format!("{x} sample {idx}"), Some(s), None, None, lhs - rhs)
        })
        .collect();
    Report::new("rered", p, cases, start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suga::phi_table;
    use crate::Rat;

    fn p(l: &[usize]) -> Pyramid {
        Pyramid::new(l.to_vec()).unwrap()
    }

    #[test]
    fn family_examples() {
        let fam = generating_family(&p(&[1, 1]), 1);
        let want = vec![
            LoopGen::new(GenId::new(2, 1, 0), 0),
            LoopGen::new(GenId::new(1, 2, 0), 0),
            LoopGen::new(GenId::new(1, 1, 0), 0),
            LoopGen::new(GenId::new(1, 1, 0), 1),
            LoopGen::new(GenId::new(2, 2, 0), 0),
            LoopGen::new(GenId::new(2, 2, 0), 1),
        ];
        assert_eq!(fam, want);
        assert!(generating_family(&p(&[1, 2]), 0).contains(&LoopGen::new(GenId::new(1, 2, 1), 0)));
        let fam = generating_family(&p(&[2]), 1);
        assert_eq!(fam.len(), 4);
        assert!(fam.iter().all(|g| g.gen.i == 1 && g.gen.j == 1));
    }

    #[test]
    fn annihilation_small() {
        for l in [&[3][..], &[1, 1], &[1, 2]] {
            let q = p(l);
            let t = phi_table::<Rat>(&q);
            let rep = annihilation_check(&q, &t, SMaxPolicy::Degree);
            assert!(rep.passed(), "{q}");
            assert_eq!(rep.count(Status::Vacuous), 0);
        }
        let q = p(&[1, 1]);
        let t = phi_table::<Rat>(&q);
        let rep = annihilation_check(&q, &t, SMaxPolicy::Fixed(4));
        assert!(rep.passed());
        assert!(rep.count(Status::Vacuous) > 0);
    }

    #[test]
    fn commutativity_trivial_inputs() {
        let q = p(&[1, 2]);
        let ctx = LieContext::vacuum(q.clone());
        let t = phi_table::<Rat>(&q);
        let single = vec![("phi".to_string(), t.get(1, 0))];
        let rep = commutativity_check(&ctx, &single);
        assert!(rep.passed() && rep.cases.is_empty());
        let pair = vec![
            ("a".to_string(), t.get(1, 0)),
            ("b".to_string(), t.get(2, 1)),
        ];
        assert!(commutativity_check(&ctx, &pair).passed());
    }

    #[test]
    fn rered_on_simple_states() {
        let q = p(&[1, 1]);
        let x = Element::<Rat>::loop_gen(GenId::new(1, 2, 0), -2);
        let rep = rered_consistency(&q, &[Element::one(), x], &[1, 2]);
        assert!(rep.passed());
    }
}
