//! Exit criteria. Each criterion prints one PASS/FAIL line; the test fails
//! if any criterion fails. Every comparison is exact.

use std::io::Write;
use std::time::{Duration, Instant};

use num_traits::Zero;

use critcenter::detcalc::{build_entry_matrix, cdet_by_permutations, cdet_matrix};
use critcenter::pyramid::gl_commutator;
use critcenter::sample;
use critcenter::shift::{
    a_chi_generators_from, apply_automorphism, center_generators, jacobian_rank, random_point,
    rho_chi, selected_symbols, Chi, ZSeries,
};
use critcenter::suga::{
    delta_ladder, gln_delta_tower, minimal_nilpotent_check, phi_2_formula_check, phi_table,
    principal_check, tau_cross_check,
};
use critcenter::verify::{annihilation_check, centrality_check, commutativity_check, SMaxPolicy};
use critcenter::{Element, LieContext, Pyramid, Rat, Scalar};

const PYRAMIDS: &[&[usize]] = &[
    &[1],
    &[2],
    &[3],
    &[1, 1],
    &[1, 2],
    &[2, 2],
    &[2, 3],
    &[1, 1, 1],
    &[1, 1, 2],
    &[1, 2, 3],
    &[2, 3, 4],
];

const SEEDS: [u64; 3] = [1, 2, 3];
const EXAMPLES_BUDGET: Duration = Duration::from_secs(10);
const ANNIHILATION_BUDGET: Duration = Duration::from_secs(300);
const RANDOM_STATES: usize = 100;
const RANDOM_PRODUCTS: usize = 50;

fn pyramids() -> Vec<Pyramid> {
    PYRAMIDS
        .iter()
        .map(|l| Pyramid::new(l.to_vec()).unwrap())
        .collect()
}

fn up_to(max_n: usize) -> Vec<Pyramid> {
    pyramids()
        .into_iter()
        .filter(|p| p.big_n() <= max_n)
        .collect()
}

/// All pyramids with `N` boxes (non-decreasing partitions).
fn partitions(total: usize, min_part: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in min_part..=total {
        for mut rest in partitions(total - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn all_pyramids(max_n: usize) -> Vec<Pyramid> {
    (1..=max_n)
        .flat_map(|n| partitions(n, 1))
        .map(|l| Pyramid::new(l).unwrap())
        .collect()
}

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 1..=5 {
        if !principal_check::<Rat>(n).unwrap().passed() {
            bad.push(format!("principal N={n}"));
        }
    }
    for l in [&[1, 1][..], &[2, 2], &[1, 2], &[2, 3]] {
        let p = Pyramid::new(l.to_vec()).unwrap();
        if !phi_2_formula_check::<Rat>(&p).unwrap().passed() {
            bad.push(format!("n=2 closed forms on {p}"));
        }
    }
    for n in 1..=4 {
        if !minimal_nilpotent_check::<Rat>(n).unwrap().passed() {
            bad.push(format!("minimal nilpotent n={n}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= EXAMPLES_BUDGET {
        bad.push(format!("runtime {elapsed:?} over budget"));
    }
    outcome(bad.is_empty(), format!("{elapsed:.2?} {bad:?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut cases = 0;
    for p in pyramids() {
        let table = phi_table::<Rat>(&p);
        let rep = annihilation_check(&p, &table, SMaxPolicy::Degree);
        cases += rep.cases.len();
        if !rep.passed() {
            bad.push(p.to_string());
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= ANNIHILATION_BUDGET {
        bad.push(format!("runtime {elapsed:?} over budget"));
    }
    outcome(
        bad.is_empty(),
        format!("{cases} cases in {elapsed:.2?} {bad:?}"),
    )
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    for p in pyramids() {
        let table = phi_table::<Rat>(&p);
        let sel: Vec<(usize, i32)> = table.selected().collect();
        if sel.len() != p.big_n() {
            bad.push(format!("{p}: {} selected", sel.len()));
        }
        let n = p.n();
        for k in 1..=n {
            let count = sel.iter().filter(|(kk, _)| *kk == k).count();
            if count != p.lambda(n - k + 1) {
                bad.push(format!("{p}: k={k} count {count}"));
            }
        }
        if sel.iter().any(|&(k, r)| table.get(k, r).is_zero()) {
            bad.push(format!("{p}: zero selected vector"));
        }
    }
    outcome(bad.is_empty(), format!("{bad:?}"))
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    let mut cases = 0;
    for p in pyramids() {
        let table = phi_table::<Rat>(&p);
        let rep = delta_ladder(&p, &table);
        cases += rep.cases.len();
        if !rep.passed() {
            bad.push(p.to_string());
        }
    }
    outcome(bad.is_empty(), format!("{cases} cases {bad:?}"))
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    for p in up_to(6) {
        let table = phi_table::<Rat>(&p);
        if !tau_cross_check(&p, &table).passed() {
            bad.push(p.to_string());
        }
    }
    outcome(bad.is_empty(), format!("{bad:?}"))
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    for n in 2..=4 {
        let (tower, rep) = gln_delta_tower::<Rat>(n).unwrap();
        if !rep.passed() || !tower[n].is_zero() {
            bad.push(n);
        }
    }
    outcome(bad.is_empty(), format!("{bad:?}"))
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    for p in up_to(6) {
        let ctx = LieContext::vacuum(p.clone());
        let table = phi_table::<Rat>(&p);
        let labelled: Vec<(String, Element<Rat>)> = table
            .selected_vectors()
            .into_iter()
            .map(|((k, r), e)| (format!("phi[{k},{r}]"), e))
            .collect();
        if !commutativity_check(&ctx, &labelled).passed() {
            bad.push(format!("vacuum {p}"));
        }
    }
    for p in up_to(5) {
        let table = phi_table::<Rat>(&p);
        let ctx = LieContext::finite(p.clone());
        for seed in SEEDS {
            let chi = Chi::<Rat>::random(&p, seed);
            let gens = a_chi_generators_from(&p, &table, &chi).unwrap();
            let labelled: Vec<(String, Element<Rat>)> = gens
                .iter()
                .map(|g| (g.label(), g.element.clone()))
                .collect();
            if !commutativity_check(&ctx, &labelled).passed() {
                bad.push(format!("A_chi {p} seed {seed}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{bad:?}"))
}

fn criterion_8() -> Outcome {
    let mut bad = Vec::new();
    for p in up_to(6) {
        let gens: Vec<(String, Element<Rat>)> = center_generators::<Rat>(&p)
            .into_iter()
            .map(|((k, r), e)| (format!("Phi[{k},{r}]"), e))
            .collect();
        if !centrality_check(&p, &gens).passed() {
            bad.push(format!("{p}"));
        }
        let c = Rat::from_i64(1 - p.n() as i64);
        let shifted: Vec<(String, Element<Rat>)> = gens
            .iter()
            .map(|(l, e)| {
                (
                    format!("sigma({l})"),
                    apply_automorphism(&p, e, &c).unwrap(),
                )
            })
            .collect();
        if !centrality_check(&p, &shifted).passed() {
            bad.push(format!("{p} after automorphism"));
        }
    }
    outcome(bad.is_empty(), format!("{bad:?}"))
}

fn criterion_9() -> Outcome {
    let mut bad = Vec::new();
    for p in pyramids() {
        let polys: Vec<_> = selected_symbols::<Rat>(&p)
            .into_iter()
            .map(|(_, f)| f)
            .collect();
        for seed in SEEDS {
            let rank = jacobian_rank(&p, &polys, &random_point(&p, seed));
            if rank != p.big_n() {
                bad.push(format!("{p} seed {seed}: rank {rank}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{bad:?}"))
}

fn criterion_10() -> Outcome {
    let mut bad = Vec::new();

    // bracket against the gl_N embedding, N ≤ 9
    for p in all_pyramids(9) {
        let basis = p.basis();
        let images: Vec<_> = basis.iter().map(|&g| p.gln_expand(g).unwrap()).collect();
        for (a, ea) in basis.iter().zip(&images) {
            for (b, eb) in basis.iter().zip(&images) {
                let lhs = p.bracket::<Rat>(*a, *b).unwrap().to_gl(&p);
                let rhs: std::collections::BTreeMap<_, _> = gl_commutator(ea, eb)
                    .into_iter()
                    .map(|(k, v)| (k, Rat::from_i64(v)))
                    .collect();
                if lhs != rhs {
                    bad.push(format!("bracket {p} {a} {b}"));
                }
            }
        }
    }

    // Jacobi and invariance, N ≤ 7
    for p in all_pyramids(7) {
        if !jacobi_and_invariance(&p) {
            bad.push(format!("jacobi/invariance {p}"));
        }
    }

    // [Δ,T] = 2d and [d,T] = −T on random states
    let mut rng = sample::rng(7);
    let ps = up_to(6);
    for idx in 0..RANDOM_STATES {
        let p = &ps[idx % ps.len()];
        let ctx = LieContext::vacuum(p.clone());
        let v: Element<Rat> = sample::random_state(&ctx, &mut rng, 3, 3);
        let dt = ctx.delta(&ctx.translation(&v)) - ctx.translation(&ctx.delta(&v));
        if dt != ctx.degree_d(&v).scaled(&Rat::from_i64(2)) {
            bad.push(format!("[Δ,T] state {idx}"));
        }
        let dd = ctx.degree_d(&ctx.translation(&v)) - ctx.translation(&ctx.degree_d(&v));
        if dd != -ctx.translation(&v) {
            bad.push(format!("[d,T] state {idx}"));
        }
    }

    // memoized cdet against the permutation sum, n ≤ 4
    let small: Vec<Pyramid> = pyramids()
        .into_iter()
        .chain(
            [vec![1, 1, 1, 1], vec![1, 1, 1, 2], vec![1, 1, 2, 2]]
                .map(|l| Pyramid::new(l).unwrap()),
        )
        .filter(|p| p.n() <= 4)
        .collect();
    for p in small {
        let ctx = LieContext::vacuum(p.clone());
        let m = build_entry_matrix::<Rat>(&p);
        if cdet_matrix(&ctx, &m) != cdet_by_permutations(&ctx, &m) {
            bad.push(format!("cdet {p}"));
        }
    }

    // ρ_χ is multiplicative
    let mut rng = sample::rng(11);
    let ps = up_to(5);
    for idx in 0..RANDOM_PRODUCTS {
        let p = &ps[idx % ps.len()];
        let vac = LieContext::vacuum(p.clone());
        let fin = LieContext::finite(p.clone());
        let chi = Chi::<Rat>::random(p, idx as u64);
        let a: Element<Rat> = sample::random_state(&vac, &mut rng, 2, 2);
        let b: Element<Rat> = sample::random_state(&vac, &mut rng, 2, 2);
        let ab = vac.mul(&a, &b).unwrap();
        let lhs = rho_chi(p, &ab, &chi).unwrap();
        let ra: ZSeries<Rat> = rho_chi(p, &a, &chi).unwrap();
        let rhs = ra.mul(&fin, &rho_chi(p, &b, &chi).unwrap());
        if lhs != rhs {
            bad.push(format!("rho product {idx} on {p}"));
        }
    }

    outcome(
        bad.is_empty(),
        format!(
            "{} failures {:?}",
            bad.len(),
            bad.iter().take(5).collect::<Vec<_>>()
        ),
    )
}

fn jacobi_and_invariance(p: &Pyramid) -> bool {
    use critcenter::LieCombo;
    let basis = p.basis();
    let br = |x: &LieCombo<Rat>, y: critcenter::GenId| -> LieCombo<Rat> {
        let mut out = LieCombo::zero();
        for (g, c) in &x.terms {
            out.add_scaled(&p.bracket(*g, y).unwrap(), c);
        }
        out
    };
    let form = |x: &LieCombo<Rat>, y: critcenter::GenId| -> Rat {
        x.terms
            .iter()
            .map(|(g, c)| c.clone() * p.form::<Rat>(*g, y).unwrap())
            .fold(Rat::from_i64(0), |a, b| a + b)
    };
    for &a in &basis {
        for &b in &basis {
            if p.form::<Rat>(a, b).unwrap() != p.form::<Rat>(b, a).unwrap() {
                return false;
            }
            let ab = p.bracket::<Rat>(a, b).unwrap();
            let ba = p.bracket::<Rat>(b, a).unwrap();
            let mut sum = ab.clone();
            sum.add_scaled(&ba, &Rat::from_i64(1));
            if !sum.is_zero() {
                return false;
            }
            for &c in &basis {
                // [[a,b],c] + [[b,c],a] + [[c,a],b] = 0
                let mut j = br(&ab, c);
                j.add_scaled(&br(&p.bracket(b, c).unwrap(), a), &Rat::from_i64(1));
                j.add_scaled(&br(&p.bracket(c, a).unwrap(), b), &Rat::from_i64(1));
                if !j.is_zero() {
                    return false;
                }
                // ⟨[a,b],c⟩ + ⟨b,[a,c]⟩ = 0
                let lhs = form(&ab, c) + form(&p.bracket(a, c).unwrap(), b);
                if !lhs.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("1 closed-form examples", criterion_1),
        ("2 annihilation", criterion_2),
        ("3 selected counts", criterion_3),
        ("4 delta ladder", criterion_4),
        ("5 tau cross-check", criterion_5),
        ("6 gl_n delta tower", criterion_6),
        ("7 commutativity", criterion_7),
        ("8 centrality", criterion_8),
        ("9 jacobian rank", criterion_9),
        ("10 engine properties", criterion_10),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let start = Instant::now();
        let out = run();
        let tag = if out.ok { "PASS" } else { "FAIL" };
        let line = format!(
            "criterion {name}: {tag} ({:.2?}) {}\n",
            start.elapsed(),
            out.detail
        );
        // bypass the test harness capture so the summary is always shown
        let _ = std::io::stderr().write_all(line.as_bytes());
        if !out.ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
