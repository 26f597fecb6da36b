mod common;

use std::collections::BTreeMap;

use common::{all_pyramids, pyr};
use critcenter::{GenId, LieCombo, Rat, Scalar};
use proptest::prelude::*;

#[test]
fn dimension_formula() {
    for p in all_pyramids(9) {
        let l = p.lambdas();
        let expected: usize = l.iter().flat_map(|a| l.iter().map(move |b| a.min(b))).sum();
        assert_eq!(p.basis().len(), expected, "{p}");
        assert_eq!(p.dim(), expected);
    }
}

#[test]
fn partition_counts() {
    // p(1..=9)
    let counts: Vec<usize> = (1..=9).map(|n| common::partitions(n, 1).len()).collect();
    assert_eq!(counts, [1, 2, 3, 5, 7, 11, 15, 22, 30]);
}

/// Truncated current algebra `gl_n ⊗ C[v]/(v^m)`.
fn takiff_bracket(m: i32, a: GenId, b: GenId) -> BTreeMap<(usize, usize, i32), i64> {
    let mut out = BTreeMap::new();
    let r = a.r + b.r;
    if r >= m {
        return out;
    }
    if a.j == b.i {
        *out.entry((a.i, b.j, r)).or_insert(0) += 1;
    }
    if a.i == b.j {
        *out.entry((b.i, a.j, r)).or_insert(0) -= 1;
    }
    out.retain(|_, v| *v != 0);
    out
}

#[test]
fn rectangular_pyramids_are_takiff() {
    for (n, m) in [(1, 3), (2, 2), (2, 3), (3, 2), (4, 1), (2, 4)] {
        let p = critcenter::Pyramid::rectangular(n, m).unwrap();
        assert!(p.is_rectangular());
        for a in p.basis() {
            for b in p.basis() {
                let got: BTreeMap<_, _> = p
                    .bracket::<Rat>(a, b)
                    .unwrap()
                    .terms
                    .into_iter()
                    .map(|(g, c)| ((g.i, g.j, g.r), c))
                    .collect();
                let want: BTreeMap<_, _> = takiff_bracket(m as i32, a, b)
                    .into_iter()
                    .map(|(k, v)| (k, Rat::from_i64(v)))
                    .collect();
                assert_eq!(got, want, "{p}: [{a}, {b}]");
            }
        }
    }
}

#[test]
fn minimal_nilpotent_shape() {
    let p = critcenter::Pyramid::minimal_nilpotent(3).unwrap();
    assert_eq!(p.lambdas(), &[1, 1, 2]);
    assert_eq!(p.big_n(), 4);
}

#[test]
fn column_boxes_examples() {
    let p = pyr(&[1, 2, 3]);
    assert_eq!(
        (1..=3).map(|i| p.column_boxes(i)).collect::<Vec<_>>(),
        [3, 1 + 2 * 2, 1 + 2 + 3]
    );
}

#[test]
fn gln_images_are_independent() {
    // distinct basis elements expand to matrices with disjoint supports or
    // distinct patterns; checked by rank of the flattened images
    for p in all_pyramids(6) {
        let big_n = p.big_n();
        let rows: Vec<Vec<Rat>> = p
            .basis()
            .into_iter()
            .map(|g| {
                let m = p.gln_expand(g).unwrap();
                let mut row = vec![Rat::from_i64(0); big_n * big_n];
                for ((a, b), v) in m {
                    row[(a - 1) * big_n + (b - 1)] = Rat::from_i64(v);
                }
                row
            })
            .collect();
        assert_eq!(critcenter::shift::rank(rows), p.dim(), "{p}");
    }
}

fn pyramid_and_pair() -> impl Strategy<Value = (Vec<usize>, usize, usize, usize)> {
    prop::sample::select(common::PYRAMIDS.to_vec())
        .prop_flat_map(|l| (Just(l.to_vec()), 0usize..64, 0usize..64, 0usize..64))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bracket_is_bilinear_and_antisymmetric((l, a, b, c) in pyramid_and_pair()) {
        let p = critcenter::Pyramid::new(l).unwrap();
        let basis = p.basis();
        let (a, b, c) = (basis[a % basis.len()], basis[b % basis.len()], basis[c % basis.len()]);
        let ab = p.bracket::<Rat>(a, b).unwrap();
        let mut sum = p.bracket::<Rat>(b, a).unwrap();
        sum.add_scaled(&ab, &Rat::from_i64(1));
        prop_assert!(sum.is_zero());
        // ⟨[a,b],c⟩ = ⟨a,[b,c]⟩
        let lhs: Rat = ab.terms.iter().map(|(g, k)| k.clone() * p.form::<Rat>(*g, c).unwrap()).sum();
        let bc = p.bracket::<Rat>(b, c).unwrap();
        let rhs: Rat = bc.terms.iter().map(|(g, k)| k.clone() * p.form::<Rat>(a, *g).unwrap()).sum();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn genid_text_round_trip(i in 1usize..9, j in 1usize..9, r in 0i32..9) {
        let g = GenId::new(i, j, r);
        prop_assert_eq!(g.to_string().parse::<GenId>().unwrap(), g);
    }

    #[test]
    fn pyramid_text_round_trip(mut l in prop::collection::vec(1usize..6, 1..5)) {
        l.sort();
        let p = critcenter::Pyramid::new(l).unwrap();
        prop_assert_eq!(p.to_string().parse::<critcenter::Pyramid>().unwrap(), p);
    }
}

#[test]
fn rejects_bad_input() {
    assert!(critcenter::Pyramid::new(vec![]).is_err());
    assert!(critcenter::Pyramid::new(vec![2, 1]).is_err());
    assert!(critcenter::Pyramid::new(vec![0, 1]).is_err());
    let p = pyr(&[1, 2]);
    assert!(p
        .bracket::<Rat>(GenId::new(1, 2, 1), GenId::new(2, 1, 0))
        .is_ok());
    assert!(p
        .bracket::<Rat>(GenId::new(1, 2, 0), GenId::new(2, 1, 0))
        .is_err());
    assert!(p
        .bracket::<Rat>(GenId::new(1, 2, 1), GenId::new(2, 1, 1))
        .is_err());
    assert!(p
        .form::<Rat>(GenId::new(3, 3, 0), GenId::new(1, 1, 0))
        .is_err());
    assert!(LieCombo::<Rat>::zero().is_zero());
}
