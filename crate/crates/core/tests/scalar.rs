mod common;

use critcenter::shift::center_generators;
use critcenter::suga::phi_table;
use critcenter::{Element, Rat};
use num_bigint::BigInt;
use num_rational::Ratio;

fn widen(e: &Element<Ratio<i128>>) -> Element<Rat> {
    e.map_coeffs(|c| Rat::new(BigInt::from(*c.numer()), BigInt::from(*c.denom())))
}

#[test]
fn fixed_width_rationals_agree() {
    for p in common::up_to(6) {
        let small = phi_table::<Ratio<i128>>(&p);
        let big = phi_table::<Rat>(&p);
        for (k, r) in big.indices() {
            assert_eq!(widen(&small.get(k, r)), big.get(k, r), "{p} ({k},{r})");
        }
        let small: Vec<_> = center_generators::<Ratio<i64>>(&p);
        let big = center_generators::<Rat>(&p);
        for ((ks, s), (kb, b)) in small.iter().zip(&big) {
            assert_eq!(ks, kb);
            let s = s.map_coeffs(|c| Rat::new(BigInt::from(*c.numer()), BigInt::from(*c.denom())));
            assert_eq!(&s, b);
        }
    }
}
