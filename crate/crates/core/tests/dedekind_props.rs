mod common;

use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use radsym::dedekind::{cocycle_defect, dedekind_sum, phi_classical, psi_classical};
use radsym::modgroup::{word_decompose, Cusp, GroupElement, GroupId, ScalingMap};
use radsym::periods::phi_from_eta;

fn s(a: i64, c: i64) -> Q {
    dedekind_sum(&BigInt::from(a), &BigInt::from(c)).unwrap()
}

#[test]
fn reciprocity_exhaustive_to_500() {
    for a in 1..=500i64 {
        for c in a..=500i64 {
            if !coprime(a, c) {
                continue;
            }
            let lhs = s(a, c) + s(c, a);
            assert_eq!(lhs, q(a * a + c * c + 1, 12 * a * c) - q(1, 4), "a={a} c={c}");
        }
    }
}

#[test]
fn recursion_matches_double_sum_to_200() {
    for c in 1..=200i64 {
        for a in -c..=2 * c {
            if coprime(a, c) {
                assert_eq!(s(a, c), dedekind_direct(a, c), "a={a} c={c}");
            }
        }
    }
}

#[test]
fn rejects_bad_arguments() {
    assert!(dedekind_sum(&BigInt::from(2), &BigInt::from(4)).is_err());
    assert!(dedekind_sum(&BigInt::from(1), &BigInt::from(0)).is_err());
    assert!(dedekind_sum(&BigInt::from(1), &BigInt::from(-3)).is_err());
}

proptest! {
    #[test]
    fn sum_symmetries(a in -10_000i64..10_000, c in 1i64..3000) {
        prop_assume!(coprime(a, c));
        prop_assert_eq!(s(-a, c), -s(a, c));
        prop_assert_eq!(s(a + c, c), s(a, c));
        let inv = (1..=c).find(|x| (a.rem_euclid(c) * x) % c == 1 % c).unwrap();
        prop_assert_eq!(s(inv, c), s(a, c));
    }

    #[test]
    fn large_arguments_reciprocity(a in 1u64..u64::MAX / 4, c in 1u64..u64::MAX / 4) {
        let (ba, bc) = (BigInt::from(a), BigInt::from(c));
        prop_assume!(num_integer::Integer::gcd(&ba, &bc) == BigInt::from(1));
        let lhs = dedekind_sum(&ba, &bc).unwrap() + dedekind_sum(&bc, &ba).unwrap();
        let num = &ba * &ba + &bc * &bc + 1;
        let rhs = Q::new(num, BigInt::from(12) * &ba * &bc) - q(1, 4);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn word_round_trip(g in sl2z_element(12, 9)) {
        let w = word_decompose(&g);
        prop_assert!(w.eval().proj_eq(&g));
    }

    #[test]
    fn phi_matches_direct_definition(g in sl2z_element(6, 5)) {
        let (a, b, c, d) = entries(&g);
        prop_assume!(c.abs() <= 5000);
        prop_assert_eq!(phi_classical(&g).unwrap(), phi_direct(a, b, c, d));
        prop_assert_eq!(psi_classical(&g).unwrap(), psi_direct(a, b, c, d));
    }

    #[test]
    fn cocycle_defect_vanishes(x in sl2z_element(8, 6), y in sl2z_element(8, 6)) {
        let id = ScalingMap::new(&Cusp::infinity(), GroupElement::identity(), 1).unwrap();
        let (p1, p2, p12) = (phi_classical(&x).unwrap(), phi_classical(&y).unwrap(), phi_classical(&x.mul(&y)).unwrap());
        prop_assert_eq!(cocycle_defect(&GroupId::sl2z(), &id, &x, &y, &p1, &p2, &p12), q(0, 1));
    }

    #[test]
    fn psi_conjugacy_and_inverse(g in hyperbolic_sl2z(8, 6), h in sl2z_element(6, 6)) {
        let p = psi_classical(&g).unwrap();
        prop_assert_eq!(psi_classical(&g.conj_by(&h)).unwrap(), p.clone());
        prop_assert_eq!(psi_classical(&g.inverse()).unwrap(), -p.clone());
        prop_assert_eq!(psi_classical(&g.neg()).unwrap(), p);
    }

    #[test]
    fn eta_extraction_is_exact(g in sl2z_element(5, 5)) {
        let g = if g.c < BigInt::from(0) { g.neg() } else { g };
        prop_assume!(g.c > BigInt::from(0) && g.height() <= BigInt::from(400));
        let phi = phi_classical(&g).unwrap();
        prop_assert_eq!(Q::from_integer(phi_from_eta(&g).unwrap().into()), phi);
    }
}
