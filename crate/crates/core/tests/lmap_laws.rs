//! Property checks for the scalar Leibniz maps: the defining identity,
//! additivity (where promised), and the chain rule for derivations.

use leibniz_core::lmap::{chain_rule_check, check_leibniz, LeibnizMap, MapCheckSample};
use leibniz_core::poly::Poly;
use leibniz_core::scalar::{rat, GaussianInteger, GaussianRational, ScalarElem};
use proptest::collection::vec;
use proptest::prelude::*;

fn arb_field_scalar() -> impl Strategy<Value = ScalarElem> {
    ((-8i64..=8, 1i64..=3), (-8i64..=8, 1i64..=3)).prop_map(|((rn, rd), (in_, id))| {
        ScalarElem::from_gaussian(GaussianRational::new(rat(rn, rd), rat(in_, id)))
    })
}

fn arb_rational_poly() -> impl Strategy<Value = Poly> {
    vec((-6i64..=6).prop_map(ScalarElem::from_int), 0..5).prop_map(Poly::new)
}

/// A scalar with transcendental content: p(t1) or p(t1)/q(t1).
fn arb_transcendental() -> impl Strategy<Value = ScalarElem> {
    let t1_poly = vec(-5i64..=5, 1..4).prop_map(|coeffs| {
        let t1 = ScalarElem::var(0).unwrap();
        let mut acc = ScalarElem::zero();
        for (k, c) in coeffs.into_iter().enumerate() {
            acc = &acc + &(&ScalarElem::from_int(c) * &t1.pow(k as u32));
        }
        acc
    });
    (t1_poly.clone(), t1_poly).prop_map(|(a, b)| if b.is_zero() { a } else { a.div(&b).unwrap() })
}

fn arb_prime_log() -> impl Strategy<Value = LeibnizMap> {
    // weights over the three smallest canonical primes
    ((-4i64..=4), (-4i64..=4), (-4i64..=4)).prop_map(|(w2, w21, w3)| {
        LeibnizMap::prime_log(vec![
            (GaussianInteger::new(1, 1), ScalarElem::from_int(w2)),
            (GaussianInteger::new(2, 1), ScalarElem::from_int(w21)),
            (GaussianInteger::new(3, 0), ScalarElem::from_int(w3)),
        ])
        .unwrap()
    })
}

fn arb_derivation() -> impl Strategy<Value = LeibnizMap> {
    vec(arb_field_scalar(), 1..=2).prop_map(|u| LeibnizMap::derivation(u).unwrap())
}

proptest! {
    #[test]
    fn prime_log_satisfies_the_identity(
        map in arb_prime_log(),
        a in arb_field_scalar(),
        b in arb_field_scalar(),
    ) {
        let sample = MapCheckSample::new(vec![(a, b)]);
        prop_assert!(check_leibniz(&map, &sample).unwrap().passes());
    }

    #[test]
    fn derivation_satisfies_the_identity(
        map in arb_derivation(),
        a in arb_transcendental(),
        b in arb_transcendental(),
    ) {
        let sample = MapCheckSample::new(vec![(a, b)]);
        prop_assert!(check_leibniz(&map, &sample).unwrap().passes());
    }

    #[test]
    fn derivation_is_additive(
        map in arb_derivation(),
        a in arb_transcendental(),
        b in arb_transcendental(),
    ) {
        let lhs = map.eval(&(&a + &b)).unwrap();
        let rhs = &map.eval(&a).unwrap() + &map.eval(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lincomb_stays_leibniz(
        m1 in arb_prime_log(),
        m2 in arb_prime_log(),
        c1 in arb_field_scalar(),
        c2 in arb_field_scalar(),
        a in arb_field_scalar(),
        b in arb_field_scalar(),
    ) {
        let map = LeibnizMap::LinComb {
            terms: vec![(c1, m1), (c2, m2)],
        };
        let sample = MapCheckSample::new(vec![(a, b)]);
        prop_assert!(check_leibniz(&map, &sample).unwrap().passes());
    }

    #[test]
    fn chain_rule_holds_for_derivations(
        map in arb_derivation(),
        p in arb_rational_poly(),
        a in arb_transcendental(),
    ) {
        prop_assert!(chain_rule_check(&map, &p, &a).unwrap().passes());
    }

    #[test]
    fn forced_zeros(map in arb_prime_log()) {
        prop_assert!(map.eval(&ScalarElem::zero()).unwrap().is_zero());
        prop_assert!(map.eval(&ScalarElem::one()).unwrap().is_zero());
        prop_assert!(map.eval(&ScalarElem::from_int(-1)).unwrap().is_zero());
        prop_assert!(map.eval(&ScalarElem::i()).unwrap().is_zero());
    }
}

#[test]
fn nonzero_prime_log_is_never_additive() {
    let map =
        LeibnizMap::prime_log(vec![(GaussianInteger::new(1, 1), ScalarElem::from_int(1))]).unwrap();
    let err = chain_rule_check(&map, &Poly::z(), &ScalarElem::from_int(2));
    assert!(matches!(
        err,
        Err(leibniz_core::Error::NotADerivation { .. })
    ));
}
