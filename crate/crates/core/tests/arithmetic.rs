use moddeg_core::arith::{is_prime, primes_up_to};
use moddeg_core::curve::{trace_of_frobenius, CurveModel, Invariants};
use moddeg_core::fudge::{twist_growth_check, Reduction};
use num_bigint::BigInt;
use proptest::prelude::*;

const CURVES: [([i64; 5], u64); 10] = [
    ([0, -1, 1, -10, -20], 11),
    ([1, 0, 1, 4, -6], 14),
    ([1, 1, 1, -10, -10], 15),
    ([0, 0, 1, -1, 0], 37),
    ([0, 1, 1, -23, -50], 37),
    ([0, 1, 1, 0, 0], 43),
    ([1, -1, 0, -2, -1], 49),
    ([0, 1, 1, -2, 0], 389),
    ([0, 0, 1, -7, 6], 5077),
    ([1, 0, 0, -11, 11], 24310),
];

#[test]
fn hasse_bound_on_good_primes() {
    for (a, n) in CURVES {
        let e = CurveModel::from_i64(a, n).unwrap();
        let disc = Invariants::from_a(&e.a).unwrap().disc;
        let mut good = 0;
        for p in primes_up_to(1000) {
            if &disc % BigInt::from(p) == BigInt::from(0) {
                continue;
            }
            let ap = trace_of_frobenius(&e, p).unwrap();
            assert!(ap * ap <= 4 * p as i64, "{a:?}: a_{p} = {ap}");
            good += 1;
        }
        assert!(good > 150);
    }
}

#[test]
fn traces_of_37a1() {
    let e = CurveModel::from_i64([0, 0, 1, -1, 0], 37).unwrap();
    let got: Vec<i64> = [2, 3, 5, 7, 11, 13]
        .iter()
        .map(|&p| trace_of_frobenius(&e, p).unwrap())
        .collect();
    assert_eq!(got, [-2, -3, -2, -1, -5, -2]);
}

#[test]
fn twist_growth_exhaustive() {
    for p in primes_up_to(1000).into_iter().filter(|&p| p > 2) {
        assert!(
            twist_growth_check(p, 0, Reduction::Multiplicative)
                .unwrap()
                .ok,
            "p = {p}"
        );
        assert!(
            twist_growth_check(p, 0, Reduction::Additive).unwrap().ok,
            "p = {p}"
        );
        let bound = (2.0 * (p as f64).sqrt()).floor() as i64;
        for ap in -bound..=bound {
            let g = twist_growth_check(p, ap, Reduction::Good).unwrap();
            assert!(
                g.ok,
                "p = {p}, a_p = {ap}: {} < {}",
                g.lhs_factor, g.rhs_factor
            );
        }
        assert!(twist_growth_check(p, bound + 1, Reduction::Good).is_err());
    }
    let tight = twist_growth_check(3, 3, Reduction::Good).unwrap();
    assert_eq!(tight.lhs_factor, 14.0);
    assert!(tight.rhs_factor > 12.9 && tight.ok);
}

proptest! {
    #[test]
    fn invariant_identities(a in proptest::array::uniform5(-10_000i64..10_000)) {
        let i = Invariants::from_a(&a.map(BigInt::from));
        prop_assume!(i.is_ok());
        let i = i.unwrap();
        prop_assert_eq!(BigInt::from(1728) * &i.disc, &i.c4 * &i.c4 * &i.c4 - &i.c6 * &i.c6);
        prop_assert_eq!(BigInt::from(4) * &i.b8, &i.b2 * &i.b6 - &i.b4 * &i.b4);
        prop_assert_eq!(&i.j_num * &i.disc, &i.c4 * &i.c4 * &i.c4 * &i.j_den);
    }

    #[test]
    fn primality_by_trial_division(n in 0u64..200_000) {
        let trial = n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        prop_assert_eq!(is_prime(n), trial);
    }
}
