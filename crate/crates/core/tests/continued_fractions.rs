mod common;

use common::{big, coprime_pairs, hj_coeffs, nested_eval};
use lensfill::rationals::{
    cf_eval, cf_measures, convergents, hj_expand, op_s, op_t, st_decompose, CfTuple, CfValue,
    Fraction, StOp,
};
use lensfill::tridiag::{det_m, multilinearity_expand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use rayon::prelude::*;

fn frac(p: u64, q: u64) -> Fraction {
    Fraction::new(p, q).unwrap()
}

fn as_ratio(f: &Fraction) -> BigRational {
    BigRational::new(f.num().clone(), f.den().clone())
}

#[test]
fn round_trip_every_pair_up_to_1000() {
    for (p, q) in coprime_pairs(1000) {
        let f = frac(p, q);
        let t = hj_expand(&f).unwrap();
        assert!(t.is_canonical(), "{f}");
        assert!(t.coeffs().iter().all(|a| *a >= BigInt::from(2)));
        assert_eq!(t.coeffs(), big(&hj_coeffs(p, q)).as_slice(), "{f}");
        assert_eq!(cf_eval(t.coeffs()), CfValue::Positive(f.clone()));
        let nested = nested_eval(&hj_coeffs(p, q)).unwrap();
        assert_eq!(nested, as_ratio(&f));
    }
}

#[test]
fn integers_expand_to_one_coefficient() {
    for p in 2..50u64 {
        let t = hj_expand(&frac(p, 1)).unwrap();
        assert_eq!(t.coeffs(), &[BigInt::from(p)]);
    }
}

fn positive_tuple() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(1i64..60, 1..24)
}

fn canonical_tuple() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(2i64..60, 1..24)
}

proptest! {
    #[test]
    fn round_trip_wide_fractions(t in prop::collection::vec(2u64..=u64::MAX, 1..10)) {
        let b: Vec<BigInt> = t.iter().map(|&a| BigInt::from(a)).collect();
        let CfValue::Positive(f) = cf_eval(&b) else { panic!("canonical value is positive") };
        let expanded = hj_expand(&f).unwrap();
        prop_assert_eq!(expanded.coeffs(), b.as_slice());
    }

    #[test]
    fn canonical_tuples_round_trip(t in canonical_tuple()) {
        let b = big(&t);
        let CfValue::Positive(f) = cf_eval(&b) else { panic!("canonical value is positive") };
        prop_assert!(f.is_greater_than_one());
        let expanded = hj_expand(&f).unwrap();
        prop_assert_eq!(expanded.coeffs(), b.as_slice());
        prop_assert_eq!(as_ratio(&f), nested_eval(&t).unwrap());
    }

    #[test]
    fn determinant_one(t in positive_tuple()) {
        let c = convergents(&big(&t));
        for i in 1..=t.len() {
            let lhs = c.denominator(i) * c.numerator(i - 1) - c.numerator(i) * c.denominator(i - 1);
            prop_assert_eq!(lhs, BigInt::one());
        }
    }

    #[test]
    fn reversal(t in canonical_tuple()) {
        let b = big(&t);
        let rev: Vec<BigInt> = b.iter().rev().cloned().collect();
        let c = convergents(&b);
        let k = t.len();
        let c_rev = convergents(&rev);
        prop_assert_eq!(c.numerator(k), c_rev.numerator(k));
        let expected = Fraction::new(c.numerator(k).clone(), c.numerator(k - 1).clone()).unwrap();
        prop_assert_eq!(cf_eval(&rev), CfValue::Positive(expected));
        let reversed = CfTuple::new(b).reversed();
        prop_assert_eq!(reversed.coeffs(), rev.as_slice());
    }

    #[test]
    fn measures_match_coefficients(t in canonical_tuple()) {
        let CfValue::Positive(f) = cf_eval(&big(&t)) else { panic!() };
        let m = cf_measures(&f).unwrap();
        prop_assert_eq!(m.len, t.len());
        prop_assert_eq!(m.u, BigInt::from(t.iter().map(|a| a - 2).sum::<i64>()));
        prop_assert_eq!(m.v, BigInt::from(t.iter().map(|a| a - 1).sum::<i64>()));
    }

    #[test]
    fn st_word_counts(t in prop::collection::vec(2i64..12, 1..12)) {
        let CfValue::Positive(f) = cf_eval(&big(&t)) else { panic!() };
        let m = cf_measures(&f).unwrap();
        let w = st_decompose(&f).unwrap();
        prop_assert_eq!(BigInt::from(w.len()), &m.v - 1);
        prop_assert_eq!(BigInt::from(w.count(StOp::S)), m.u);
        prop_assert_eq!(w.count(StOp::T), m.len - 1);
        prop_assert_eq!(w.evaluate(), f);
    }

    #[test]
    fn s_and_t_act_on_coefficients(t in prop::collection::vec(2i64..12, 1..12)) {
        let CfValue::Positive(f) = cf_eval(&big(&t)) else { panic!() };
        let mut bumped = t.clone();
        bumped[0] += 1;
        prop_assert_eq!(op_s(&f).unwrap(), match cf_eval(&big(&bumped)) {
            CfValue::Positive(g) => g,
            _ => unreachable!(),
        });
        let mut prefixed = vec![2];
        prefixed.extend(&t);
        prop_assert_eq!(op_t(&f).unwrap(), match cf_eval(&big(&prefixed)) {
            CfValue::Positive(g) => g,
            _ => unreachable!(),
        });
    }

    #[test]
    fn multilinearity(t in prop::collection::vec(-3i64..8, 3..14), m in -5i64..=5) {
        let b = big(&t);
        for i in 1..t.len() - 1 {
            let mut shifted = t.clone();
            shifted[i] += m;
            prop_assert_eq!(
                multilinearity_expand(&b, i, &BigInt::from(m)).unwrap(),
                det_m(&big(&shifted))
            );
        }
        prop_assert!(multilinearity_expand(&b, 0, &BigInt::one()).is_err());
        prop_assert!(multilinearity_expand(&b, t.len() - 1, &BigInt::one()).is_err());
    }
}

#[test]
fn determinant_is_convergent_numerator_exhaustively() {
    for k in 0..=8 {
        for t in common::all_tuples(k, 1, 4) {
            let b = big(&t);
            assert_eq!(det_m(&b), convergents(&b).numerator(k).clone(), "{t:?}");
            assert_eq!(det_m(&b), common::det_dense(&common::matrix_m(&t)), "{t:?}");
        }
    }
}

#[test]
fn determinant_is_convergent_numerator_up_to_12() {
    for k in 9..=12u32 {
        let bad = (0..4u64.pow(k)).into_par_iter().find_any(|code| {
            let t: Vec<BigInt> = (0..k)
                .map(|i| BigInt::from(code / 4u64.pow(i) % 4 + 1))
                .collect();
            det_m(&t) != *convergents(&t).numerator(k as usize)
        });
        assert_eq!(bad, None, "length {k}");
    }
}

#[test]
fn complement_identities_up_to_1000() {
    for (p, q) in coprime_pairs(1000) {
        let a = cf_measures(&frac(p, q)).unwrap();
        let b = cf_measures(&frac(p, p - q)).unwrap();
        let (la, lb) = (BigInt::from(a.len), BigInt::from(b.len));
        assert_eq!(a.v, b.v, "{p}/{q}");
        assert_eq!(la, &b.u + 1, "{p}/{q}");
        assert_eq!(&la + &lb, &a.v + 1, "{p}/{q}");
        assert_eq!(&a.u + &b.u, &a.v - 1, "{p}/{q}");
    }
}
