use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qca::ExactScalar;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn scalar(q0: u32) -> impl Strategy<Value = ExactScalar> {
    (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
        .prop_map(move |(a, da, b, db)| ExactScalar::new(q0, rat(a, da), rat(b, db)))
}

fn q0s() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7])
}

fn triple() -> impl Strategy<Value = (ExactScalar, ExactScalar, ExactScalar)> {
    q0s().prop_flat_map(|q0| (scalar(q0), scalar(q0), scalar(q0)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn field_axioms((x, y, z) in triple()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if !x.is_zero() {
            let inv = x.inv().expect("nonzero element is invertible");
            prop_assert!((&x * &inv).is_one());
        } else {
            prop_assert!(x.inv().is_none());
        }
    }
}

#[test]
fn vpow_is_additive_in_the_exponent() {
    for q0 in [2, 3, 5, 7] {
        for j in -64..=64 {
            for k in -64..=64 {
                assert_eq!(&ExactScalar::vpow(q0, j) * &ExactScalar::vpow(q0, k), ExactScalar::vpow(q0, j + k));
            }
        }
    }
}

#[test]
fn vpow_and_qpow_values() {
    let pair = |x: &ExactScalar| (x.a().clone(), x.b().clone());
    assert_eq!(pair(&ExactScalar::vpow(2, 0)), (rat(1, 1), rat(0, 1)));
    assert_eq!(pair(&ExactScalar::vpow(2, 2)), (rat(2, 1), rat(0, 1)));
    // v^-3 = 1/(2·√2) = √2/4
    assert_eq!(pair(&ExactScalar::vpow(2, -3)), (rat(0, 1), rat(1, 4)));
    assert_eq!(pair(&ExactScalar::qpow(3, 1)), (rat(3, 1), rat(0, 1)));
    assert_eq!(pair(&ExactScalar::qpow(2, -1)), (rat(1, 2), rat(0, 1)));
    assert_eq!(pair(&ExactScalar::qpow(5, 2)), (rat(25, 1), rat(0, 1)));
    for q0 in [2, 3, 5, 7] {
        for k in -10..=10 {
            assert_eq!(ExactScalar::qpow(q0, k), ExactScalar::vpow(q0, 2 * k));
            assert!((&ExactScalar::vpow(q0, k) * &ExactScalar::vpow(q0, -k)).is_one());
        }
    }
}

#[test]
fn json_form() {
    let x = ExactScalar::new(3, rat(-5, 7), rat(2, 9));
    assert_eq!(serde_json::to_string(&x).unwrap(), r#"{"a":"-5/7","b":"2/9"}"#);
    assert_eq!(ExactScalar::vpow(2, -3).to_string(), "v^-3");
}
