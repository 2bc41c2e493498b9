use std::f64::consts::TAU;

use centrum::cyclotomic::CycNum;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn num(conductor: u32, coeffs: &[i64], den: i64) -> CycNum {
    let big: Vec<BigInt> = coeffs.iter().map(|&c| c.into()).collect();
    CycNum::from_exponent_coeffs(conductor, &big, den.into())
}

fn arb() -> impl Strategy<Value = (u32, Vec<i64>, i64)> {
    (1u32..=24).prop_flat_map(|n| (Just(n), prop::collection::vec(-4i64..=4, n as usize), 1i64..=4))
}

fn arb_triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    (1u32..=24).prop_flat_map(|n| {
        let v = || (prop::collection::vec(-4i64..=4, n as usize), 1i64..=3);
        (v(), v(), v()).prop_map(move |((a, da), (b, db), (c, dc))| (num(n, &a, da), num(n, &b, db), num(n, &c, dc)))
    })
}

/// Complex value from the raw exponent coefficients.
fn eval_raw(n: u32, coeffs: &[i64], den: i64) -> (f64, f64) {
    let (mut re, mut im) = (0.0, 0.0);
    for (e, &c) in coeffs.iter().enumerate() {
        let t = TAU * e as f64 / n as f64;
        re += c as f64 * t.cos();
        im += c as f64 * t.sin();
    }
    (re / den as f64, im / den as f64)
}

/// Complex value from the canonical power-basis form.
fn eval(z: &CycNum) -> (f64, f64) {
    let n = z.conductor();
    let d = z.denominator().to_f64().unwrap();
    let (mut re, mut im) = (0.0, 0.0);
    for (k, c) in z.numerator().iter().enumerate() {
        let t = TAU * k as f64 / n as f64;
        re += c.to_f64().unwrap() * t.cos();
        im += c.to_f64().unwrap() * t.sin();
    }
    (re / d, im / d)
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-8 && (a.1 - b.1).abs() < 1e-8
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_keeps_the_value((n, c, d) in arb()) {
        prop_assert!(close(eval(&num(n, &c, d)), eval_raw(n, &c, d)));
    }

    #[test]
    fn ring_axioms((a, b, c) in arb_triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &CycNum::one(a.conductor()), a.clone());
        prop_assert_eq!(-(-a.clone()), a);
    }

    #[test]
    fn products_agree_with_complex_products((a, b, _c) in arb_triple()) {
        let (x, y) = (eval(&a), eval(&b));
        prop_assert!(close(eval(&(&a * &b)), (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)));
    }

    #[test]
    fn galois_is_a_ring_automorphism((a, b, _c) in arb_triple(), t in 1u64..48) {
        let n = a.conductor() as u64;
        if num_integer::gcd(t, n) == 1 {
            prop_assert_eq!((&a * &b).galois(t).unwrap(), &a.galois(t).unwrap() * &b.galois(t).unwrap());
            prop_assert_eq!((&a + &b).galois(t).unwrap(), &a.galois(t).unwrap() + &b.galois(t).unwrap());
        } else {
            prop_assert!(a.galois(t).is_err());
        }
    }

    #[test]
    fn conjugation((a, b, _c) in arb_triple()) {
        let x = eval(&a);
        prop_assert!(close(eval(&a.conj()), (x.0, -x.1)));
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        let m = a.abs_squared();
        prop_assert!(m.as_rational().is_some() || m.conj() == m);
        prop_assert!(close(eval(&m), (x.0 * x.0 + x.1 * x.1, 0.0)));
    }

    #[test]
    fn abs_squared_is_multiplicative((a, b, _c) in arb_triple()) {
        prop_assert_eq!((&a * &b).abs_squared(), &a.abs_squared() * &b.abs_squared());
    }

    #[test]
    fn embedding_commutes_with_arithmetic((a, b, _c) in arb_triple(), k in 1u32..4) {
        let m = a.conductor() * k;
        prop_assert_eq!((&a * &b).embed(m), &a.embed(m) * &b.embed(m));
        prop_assert_eq!(a.embed(m), a.clone());
        prop_assert!(close(eval(&a.embed(m)), eval(&a)));
    }

    #[test]
    fn text_round_trip((n, c, d) in arb()) {
        let z = num(n, &c, d);
        let back: CycNum = z.to_string().parse().unwrap();
        prop_assert_eq!(back, z);
    }

    #[test]
    fn powers_of_zeta_are_roots_of_unity(n in 1u32..=24, k in 0u64..100) {
        let z = CycNum::zeta_pow(n, k);
        let order = z.is_root_of_unity().unwrap();
        let expect = n / num_integer::gcd(n, (k % n as u64) as u32);
        prop_assert_eq!(order, expect);
        prop_assert!(z.pow(order as u64).is_one());
        prop_assert!((-z.clone()).is_root_of_unity().is_some());
    }
}

#[test]
fn unit_modulus_iff_root_of_unity_small_coefficients() {
    for n in 1u32..=8 {
        for code in 0..3usize.pow(n) {
            let c: Vec<i64> = (0..n).map(|k| (code / 3usize.pow(k) % 3) as i64 - 1).collect();
            let z = num(n, &c, 1);
            let unit = z.abs_squared().is_one();
            assert_eq!(
                unit,
                z.is_root_of_unity().is_some(),
                "conductor {n}, coefficients {c:?}"
            );
            // the floating point modulus agrees
            let v = eval(&z);
            assert_eq!(unit, ((v.0 * v.0 + v.1 * v.1) - 1.0).abs() < 1e-9, "{n} {c:?}");
        }
    }
}
