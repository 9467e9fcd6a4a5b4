use proptest::prelude::*;
use qhecke::{Coeff, Rational, Series};

fn poly(v: i64, c: &[i64], order: i64) -> Series {
    Series::from_i64_coeffs(v, c, order)
}

fn arb_series() -> impl Strategy<Value = Series> {
    (-3i64..4, prop::collection::vec(-5i64..6, 0..8)).prop_map(|(v, c)| poly(v, &c, 20))
}

/// A series with nonzero constant term.
fn arb_unit() -> impl Strategy<Value = Series> {
    (prop::sample::select(vec![-2i64, -1, 1, 3]), prop::collection::vec(-4i64..5, 0..6)).prop_map(|(c0, rest)| {
        let mut c = vec![c0];
        c.extend(rest);
        poly(0, &c, 20)
    })
}

proptest! {
    #[test]
    fn ring_laws(a in arb_series(), b in arb_series(), c in arb_series()) {
        let n = 8;
        prop_assert!(a.mul(&b).equal_to_order(&b.mul(&a), n).unwrap());
        prop_assert!(a.mul(&b).mul(&c).equal_to_order(&a.mul(&b.mul(&c)), n).unwrap());
        prop_assert!(a.mul(&b.add(&c)).equal_to_order(&a.mul(&b).add(&a.mul(&c)), n).unwrap());
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn inverse(u in arb_unit(), b in arb_series()) {
        let inv = u.invert().unwrap();
        prop_assert!(u.mul(&inv).equal_to_order(&Series::one(20), 20).unwrap());
        let d = b.div(&u).unwrap();
        prop_assert!(d.mul(&u).equal_to_order(&b, 15).unwrap());
    }

    #[test]
    fn json_round_trip(a in arb_series()) {
        let back = Series::from_json(&a.to_json()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn shift_is_monomial_product(a in arb_series(), k in -5i64..6) {
        let m = Series::monomial(<Rational as Coeff>::from_i64(1), k, 30);
        prop_assert!(a.shift(k).equal_to_order(&a.mul(&m), 15).unwrap());
    }
}

#[test]
fn geometric_series() {
    // 1/(1-q) = 1 + q + q^2 + ...
    let s = poly(0, &[1, -1], 12).invert().unwrap();
    assert_eq!(s, poly(0, &[1; 13], 12));
}

#[test]
fn negative_valuation_division() {
    let a = poly(-2, &[1, 1], 10);
    let b = poly(-1, &[2], 10);
    let d = a.div(&b).unwrap();
    assert_eq!(d.valuation(), -1);
    assert!(d.mul(&b).equal_to_order(&a, 8).unwrap());
}

#[test]
fn zero_series_encoding() {
    let z = Series::zero(7);
    let v = z.to_json();
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 0);
    assert_eq!(Series::from_json(&v).unwrap(), z);
}

#[test]
fn float_coefficients() {
    let s = qhecke::SeriesF64::from_i64_coeffs(0, &[1, -1], 10).invert().unwrap();
    assert!(s.coeffs().iter().all(|c| (*c - 1.0).abs() < 1e-12));
}
