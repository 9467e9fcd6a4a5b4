use qhecke::appell::{appell_m, AppellArgs};
use qhecke::theta::j;
use qhecke::{Error, QMonomial, Series};

/// `Σ_r (-1)^r q^(M C(r,2)) z^r / (1 - q^(M(r-1)) x z)` through `q^n`, with each
/// denominator expanded geometrically in the direction that converges.
fn numerator(x: QMonomial, m: i64, z: QMonomial, lo: i64, n: i64) -> Vec<i64> {
    let mut c = vec![0i64; (n - lo + 1) as usize];
    let mut add = |e: i64, v: i64| {
        if e >= lo && e <= n {
            c[(e - lo) as usize] += v;
        }
    };
    let sigma = x.sign() * z.sign();
    for r in -200i64..=200 {
        let t = m * r * (r - 1) / 2 + z.exp() * r;
        let s0 = if r.rem_euclid(2) == 0 { 1 } else { -1 } * if z.sign() < 0 && r.rem_euclid(2) == 1 { -1 } else { 1 };
        let e = m * (r - 1) + x.exp() + z.exp();
        assert_ne!(e, 0, "oracle does not handle E = 0");
        if e > 0 {
            let (mut k, mut sk) = (0, 1);
            while t + k * e <= n {
                add(t + k * e, s0 * sk);
                k += 1;
                sk *= sigma;
            }
        } else {
            let (mut k, mut sk) = (1, sigma);
            while t - k * e <= n {
                add(t - k * e, -s0 * sk);
                k += 1;
                sk *= sigma;
            }
        }
    }
    c
}

#[test]
fn matches_defining_sum() {
    let q = QMonomial::q_pow;
    let nq = QMonomial::neg_q_pow;
    let n = 40;
    for (x, m, z) in [
        (q(7), 15, q(9)),
        (q(2), 15, q(4)),
        (nq(2), 3, q(2)),
        (q(2), 5, nq(1)),
        (q(-4), 7, q(3)),
        (nq(5), 4, q(2)),
        (q(1), 2, nq(-2)),
    ] {
        let lo = -60;
        let oracle = Series::from_i64_coeffs(lo, &numerator(x, m, z, lo, n), n);
        let mm: Series = appell_m(AppellArgs::new(x, m, z), n + 60).unwrap();
        let lib = mm.mul(&j(z, m, n + 60)).truncate(n);
        assert!(lib.equal_to_order(&oracle, n).unwrap(), "m({x}, q^{m}, {z})");
    }
}

#[test]
fn preconditions() {
    let q = QMonomial::q_pow;
    // x z = q^M gives a vanishing denominator
    assert!(matches!(appell_m::<qhecke::Rational>(AppellArgs::new(q(1), 3, q(2)), 10), Err(Error::Pole { .. })));
    // z = q^(Mk) makes j(z; q^M) vanish
    assert!(matches!(appell_m::<qhecke::Rational>(AppellArgs::new(q(1), 3, q(6)), 10), Err(Error::ThetaZero(_))));
}

#[test]
fn half_term_case() {
    // m(1, q, -1): the r = 1 term has denominator 1 + 1 = 2, and j(-1; q) = 2 + ...
    let s: Series = appell_m(AppellArgs::new(QMonomial::q_pow(0), 1, QMonomial::neg_q_pow(0)), 20).unwrap();
    assert_eq!(s.coeff(0), qhecke::Rational::new(1.into(), 4.into()));
}
