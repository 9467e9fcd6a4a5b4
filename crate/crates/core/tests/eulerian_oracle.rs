use qhecke::eulerian::{chi0, chi1, kl_lhs_a, kl_lhs_b, partial_theta, PartialThetaSpec};
use qhecke::{Rational, Series};

/// Integer series helpers on plain vectors, independent of the library.
fn mul_one_minus(c: &mut [i64], k: usize) {
    for i in (k..c.len()).rev() {
        c[i] -= c[i - k];
    }
}

fn div_one_minus(c: &mut [i64], k: usize) {
    for i in k..c.len() {
        c[i] += c[i - k];
    }
}

fn eulerian(n: usize, term: impl Fn(usize, &mut Vec<i64>)) -> Series {
    let mut total = vec![0i64; n + 1];
    for k in 0..=n {
        let mut t = vec![0i64; n + 1];
        t[k] = 1;
        term(k, &mut t);
        for i in 0..=n {
            total[i] += t[i];
        }
    }
    Series::from_i64_coeffs(0, &total, n as i64)
}

#[test]
fn match_plain_integer_sums() {
    let n = 80;
    let c0 = eulerian(n, |k, t| (k + 1..=2 * k).for_each(|i| div_one_minus(t, i)));
    let c1 = eulerian(n, |k, t| (k + 1..=2 * k + 1).for_each(|i| div_one_minus(t, i)));
    let a = eulerian(n, |k, t| {
        (1..=(2 * k).min(n)).for_each(|i| mul_one_minus(t, i));
        (1..=k).for_each(|i| {
            div_one_minus(t, i);
            div_one_minus(t, i)
        });
    });
    let b = eulerian(n, |k, t| {
        (0..k).filter(|i| 2 * i < n).for_each(|i| mul_one_minus(t, 2 * i + 1));
        (1..=k).for_each(|i| div_one_minus(t, i));
    });
    assert_eq!(chi0::<Rational>(n as i64), c0);
    assert_eq!(chi1::<Rational>(n as i64), c1);
    assert_eq!(kl_lhs_a::<Rational>(n as i64), a);
    assert_eq!(kl_lhs_b::<Rational>(n as i64), b);
}

#[test]
fn nonnegative_integer_coefficients() {
    for s in [chi0::<Rational>(100), chi1(100), kl_lhs_a(100), kl_lhs_b(100)] {
        assert!(s.coeffs().iter().all(|c| c.is_integer() && *c >= Rational::from_integer(0.into())));
    }
}

#[test]
fn partial_theta_direct() {
    let n = 50;
    for (a, b, c) in [(3, 3, 0), (6, 4, 0), (6, 8, 1), (1, 1, 2), (2, -4, 3)] {
        let mut want = vec![0i64; 200];
        for r in 0..100i64 {
            let e = (a * r * r + b * r) / 2 + c;
            if (0..=n).contains(&e) {
                want[e as usize] += if r % 2 == 0 { 1 } else { -1 };
            }
        }
        let got: Series = partial_theta(PartialThetaSpec::new(a, b, c, true).unwrap(), n);
        let lowest = (0..100i64).map(|r| (a * r * r + b * r) / 2 + c).min().unwrap();
        assert!(lowest >= 0);
        assert_eq!(got, Series::from_i64_coeffs(0, &want[..=n as usize], n));
    }
}
