use qhecke::theta::{eta_product, j, jtheta_product, ThetaArg};
use qhecke::{QMonomial, Series};

/// Coefficients of `Π (1 - s q^e)` through `q^n`, for `e >= 1`.
fn product(factors: &[(i64, i64)], n: usize) -> Vec<i64> {
    let mut c = vec![0i64; n + 1];
    c[0] = 1;
    for &(s, e) in factors {
        let e = e as usize;
        if e > n {
            continue;
        }
        for i in (e..=n).rev() {
            c[i] -= s * c[i - e];
        }
    }
    c
}

/// `j(s q^k; q^M)` for `0 < k < M` as `(s q^k;q^M)_inf (s q^(M-k);q^M)_inf (q^M;q^M)_inf`.
fn triple_product(s: i64, k: i64, m: i64, n: usize) -> Vec<i64> {
    let mut f = Vec::new();
    for i in 0..=(n as i64 / m + 1) {
        f.push((s, k + m * i));
        f.push((s, m - k + m * i));
        f.push((1, m + m * i));
    }
    product(&f, n)
}

#[test]
fn sum_side_matches_product_side() {
    let n = 60;
    for m in 1..=7 {
        for k in 1..m {
            for s in [1, -1] {
                let lib: Series = j(QMonomial::new(s, k), m, n as i64);
                assert_eq!(lib, Series::from_i64_coeffs(0, &triple_product(s, k, m, n), n as i64), "s={s} k={k} m={m}");
            }
        }
        // k = 0 with a minus sign: j(-1; q^M) = 2 (-q^M;q^M)^2 (q^M;q^M)
        let mut f = vec![];
        for i in 1..=(n as i64 / m + 1) {
            f.push((-1, m * i));
            f.push((-1, m * i));
            f.push((1, m * i));
        }
        let doubled: Vec<i64> = product(&f, n).into_iter().map(|c| 2 * c).collect();
        assert_eq!(j::<qhecke::Rational>(QMonomial::neg_q_pow(0), m, n as i64), Series::from_i64_coeffs(0, &doubled, n as i64));
    }
}

#[test]
fn product_evaluator_agrees() {
    for (s, k, m) in [(1, 1, 3), (-1, 2, 5), (1, -4, 3), (-1, 9, 4)] {
        let arg = ThetaArg::new(QMonomial::new(s, k), m);
        let a: Series = jtheta_product(arg, 40).unwrap();
        let b: Series = j(QMonomial::new(s, k), m, 40);
        assert_eq!(a, b);
    }
}

#[test]
fn euler_pentagonal() {
    let n = 80;
    let mut c = vec![0i64; n + 1];
    for k in -10i64..=10 {
        let e = k * (3 * k - 1) / 2;
        if e >= 0 && (e as usize) <= n {
            c[e as usize] += if k % 2 == 0 { 1 } else { -1 };
        }
    }
    assert_eq!(eta_product::<qhecke::Rational>(1, n as i64), Series::from_i64_coeffs(0, &c, n as i64));
}

#[test]
fn vanishing_theta() {
    for (k, m) in [(0, 1), (3, 3), (-6, 2)] {
        assert!(ThetaArg::new(QMonomial::q_pow(k), m).vanishes());
        assert!(j::<qhecke::Rational>(QMonomial::q_pow(k), m, 30).is_zero());
    }
}
