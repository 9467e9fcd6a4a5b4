//! Theta functions `j(x; q^M)`, eta products `J_m`, finite and infinite
//! q-Pochhammer symbols, and the standard transformations of `j`.

use crate::coeff::{sign_pow, Coeff};
use crate::error::{Error, Result};
use crate::monomial::QMonomial;
use crate::report::{run_cases, VerificationReport};
use crate::series::{build_to_order, QSeries};

/// The argument of `j(x; q^M)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThetaArg {
    pub x: QMonomial,
    pub modulus: i64,
}

impl ThetaArg {
    /// # Panics
    ///
    /// If `modulus < 1`.
    pub fn new(x: QMonomial, modulus: i64) -> Self {
        assert!(modulus >= 1, "theta modulus must be positive, got {modulus}");
        ThetaArg { x, modulus }
    }

    /// `j(x; q^M) = 0` exactly when `x = q^(Mk)`.
    pub fn vanishes(&self) -> bool {
        self.x.sign() == 1 && self.x.exp().rem_euclid(self.modulus) == 0
    }

    /// Exponent of the `n`-th term of the bilateral sum.
    fn term_exp(&self, n: i64) -> i64 {
        self.modulus * n * (n - 1) / 2 + self.x.exp() * n
    }

    fn vertex(&self) -> i64 {
        // minimiser of M n(n-1)/2 + e n, then settle on the integer minimum
        let guess = (0.5 - self.x.exp() as f64 / self.modulus as f64).round() as i64;
        let mut n = guess;
        while self.term_exp(n - 1) < self.term_exp(n) {
            n -= 1;
        }
        while self.term_exp(n + 1) < self.term_exp(n) {
            n += 1;
        }
        n
    }

    /// Lowest exponent appearing in the bilateral sum. The true valuation of
    /// `j` is at least this (it is larger only when `j` vanishes).
    pub fn min_exponent(&self) -> i64 {
        self.term_exp(self.vertex())
    }
}

impl std::fmt::Display for ThetaArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "j({}; q^{})", self.x, self.modulus)
    }
}

const SCAN_MARGIN: i64 = 2;

/// Indices `n` of the bilateral sum with term exponent `<= order`.
fn theta_indices(arg: &ThetaArg, order: i64) -> Vec<i64> {
    let v = arg.vertex();
    let mut out = Vec::new();
    let mut beyond = 0;
    let mut n = v;
    while beyond <= SCAN_MARGIN {
        if arg.term_exp(n) <= order {
            out.push(n);
        } else {
            beyond += 1;
        }
        n += 1;
    }
    beyond = 0;
    n = v - 1;
    while beyond <= SCAN_MARGIN {
        if arg.term_exp(n) <= order {
            out.push(n);
        } else {
            beyond += 1;
        }
        n -= 1;
    }
    out
}

/// `j(x; q^M) = Σ_n (-1)^n q^(M n(n-1)/2) x^n`, summed directly.
pub fn jtheta<T: Coeff>(arg: ThetaArg, order: i64) -> QSeries<T> {
    let s = arg.x.sign();
    let terms = theta_indices(&arg, order)
        .into_iter()
        .map(|n| (arg.term_exp(n), sign_pow(-s, n)));
    QSeries::from_int_terms(terms, 1, order)
}

/// `j(x; q^modulus)`.
pub fn j<T: Coeff>(x: QMonomial, modulus: i64, order: i64) -> QSeries<T> {
    jtheta(ThetaArg::new(x, modulus), order)
}

/// `J_{a,m} = j(q^a; q^m)`.
pub fn jacobi_j<T: Coeff>(a: i64, m: i64, order: i64) -> QSeries<T> {
    j(QMonomial::q_pow(a), m, order)
}

/// `J̄_{a,m} = j(-q^a; q^m)`.
pub fn jacobi_jbar<T: Coeff>(a: i64, m: i64, order: i64) -> QSeries<T> {
    j(QMonomial::neg_q_pow(a), m, order)
}

/// `J_m = (q^m; q^m)_∞`, expanded as a finite product.
pub fn eta_product<T: Coeff>(m: i64, order: i64) -> QSeries<T> {
    assert!(m >= 1, "eta product index must be positive, got {m}");
    let mut s = QSeries::one(order);
    let mut k = m;
    while k <= order {
        s.mul_one_minus(1, k);
        k += m;
    }
    s
}

/// Shorthand for [`eta_product`].
pub fn eta<T: Coeff>(m: i64, order: i64) -> QSeries<T> {
    eta_product(m, order)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLength {
    Finite(u64),
    Infinite,
}

/// `(x; q^base)_n = Π_{i=0}^{n-1} (1 - q^(base i) x)`.
///
/// Infinite products require every factor past the first to tend to `1`,
/// which here means `x = q^e` with `e >= 1` or `x = -q^e` with `e >= 0`.
pub fn pochhammer<T: Coeff>(
    x: QMonomial,
    len: PochLength,
    base: i64,
    order: i64,
) -> Result<QSeries<T>> {
    assert!(base >= 1, "pochhammer base must be positive, got {base}");
    let (s, e) = (x.sign(), x.exp());
    let count = match len {
        PochLength::Finite(n) => n as i64,
        PochLength::Infinite => {
            let ok = e >= 1 || (s == -1 && e >= 0);
            if !ok {
                return Err(Error::NonTruncating(format!("{x}; q^{base}")));
            }
            // factors with exponent above the order are 1
            if e > order {
                0
            } else {
                (order - e) / base + 1
            }
        }
    };
    let factor_exps = (0..count).map(|i| e + base * i);
    let negative_total: i64 = factor_exps.clone().filter(|&k| k < 0).map(|k| -k).sum();
    let mut acc = QSeries::one(order + negative_total);
    for k in factor_exps {
        if k > 0 && k > acc.order() - acc.effective_valuation() {
            // this and every later factor is 1 to the working order
            break;
        }
        match k.cmp(&0) {
            std::cmp::Ordering::Greater => acc.mul_one_minus(s, k),
            std::cmp::Ordering::Equal => {
                if s == 1 {
                    return Ok(QSeries::zero(order));
                }
                acc = acc.scale_i64(2);
            }
            std::cmp::Ordering::Less => {
                // 1 - s q^k = -s q^k (1 - s q^(-k))
                acc.mul_one_minus(s, -k);
                acc = acc.shift(k).scale_i64(-s);
            }
        }
    }
    Ok(acc.truncate(order))
}

/// `j(x; q^M) = (x)_∞ (q^M/x)_∞ (q^M)_∞` computed from the product side,
/// after reducing `x` into the fundamental range. Used to cross-check
/// [`jtheta`].
pub fn jtheta_product<T: Coeff>(arg: ThetaArg, order: i64) -> Result<QSeries<T>> {
    if arg.vanishes() {
        return Ok(QSeries::zero(order));
    }
    let norm = j_elliptic_normalize(arg);
    let m = arg.modulus;
    let x = norm.arg.x;
    let build = |n: i64| -> Result<QSeries<T>> {
        // x = s q^e with 0 <= e < M; the factor (1 - x) is explicit when e = 0
        let head = if x.exp() == 0 {
            QSeries::constant(T::from_i64(1 - x.sign()), n)
        } else {
            QSeries::one(n).sub(&x.to_series(n))
        };
        let left = pochhammer::<T>(x.q_shift(m), PochLength::Infinite, m, n)?;
        let right = pochhammer::<T>(QMonomial::q_pow(m) / x, PochLength::Infinite, m, n)?;
        let prod = head.mul(&left).mul(&right).mul(&eta_product(m, n));
        Ok(prod.shift(norm.shift).scale_i64(norm.sign))
    };
    build_to_order(order, build)
}

/// Result of reducing `j(x; q^M)` with the elliptic transformation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub arg: ThetaArg,
    /// `j(original) = sign * q^shift * j(arg)`.
    pub sign: i64,
    pub shift: i64,
}

/// Rewrites `j(q^(Mn) x0; q^M) = (-1)^n q^(-M n(n-1)/2) x0^(-n) j(x0; q^M)`
/// with the exponent of `x0` in `[0, M)`.
pub fn j_elliptic_normalize(arg: ThetaArg) -> Normalized {
    let m = arg.modulus;
    let n = arg.x.exp().div_euclid(m);
    let e0 = arg.x.exp().rem_euclid(m);
    let s = arg.x.sign();
    Normalized {
        arg: ThetaArg::new(QMonomial::new(s, e0), m),
        sign: sign_pow(-s, n),
        shift: -m * n * (n - 1) / 2 - e0 * n,
    }
}

/// `j(x; q^M) = j(q^M / x; q^M)`.
pub fn j_reflect(arg: ThetaArg) -> ThetaArg {
    ThetaArg::new(QMonomial::q_pow(arg.modulus) / arg.x, arg.modulus)
}

/// `j(x; q^M) = -x j(1/x; q^M)`, as `(argument, sign, shift)`.
pub fn j_invert(arg: ThetaArg) -> Normalized {
    Normalized {
        arg: ThetaArg::new(arg.x.inv(), arg.modulus),
        sign: -arg.x.sign(),
        shift: arg.x.exp(),
    }
}

/// `j(arg) = prefactor * j(reduced)` with the reduced exponent in `[0, M)`,
/// so that `j(reduced)` has no negative powers of `q`.
pub fn j_reduce(arg: ThetaArg) -> (QMonomial, ThetaArg) {
    let n = j_elliptic_normalize(arg);
    (QMonomial::new(n.sign, n.shift), n.arg)
}

/// `scale * coef * Π j(num) / Π j(den)`.
///
/// Every theta function is reduced to the fundamental range first, so the
/// series factors start at `q^0` and no order is lost in the products or
/// the division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaQuotient {
    pub coef: QMonomial,
    pub num: Vec<ThetaArg>,
    pub den: Vec<ThetaArg>,
    /// Rational factor `(numerator, denominator)`.
    pub scale: (i64, i64),
}

impl ThetaQuotient {
    pub fn new(coef: QMonomial) -> Self {
        ThetaQuotient {
            coef,
            num: Vec::new(),
            den: Vec::new(),
            scale: (1, 1),
        }
    }

    /// Multiplies by `j(x; q^m)`.
    pub fn j(mut self, x: QMonomial, m: i64) -> Self {
        self.num.push(ThetaArg::new(x, m));
        self
    }

    /// Multiplies by `J_m^k`.
    pub fn eta(mut self, m: i64, k: usize) -> Self {
        for _ in 0..k {
            self.num.push(ThetaArg::new(QMonomial::q_pow(m), 3 * m));
        }
        self
    }

    /// Divides by `j(x; q^m)`.
    pub fn over_j(mut self, x: QMonomial, m: i64) -> Self {
        self.den.push(ThetaArg::new(x, m));
        self
    }

    /// Divides by `J_m^k`.
    pub fn over_eta(mut self, m: i64, k: usize) -> Self {
        for _ in 0..k {
            self.den.push(ThetaArg::new(QMonomial::q_pow(m), 3 * m));
        }
        self
    }

    pub fn scaled(mut self, numerator: i64, denominator: i64) -> Self {
        self.scale = (self.scale.0 * numerator, self.scale.1 * denominator);
        self
    }

    pub fn eval<T: Coeff>(&self, order: i64) -> Result<QSeries<T>> {
        if let Some(d) = self.den.iter().find(|d| d.vanishes()) {
            return Err(Error::ThetaZero(d.to_string()));
        }
        if self.num.iter().any(|n| n.vanishes()) {
            return Ok(QSeries::zero(order));
        }
        let mut pre = self.coef;
        let num: Vec<ThetaArg> = self
            .num
            .iter()
            .map(|&a| {
                let (p, r) = j_reduce(a);
                pre = pre * p;
                r
            })
            .collect();
        let den: Vec<ThetaArg> = self
            .den
            .iter()
            .map(|&a| {
                let (p, r) = j_reduce(a);
                pre = pre / p;
                r
            })
            .collect();
        let w = order - pre.exp();
        if w < 0 {
            return Ok(QSeries::zero(order));
        }
        let mut top = QSeries::<T>::one(w);
        for a in num {
            top = top.mul(&jtheta(a, w));
        }
        let mut bottom = QSeries::<T>::one(w);
        for a in den {
            bottom = bottom.mul(&jtheta(a, w));
        }
        let q = top.div(&bottom)?;
        let q = if self.scale == (1, 1) {
            q
        } else {
            q.scale(&(T::from_i64(self.scale.0) / T::from_i64(self.scale.1)))
        };
        Ok(pre.times(&q).truncate(order))
    }
}

/// Right-hand side of `j(x; q^M) = J_M j(x, q^M x, ..., q^(M(n-1)) x; q^(Mn)) / J_(Mn)^n`.
pub fn j_mod_inc<T: Coeff>(arg: ThetaArg, n: i64, order: i64) -> Result<QSeries<T>> {
    if n < 1 {
        return Err(Error::Precondition(format!("modulus increase needs n >= 1, got {n}")));
    }
    let m = arg.modulus;
    build_to_order(order, |w| {
        let mut num = eta_product::<T>(m, w);
        for i in 0..n {
            num = num.mul(&j(arg.x.q_shift(m * i), m * n, w));
        }
        num.div(&eta_product::<T>(m * n, w).pow(n as u32))
    })
}

/// Right-hand side of `j(x^n; q^(Mn)) = J_(Mn) Π_k j(ζ_n^k x; q^M) / J_M^n`.
///
/// Only `n <= 2` is supported: larger `n` needs cyclotomic coefficients.
pub fn j_mod_dec<T: Coeff>(arg: ThetaArg, n: i64, order: i64) -> Result<QSeries<T>> {
    let m = arg.modulus;
    match n {
        1 => Ok(jtheta(arg, order)),
        2 => build_to_order(order, |w| {
            let num = eta_product::<T>(2 * m, w)
                .mul(&j(arg.x, m, w))
                .mul(&j(-arg.x, m, w));
            num.div(&eta_product::<T>(m, w).pow(2))
        }),
        n if n > 2 => Err(Error::UnsupportedCyclotomic(n)),
        _ => Err(Error::Precondition(format!("modulus decrease needs n >= 1, got {n}"))),
    }
}

/// Both sides of `j(-x;q) j(y;q) + j(x;q) j(-y;q) = 2 j(xy;q^2) j(q y/x;q^2)`.
pub fn h1_sides<T: Coeff>(x: QMonomial, y: QMonomial, order: i64) -> Result<(QSeries<T>, QSeries<T>)> {
    let lhs = build_to_order(order, |w| {
        Ok(j::<T>(-x, 1, w)
            .mul(&j(y, 1, w))
            .add(&j::<T>(x, 1, w).mul(&j(-y, 1, w))))
    })?;
    let rhs = build_to_order(order, |w| {
        Ok(j::<T>(x * y, 2, w)
            .mul(&j(QMonomial::q_pow(1) * y / x, 2, w))
            .scale_i64(2))
    })?;
    Ok((lhs, rhs))
}

pub fn h1_theorem_check<T: Coeff>(x: QMonomial, y: QMonomial, order: i64) -> Result<VerificationReport> {
    run_cases(
        "h1-theorem",
        order,
        [(format!("x={x}, y={y}"), || h1_sides::<T>(x, y, order))],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type S = QSeries<Rational>;

    fn poly(c: &[i64], order: i64) -> S {
        S::from_i64_coeffs(0, c, order)
    }

    #[test]
    fn theta_at_q_vanishes() {
        let s: S = j(QMonomial::q_pow(1), 1, 40);
        assert!(s.is_zero());
        assert_eq!(s.order(), 40);
        let t: S = j(QMonomial::q_pow(-8), 4, 40);
        assert!(t.is_zero());
    }

    #[test]
    fn theta_at_minus_one() {
        // 2 + 2q + 2q^3 + 2q^6 + 2q^10 + ...
        let s: S = j(QMonomial::neg_q_pow(0), 1, 10);
        let mut expect = vec![0i64; 11];
        for t in [0, 1, 3, 6, 10] {
            expect[t] = 2;
        }
        assert_eq!(s, poly(&expect, 10));
    }

    #[test]
    fn eta_products_from_product_expansion() {
        let j1: S = eta_product(1, 12);
        let mut e = vec![0i64; 13];
        e[0] = 1;
        e[1] = -1;
        e[2] = -1;
        e[5] = 1;
        e[7] = 1;
        e[12] = -1;
        assert_eq!(j1, poly(&e, 12));
        let j2: S = eta_product(2, 5);
        assert_eq!(j2, poly(&[1, 0, -1, 0, -1, 0], 5));
    }

    #[test]
    fn eta_is_theta_with_modulus_three() {
        let lhs: S = eta_product(1, 50);
        let rhs: S = jacobi_j(1, 3, 50);
        assert_eq!(lhs, rhs);
        let lhs2: S = eta_product(2, 50);
        assert_eq!(lhs2, jacobi_j(2, 6, 50));
    }

    #[test]
    fn pochhammer_basics() {
        let q = QMonomial::q_pow(1);
        assert_eq!(pochhammer::<Rational>(q, PochLength::Finite(0), 1, 10).unwrap(), S::one(10));
        assert_eq!(
            pochhammer::<Rational>(q, PochLength::Finite(2), 1, 10).unwrap(),
            poly(&[1, -1, -1, 1], 10)
        );
        assert_eq!(
            pochhammer::<Rational>(q, PochLength::Infinite, 1, 40).unwrap(),
            eta_product(1, 40)
        );
        assert!(matches!(
            pochhammer::<Rational>(QMonomial::one(), PochLength::Infinite, 1, 10),
            Err(Error::NonTruncating(_))
        ));
        // (q^-1; q)_2 = (1 - q^-1)(1 - 1) = 0
        assert!(pochhammer::<Rational>(QMonomial::q_pow(-1), PochLength::Finite(2), 1, 10)
            .unwrap()
            .is_zero());
        // (q^-2; q^3)_2 = (1 - q^-2)(1 - q) = q^-2 (q^2 - 1)(1 - q)
        let p = pochhammer::<Rational>(QMonomial::q_pow(-2), PochLength::Finite(2), 3, 10).unwrap();
        assert_eq!(p, S::from_i64_coeffs(-2, &[-1, 1, 1, -1], 10));
    }

    #[test]
    fn elliptic_normalization() {
        let n = j_elliptic_normalize(ThetaArg::new(QMonomial::q_pow(5), 4));
        assert_eq!(n.arg, ThetaArg::new(QMonomial::q_pow(1), 4));
        assert_eq!((n.sign, n.shift), (-1, -1));
        for (s, e, m) in [(-1, 4, 4), (1, 5, 4), (-1, -7, 3), (1, 13, 5), (-1, 0, 1), (1, -3, 2)] {
            let arg = ThetaArg::new(QMonomial::new(s, e), m);
            let n = j_elliptic_normalize(arg);
            let direct: S = jtheta(arg, 40);
            let via = build_to_order(40, |w| Ok(jtheta::<Rational>(n.arg, w).shift(n.shift).scale_i64(n.sign)))
                .unwrap();
            assert_eq!(direct, via, "{arg}");
        }
    }

    #[test]
    fn inversion_and_reflection() {
        let arg = ThetaArg::new(QMonomial::neg_q_pow(2), 1);
        let direct: S = jtheta(arg, 40);
        assert_eq!(direct, jtheta(j_reflect(arg), 40));
        let inv = j_invert(arg);
        let via = build_to_order(40, |w| Ok(jtheta::<Rational>(inv.arg, w).shift(inv.shift).scale_i64(inv.sign)))
            .unwrap();
        assert_eq!(direct, via);
    }

    #[test]
    fn jbar_quarter_identity() {
        let lhs: S = jacobi_jbar(1, 4, 50).scale_i64(2);
        let rhs = build_to_order(50, |w| {
            eta_product::<Rational>(2, w)
                .pow(2)
                .scale_i64(2)
                .div(&eta_product(1, w))
        })
        .unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(jacobi_jbar::<Rational>(0, 1, 50), lhs);
    }

    #[test]
    fn triple_product_matches_sum() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let m = rng.gen_range(1..6);
            let e = rng.gen_range(-12..12);
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            let arg = ThetaArg::new(QMonomial::new(s, e), m);
            let sum: S = jtheta(arg, 40);
            let prod = jtheta_product::<Rational>(arg, 40).unwrap();
            assert_eq!(sum, prod, "{arg}");
        }
    }

    #[test]
    fn modulus_increase() {
        for n in 2..=4 {
            for (s, e) in [(1, 1), (-1, 0), (-1, 3), (1, -2)] {
                let arg = ThetaArg::new(QMonomial::new(s, e), 1);
                let lhs: S = jtheta(arg, 40);
                let rhs = j_mod_inc::<Rational>(arg, n, 40).unwrap();
                assert_eq!(lhs, rhs, "n={n} {arg}");
            }
        }
    }

    #[test]
    fn modulus_decrease_for_two() {
        for (s, e) in [(1, 1), (-1, 0), (-1, 3), (1, 2)] {
            let x = QMonomial::new(s, e);
            let lhs: S = j(x.pow(2), 2, 40);
            let rhs = j_mod_dec::<Rational>(ThetaArg::new(x, 1), 2, 40).unwrap();
            assert_eq!(lhs, rhs, "{x}");
        }
        assert_eq!(
            j_mod_dec::<Rational>(ThetaArg::new(QMonomial::q_pow(1), 1), 3, 10),
            Err(Error::UnsupportedCyclotomic(3))
        );
    }

    #[test]
    fn h1_theorem() {
        let cases = [
            (QMonomial::q_pow(1), QMonomial::q_pow(2)),
            (QMonomial::q_pow(1), QMonomial::q_pow(1)),
            (QMonomial::neg_q_pow(1), QMonomial::q_pow(3)),
        ];
        for (xm, ym) in cases {
            let r = h1_theorem_check::<Rational>(xm, ym, 60).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn f64_theta() {
        let s: QSeries<f64> = j(QMonomial::neg_q_pow(0), 1, 6);
        assert_eq!(s.coeffs(), &[2.0, 2.0, 0.0, 2.0, 0.0, 0.0, 2.0]);
    }
}
