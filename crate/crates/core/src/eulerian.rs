//! q-hypergeometric series and one-sided (false) theta sums.

use crate::coeff::{sign_pow, Coeff};
use crate::error::{Error, Result};
use crate::series::QSeries;

/// Sums `Σ_{n=0}^{order} summand(n)`; every summand here is divisible by `q^n`.
fn sum_terms<T: Coeff>(order: i64, summand: impl Fn(i64) -> QSeries<T>) -> QSeries<T> {
    let mut acc = QSeries::zero(order);
    for n in 0..=order {
        acc = acc.add(&summand(n));
    }
    acc
}

/// `χ0(q) = Σ_{n>=0} q^n / (q^(n+1))_n`.
pub fn chi0<T: Coeff>(order: i64) -> QSeries<T> {
    sum_terms(order, |n| {
        let mut t = QSeries::monomial(T::one(), n, order);
        for k in n + 1..=2 * n {
            t.div_one_minus(1, k);
        }
        t
    })
}

/// `χ1(q) = Σ_{n>=0} q^n / (q^(n+1))_(n+1)`.
pub fn chi1<T: Coeff>(order: i64) -> QSeries<T> {
    sum_terms(order, |n| {
        let mut t = QSeries::monomial(T::one(), n, order);
        for k in n + 1..=2 * n + 1 {
            t.div_one_minus(1, k);
        }
        t
    })
}

/// `Σ_{n>=0} (q;q)_(2n) q^n / (q;q)_n^2`.
pub fn kl_lhs_a<T: Coeff>(order: i64) -> QSeries<T> {
    sum_terms(order, |n| {
        let mut t = QSeries::monomial(T::one(), n, order);
        for k in 1..=(2 * n).min(order) {
            t.mul_one_minus(1, k);
        }
        for k in 1..=n {
            t.div_one_minus(1, k);
            t.div_one_minus(1, k);
        }
        t
    })
}

/// `Σ_{n>=0} (q;q^2)_n q^n / (q;q)_n`.
pub fn kl_lhs_b<T: Coeff>(order: i64) -> QSeries<T> {
    sum_terms(order, |n| {
        let mut t = QSeries::monomial(T::one(), n, order);
        for i in 0..n {
            if 2 * i < order {
                t.mul_one_minus(1, 1 + 2 * i);
            }
        }
        for k in 1..=n {
            t.div_one_minus(1, k);
        }
        t
    })
}

/// `Σ_{r>=0} (±1)^r q^((A r^2 + B r)/2 + C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartialThetaSpec {
    a: i64,
    b: i64,
    c: i64,
    alternating: bool,
}

impl PartialThetaSpec {
    /// Requires `A > 0` and `A + B` even, which makes every exponent an integer.
    pub fn new(a: i64, b: i64, c: i64, alternating: bool) -> Result<Self> {
        if a <= 0 {
            return Err(Error::Precondition(format!("partial theta needs A > 0, got {a}")));
        }
        if (a + b).rem_euclid(2) != 0 {
            return Err(Error::NonIntegralExponent(format!("({a} r^2 + {b} r)/2")));
        }
        Ok(PartialThetaSpec { a, b, c, alternating })
    }

    fn exponent(&self, r: i64) -> i64 {
        (self.a * r * r + self.b * r) / 2 + self.c
    }
}

pub fn partial_theta<T: Coeff>(spec: PartialThetaSpec, order: i64) -> QSeries<T> {
    // exponents decrease until the vertex -B/(2A), then increase
    let vertex = (-spec.b).div_euclid(2 * spec.a) + 1;
    let mut terms = Vec::new();
    let mut r = 0;
    loop {
        let e = spec.exponent(r);
        if e > order && r >= vertex {
            break;
        }
        let s = if spec.alternating { sign_pow(-1, r) } else { 1 };
        terms.push((e, s));
        r += 1;
    }
    QSeries::from_int_terms(terms, 1, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type S = QSeries<Rational>;

    fn nonnegative_integers(s: &S) -> bool {
        s.coeffs().iter().all(|c| c.is_integer() && *c >= Rational::from_integer(0.into()))
    }

    #[test]
    fn leading_terms() {
        // χ0 = 1 + q + q^2 + 2q^3 + ...
        let c0: S = chi0(6);
        assert_eq!(c0.coeff(0), Rational::from_integer(1.into()));
        let c1: S = chi1(6);
        assert_eq!(c1.coeff(0), Rational::from_integer(1.into()));
        let a: S = kl_lhs_a(6);
        assert_eq!(a.coeff(0), Rational::from_integer(1.into()));
    }

    #[test]
    fn partial_theta_terms() {
        let s: S = partial_theta(PartialThetaSpec::new(3, 3, 0, true).unwrap(), 20);
        assert_eq!(s, S::from_int_terms([(0, 1), (3, -1), (9, 1), (18, -1)], 1, 20));
        let t: S = partial_theta(PartialThetaSpec::new(6, 4, 0, true).unwrap(), 20);
        assert_eq!(t, S::from_int_terms([(0, 1), (5, -1), (16, 1)], 1, 20));
        assert!(partial_theta::<Rational>(PartialThetaSpec::new(3, 3, 0, true).unwrap(), -1).is_zero());
        assert!(PartialThetaSpec::new(3, 2, 0, true).is_err());
        assert!(PartialThetaSpec::new(0, 2, 0, true).is_err());
        // negative linear term: exponents 0, -1, 0, 2
        let u: S = partial_theta(PartialThetaSpec::new(1, -3, 0, false).unwrap(), 0);
        assert_eq!(u, S::from_int_terms([(0, 1), (-1, 1), (-1, 1), (0, 1)], 1, 0));
    }

    #[test]
    fn positive_coefficients() {
        for s in [chi0::<Rational>(60), chi1(60), kl_lhs_a(60), kl_lhs_b(60)] {
            assert!(nonnegative_integers(&s));
        }
    }
}
