//! Coefficient rings for [`QSeries`](crate::QSeries).
//!
//! All of the series machinery is generic over [`Coeff`]. Exact work uses
//! [`Rational`](crate::Rational); `f64` and `f32` are provided for quick
//! numerical experiments where exactness is not required.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A field of series coefficients.
pub trait Coeff:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    /// `self += a * b` without consuming the operands.
    fn add_mul(&mut self, a: &Self, b: &Self);

    fn add_assign_ref(&mut self, other: &Self);

    fn sub_assign_ref(&mut self, other: &Self);

    fn mul_ref(&self, other: &Self) -> Self;

    /// Whether the value is an integer. Floats answer by exact comparison.
    fn is_integer(&self) -> bool;

    /// Canonical text form used by the JSON encoding.
    fn to_text(&self) -> String;

    fn from_text(s: &str) -> Option<Self>;
}

impl Coeff for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_integer() && b.is_integer() && self.is_integer() {
            let prod = a.numer() * b.numer();
            *self = BigRational::from_integer(self.numer() + prod);
        } else {
            *self += a * b;
        }
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn is_integer(&self) -> bool {
        BigRational::is_integer(self)
    }

    fn to_text(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn from_text(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(BigRational::new(n, d))
            }
            None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        }
    }
}

macro_rules! float_coeff {
    ($t:ty) => {
        impl Coeff for $t {
            fn from_i64(n: i64) -> Self {
                n as $t
            }

            fn add_mul(&mut self, a: &Self, b: &Self) {
                *self += a * b;
            }

            fn add_assign_ref(&mut self, other: &Self) {
                *self += other;
            }

            fn sub_assign_ref(&mut self, other: &Self) {
                *self -= other;
            }

            fn mul_ref(&self, other: &Self) -> Self {
                self * other
            }

            fn is_integer(&self) -> bool {
                self.fract() == 0.0
            }

            fn to_text(&self) -> String {
                format!("{:?}", self)
            }

            fn from_text(s: &str) -> Option<Self> {
                s.trim().parse().ok()
            }
        }
    };
}

float_coeff!(f64);
float_coeff!(f32);

/// `sign^k` for `sign` in `{1, -1}` and any integer `k`.
pub(crate) fn sign_pow(sign: i64, k: i64) -> i64 {
    if sign == 1 || k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        let x = BigRational::new(BigInt::from(-3), BigInt::from(4));
        assert_eq!(x.to_text(), "-3/4");
        assert_eq!(BigRational::from_text("-3/4"), Some(x));
        assert_eq!(
            BigRational::from_text("7"),
            Some(BigRational::from_i64(7))
        );
        assert_eq!(BigRational::from_text("1/0"), None);
    }

    #[test]
    fn add_mul_mixes_integer_and_fraction() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let mut acc = BigRational::from_i64(1);
        acc.add_mul(&half, &BigRational::from_i64(3));
        assert_eq!(acc, BigRational::new(BigInt::from(5), BigInt::from(2)));
    }

    #[test]
    fn sign_powers() {
        assert_eq!(sign_pow(-1, 3), -1);
        assert_eq!(sign_pow(-1, -3), -1);
        assert_eq!(sign_pow(-1, -4), 1);
        assert_eq!(sign_pow(1, -5), 1);
    }
}
