use std::fmt;
use std::ops::{Div, Mul, Neg};

use crate::coeff::{sign_pow, Coeff};
use crate::error::{Error, Result};
use crate::series::QSeries;

/// A signed integer power of `q`, `±q^exp`.
///
/// This is the only kind of argument the evaluators accept for the formal
/// variables of theta functions, Appell-Lerch sums and Hecke-type sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QMonomial {
    sign: i8,
    exp: i64,
}

impl QMonomial {
    /// # Panics
    ///
    /// If `sign` is not `1` or `-1`.
    pub fn new(sign: i64, exp: i64) -> Self {
        assert!(sign == 1 || sign == -1, "monomial sign must be ±1, got {sign}");
        QMonomial {
            sign: sign as i8,
            exp,
        }
    }

    /// `q^exp`.
    pub const fn q_pow(exp: i64) -> Self {
        QMonomial { sign: 1, exp }
    }

    /// `-q^exp`.
    pub const fn neg_q_pow(exp: i64) -> Self {
        QMonomial { sign: -1, exp }
    }

    pub const fn one() -> Self {
        Self::q_pow(0)
    }

    /// `±q^(num/den)`, rejecting exponents that are not integers.
    pub fn from_ratio(sign: i64, num: i64, den: i64) -> Result<Self> {
        if den == 0 || num % den != 0 {
            return Err(Error::NonIntegralExponent(format!("{num}/{den}")));
        }
        Ok(Self::new(sign, num / den))
    }

    pub fn sign(self) -> i64 {
        self.sign as i64
    }

    pub fn exp(self) -> i64 {
        self.exp
    }

    pub fn inv(self) -> Self {
        QMonomial {
            sign: self.sign,
            exp: -self.exp,
        }
    }

    pub fn pow(self, k: i64) -> Self {
        QMonomial {
            sign: sign_pow(self.sign(), k) as i8,
            exp: self.exp * k,
        }
    }

    /// Multiplies by `q^k`.
    pub fn q_shift(self, k: i64) -> Self {
        QMonomial {
            sign: self.sign,
            exp: self.exp + k,
        }
    }

    pub fn to_series<T: Coeff>(self, order: i64) -> QSeries<T> {
        QSeries::monomial(T::from_i64(self.sign()), self.exp, order)
    }

    /// `self * s`. The order moves with the exponent, so a factor known
    /// through `q^(N - exp)` gives a product known through `q^N`.
    pub fn times<T: Coeff>(self, s: &QSeries<T>) -> QSeries<T> {
        let shifted = s.shift(self.exp);
        if self.sign < 0 {
            shifted.neg()
        } else {
            shifted
        }
    }
}

impl Mul for QMonomial {
    type Output = QMonomial;
    fn mul(self, rhs: QMonomial) -> QMonomial {
        QMonomial {
            sign: self.sign * rhs.sign,
            exp: self.exp + rhs.exp,
        }
    }
}

impl Div for QMonomial {
    type Output = QMonomial;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: QMonomial) -> QMonomial {
        self * rhs.inv()
    }
}

impl Neg for QMonomial {
    type Output = QMonomial;
    fn neg(self) -> QMonomial {
        QMonomial {
            sign: -self.sign,
            exp: self.exp,
        }
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            f.write_str("-")?;
        }
        match self.exp {
            0 => f.write_str("1"),
            1 => f.write_str("q"),
            e => write!(f, "q^{e}"),
        }
    }
}
