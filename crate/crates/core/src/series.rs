//! Truncated Laurent series in `q`.
//!
//! A [`QSeries`] stores a dense run of coefficients for every exponent from
//! its valuation up to its order `N`; coefficients above `N` are unknown.
//! Every operation propagates the order conservatively, so a result never
//! claims knowledge that its operands did not have.
//!
//! The zero series is stored with valuation `0` and an empty coefficient run.
//! Its order still records how far it is known to vanish.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::Coeff;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<T> {
    valuation: i64,
    order: i64,
    coeffs: Vec<T>,
}

/// First exponent at which two series disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch<T> {
    pub exponent: i64,
    pub lhs: T,
    pub rhs: T,
}

impl<T: Coeff> QSeries<T> {
    pub fn zero(order: i64) -> Self {
        QSeries {
            valuation: 0,
            order,
            coeffs: Vec::new(),
        }
    }

    pub fn one(order: i64) -> Self {
        Self::constant(T::one(), order)
    }

    pub fn constant(c: T, order: i64) -> Self {
        Self::monomial(c, 0, order)
    }

    /// `c * q^exp`, known through `q^order`.
    pub fn monomial(c: T, exp: i64, order: i64) -> Self {
        if exp > order || c.is_zero() {
            return Self::zero(order);
        }
        let mut coeffs = vec![T::zero(); (order - exp + 1) as usize];
        coeffs[0] = c;
        QSeries {
            valuation: exp,
            order,
            coeffs,
        }
    }

    /// Builds a series from coefficients starting at exponent `valuation`.
    ///
    /// Coefficients past `order` are dropped; missing ones up to `order` are
    /// taken to be zero.
    pub fn from_coeffs(valuation: i64, mut coeffs: Vec<T>, order: i64) -> Self {
        if order < valuation {
            return Self::zero(order);
        }
        let len = (order - valuation + 1) as usize;
        coeffs.truncate(len);
        coeffs.resize(len, T::zero());
        let mut s = QSeries {
            valuation,
            order,
            coeffs,
        };
        s.normalize();
        s
    }

    pub fn from_i64_coeffs(valuation: i64, coeffs: &[i64], order: i64) -> Self {
        Self::from_coeffs(
            valuation,
            coeffs.iter().map(|&c| T::from_i64(c)).collect(),
            order,
        )
    }

    /// Sums integer terms `(exponent, coefficient)`, keeping those at or
    /// below `order`, and divides the total by `denominator`.
    pub fn from_int_terms<I>(terms: I, denominator: i64, order: i64) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let terms: Vec<(i64, i64)> = terms.into_iter().filter(|&(e, _)| e <= order).collect();
        let Some(lo) = terms.iter().map(|&(e, _)| e).min() else {
            return Self::zero(order);
        };
        let mut acc = vec![0i64; (order - lo + 1) as usize];
        for (e, c) in terms {
            acc[(e - lo) as usize] += c;
        }
        let den = T::from_i64(denominator);
        let coeffs = acc
            .into_iter()
            .map(|c| {
                if denominator == 1 {
                    T::from_i64(c)
                } else {
                    T::from_i64(c) / den.clone()
                }
            })
            .collect();
        Self::from_coeffs(lo, coeffs, order)
    }

    fn normalize(&mut self) {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            None => {
                self.coeffs.clear();
                self.valuation = 0;
            }
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.valuation += k as i64;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient; `0` for the zero series.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Highest exponent whose coefficient is known.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Valuation used for order bookkeeping: the zero series is known to
    /// vanish through its order, so it behaves as if its valuation were
    /// `order + 1`.
    pub fn effective_valuation(&self) -> i64 {
        if self.is_zero() {
            self.order + 1
        } else {
            self.valuation
        }
    }

    /// The stored coefficient run, starting at [`valuation`](Self::valuation).
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `q^exp`.
    ///
    /// # Panics
    ///
    /// If `exp` lies above the known order.
    pub fn coeff(&self, exp: i64) -> T {
        assert!(
            exp <= self.order,
            "coefficient of q^{exp} requested from a series known only through q^{}",
            self.order
        );
        self.get(exp)
    }

    fn get(&self, exp: i64) -> T {
        if self.is_zero() || exp < self.valuation || exp > self.order {
            T::zero()
        } else {
            self.coeffs[(exp - self.valuation) as usize].clone()
        }
    }

    /// Nonzero terms as `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> + '_ {
        let v = self.valuation;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (v + i as i64, c))
    }

    /// Forgets every coefficient above `q^order`.
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        if self.is_zero() {
            return Self::zero(order);
        }
        let keep = (order - self.valuation + 1).max(0) as usize;
        Self::from_coeffs(self.valuation, self.coeffs[..keep].to_vec(), order)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let order = self.order.min(other.order);
        let lo = match (self.is_zero(), other.is_zero()) {
            (true, true) => return Self::zero(order),
            (false, true) => self.valuation,
            (true, false) => other.valuation,
            (false, false) => self.valuation.min(other.valuation),
        };
        if lo > order {
            return Self::zero(order);
        }
        let coeffs = (lo..=order)
            .map(|e| {
                let mut c = self.get(e);
                if subtract {
                    c.sub_assign_ref(&other.get(e));
                } else {
                    c.add_assign_ref(&other.get(e));
                }
                c
            })
            .collect();
        Self::from_coeffs(lo, coeffs, order)
    }

    pub fn neg(&self) -> Self {
        QSeries {
            valuation: self.valuation,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        QSeries {
            valuation: self.valuation,
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect(),
        }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        match c {
            1 => self.clone(),
            -1 => self.neg(),
            _ => self.scale(&T::from_i64(c)),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        QSeries {
            valuation: if self.is_zero() { 0 } else { self.valuation + k },
            order: self.order + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = (self.order + other.effective_valuation())
            .min(other.order + self.effective_valuation());
        if self.is_zero() || other.is_zero() {
            return Self::zero(order);
        }
        let lo = self.valuation + other.valuation;
        if lo > order {
            return Self::zero(order);
        }
        let len = (order - lo + 1) as usize;
        let mut acc = vec![T::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    acc[i + j].add_mul(a, b);
                }
            }
        }
        Self::from_coeffs(lo, acc, order)
    }

    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return if self.is_zero() {
                Self::one(self.order)
            } else {
                Self::one(self.order - self.valuation)
            };
        }
        let mut result = self.clone();
        for _ in 1..k {
            result = result.mul(self);
        }
        result
    }

    /// Multiplicative inverse. The relative precision `order - valuation` is
    /// preserved.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivideByZeroSeries);
        }
        let v = self.valuation;
        let precision = (self.order - v) as usize;
        let lead_inv = T::one() / self.coeffs[0].clone();
        let mut out: Vec<T> = Vec::with_capacity(precision + 1);
        out.push(lead_inv.clone());
        for n in 1..=precision {
            let mut acc = T::zero();
            for k in 1..=n.min(self.coeffs.len() - 1) {
                let a = &self.coeffs[k];
                if !a.is_zero() && !out[n - k].is_zero() {
                    acc.add_mul(a, &out[n - k]);
                }
            }
            out.push(-acc.mul_ref(&lead_inv));
        }
        Ok(Self::from_coeffs(-v, out, -v + precision as i64))
    }

    /// `self / other`. The result has valuation `self.valuation - other.valuation`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.invert()?))
    }

    /// Multiplies in place by `1 - sign*q^k` for `k > 0`; the order is unchanged.
    pub fn mul_one_minus(&mut self, sign: i64, k: i64) {
        debug_assert!(k > 0);
        if self.is_zero() {
            return;
        }
        let k = k as usize;
        let n = self.coeffs.len();
        for i in (k..n).rev() {
            let prev = self.coeffs[i - k].clone();
            if prev.is_zero() {
                continue;
            }
            if sign == 1 {
                self.coeffs[i].sub_assign_ref(&prev);
            } else {
                self.coeffs[i].add_assign_ref(&prev);
            }
        }
    }

    /// Divides in place by `1 - sign*q^k` for `k > 0`; the order is unchanged.
    pub fn div_one_minus(&mut self, sign: i64, k: i64) {
        debug_assert!(k > 0);
        if self.is_zero() {
            return;
        }
        let k = k as usize;
        for i in k..self.coeffs.len() {
            let prev = self.coeffs[i - k].clone();
            if prev.is_zero() {
                continue;
            }
            if sign == 1 {
                self.coeffs[i].add_assign_ref(&prev);
            } else {
                self.coeffs[i].sub_assign_ref(&prev);
            }
        }
    }

    /// Compares coefficients for every exponent `<= n`.
    ///
    /// Returns `Ok(None)` on agreement and the lowest disagreeing exponent
    /// otherwise.
    pub fn compare_to_order(&self, other: &Self, n: i64) -> Result<Option<Mismatch<T>>> {
        for s in [self, other] {
            if s.order < n {
                return Err(Error::InsufficientOrder {
                    needed: n,
                    available: s.order,
                });
            }
        }
        let lo = match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ok(None),
            (false, true) => self.valuation,
            (true, false) => other.valuation,
            (false, false) => self.valuation.min(other.valuation),
        };
        for e in lo..=n {
            let (a, b) = (self.get(e), other.get(e));
            if a != b {
                return Ok(Some(Mismatch {
                    exponent: e,
                    lhs: a,
                    rhs: b,
                }));
            }
        }
        Ok(None)
    }

    pub fn equal_to_order(&self, other: &Self, n: i64) -> Result<bool> {
        Ok(self.compare_to_order(other, n)?.is_none())
    }

    /// Human-readable form showing at most `max_terms` nonzero terms.
    pub fn display_terms(&self, max_terms: usize) -> String {
        let total = self.terms().count();
        let mut out = String::new();
        for (i, (e, c)) in self.terms().take(max_terms).enumerate() {
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, text),
            };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let unit = magnitude == "1";
            let coeff = if magnitude.contains('/') && e != 0 {
                format!("({magnitude})")
            } else {
                magnitude
            };
            match e {
                0 => out.push_str(&coeff),
                _ => {
                    if !unit {
                        out.push_str(&coeff);
                    }
                    out.push('q');
                    if e != 1 {
                        out.push_str(&format!("^{e}"));
                    }
                }
            }
        }
        if total > max_terms {
            out.push_str(&format!(" … (+{} more)", total - max_terms));
        }
        if out.is_empty() {
            out.push('0');
        }
        out.push_str(&format!(" + O(q^{})", self.order + 1));
        out
    }
}

impl<T: Coeff> fmt::Display for QSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_terms(20))
    }
}

/// Builds a series through `target` by calling `build` with a working order
/// and raising it until the result is known far enough.
///
/// Compositions with negative valuations or monomial shifts lose a bounded
/// amount of order; the shortfall of one attempt sizes the next.
pub fn build_to_order<T, F>(target: i64, mut build: F) -> Result<QSeries<T>>
where
    T: Coeff,
    F: FnMut(i64) -> Result<QSeries<T>>,
{
    let mut working = target;
    let mut last = None;
    for _ in 0..12 {
        let s = build(working)?;
        if s.order() >= target {
            return Ok(s.truncate(target));
        }
        working += (target - s.order()).max(4);
        last = Some(s.order());
    }
    Err(Error::InsufficientOrder {
        needed: target,
        available: last.unwrap_or(i64::MIN),
    })
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl<T: Coeff> std::ops::$tr<&QSeries<T>> for &QSeries<T> {
            type Output = QSeries<T>;
            fn $method(self, rhs: &QSeries<T>) -> QSeries<T> {
                QSeries::$method(self, rhs)
            }
        }

        impl<T: Coeff> std::ops::$tr for QSeries<T> {
            type Output = QSeries<T>;
            fn $method(self, rhs: QSeries<T>) -> QSeries<T> {
                QSeries::$method(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl<T: Coeff> std::ops::Neg for QSeries<T> {
    type Output = QSeries<T>;
    fn neg(self) -> QSeries<T> {
        QSeries::neg(&self)
    }
}

impl<T: Coeff> std::ops::Neg for &QSeries<T> {
    type Output = QSeries<T>;
    fn neg(self) -> QSeries<T> {
        QSeries::neg(self)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    valuation: i64,
    order: i64,
    coeffs: Vec<String>,
}

impl<T: Coeff> Serialize for QSeries<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            valuation: self.valuation,
            order: self.order,
            coeffs: self.coeffs.iter().map(Coeff::to_text).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, T: Coeff> Deserialize<'de> for QSeries<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(deserializer)?;
        QSeries::try_from_repr(repr).map_err(D::Error::custom)
    }
}

impl<T: Coeff> QSeries<T> {
    fn try_from_repr(repr: SeriesRepr) -> Result<Self> {
        let span = repr.order - repr.valuation + 1;
        if !repr.coeffs.is_empty() && span != repr.coeffs.len() as i64 {
            return Err(Error::Decode(format!(
                "{} coefficients listed for exponents {}..={}",
                repr.coeffs.len(),
                repr.valuation,
                repr.order
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| T::from_text(s).ok_or_else(|| Error::Decode(format!("bad coefficient `{s}`"))))
            .collect::<Result<Vec<T>>>()?;
        Ok(Self::from_coeffs(repr.valuation, coeffs, repr.order))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("series encoding is infallible")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let repr: SeriesRepr =
            serde_json::from_value(value.clone()).map_err(|e| Error::Decode(e.to_string()))?;
        Self::try_from_repr(repr)
    }
}
