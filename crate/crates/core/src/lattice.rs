//! Signed sums of `q^E(v)` over cones of `Z^n` for a quadratic exponent
//!
//! `E(v) = Σ_i diag_i C(v_i, 2) + Σ_{i<j} cross_ij v_i v_j + Σ_i lin_i v_i + constant`
//!
//! with term sign `Π_i (-s_i)^(v_i)`. Hecke-type double and triple sums are
//! octant sums of such forms; the shift identities also need restrictions,
//! translations and full-line sums.

use crate::coeff::{sign_pow, Coeff};
use crate::error::{Error, Result};
use crate::series::QSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    diag: Vec<i64>,
    /// Symmetric, zero diagonal.
    cross: Vec<Vec<i64>>,
    lin: Vec<i64>,
    constant: i64,
    /// Signs `s_i` of the monomial arguments.
    signs: Vec<i64>,
    /// Overall sign in front of the sum.
    sign: i64,
}

fn binom2(v: i64) -> i64 {
    v * (v - 1) / 2
}

impl QuadForm {
    /// `cross` is read above the diagonal only.
    pub fn new(diag: Vec<i64>, cross: Vec<Vec<i64>>, lin: Vec<i64>, constant: i64, signs: Vec<i64>) -> Self {
        let n = diag.len();
        assert!(lin.len() == n && signs.len() == n && cross.len() == n, "form dimensions disagree");
        let mut sym = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                sym[i][j] = cross[i][j];
                sym[j][i] = cross[i][j];
            }
        }
        QuadForm {
            diag,
            cross: sym,
            lin,
            constant,
            signs,
            sign: 1,
        }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Signed coefficient and exponent of the term at `v`.
    pub fn eval(&self, v: &[i64]) -> (i64, i64) {
        let n = self.dim();
        let mut e = self.constant;
        let mut s = self.sign;
        for i in 0..n {
            e += self.diag[i] * binom2(v[i]) + self.lin[i] * v[i];
            for j in i + 1..n {
                e += self.cross[i][j] * v[i] * v[j];
            }
            s *= sign_pow(-self.signs[i], v[i]);
        }
        (s, e)
    }

    /// Fixes coordinate `i` to `k`, leaving a form in the other coordinates.
    pub fn restrict(&self, i: usize, k: i64) -> QuadForm {
        let keep: Vec<usize> = (0..self.dim()).filter(|&j| j != i).collect();
        QuadForm {
            diag: keep.iter().map(|&j| self.diag[j]).collect(),
            cross: keep
                .iter()
                .map(|&a| keep.iter().map(|&b| self.cross[a][b]).collect())
                .collect(),
            lin: keep.iter().map(|&j| self.lin[j] + self.cross[i][j] * k).collect(),
            constant: self.constant + self.diag[i] * binom2(k) + self.lin[i] * k,
            signs: keep.iter().map(|&j| self.signs[j]).collect(),
            sign: self.sign * sign_pow(-self.signs[i], k),
        }
    }

    /// The form `w -> E(w + h)`, with the matching sign.
    pub fn translate(&self, h: &[i64]) -> QuadForm {
        let n = self.dim();
        let (s, e) = self.eval(h);
        let lin = (0..n)
            .map(|i| {
                self.lin[i] + self.diag[i] * h[i] + (0..n).map(|j| self.cross[i][j] * h[j]).sum::<i64>()
            })
            .collect();
        QuadForm {
            lin,
            constant: e,
            sign: s,
            ..self.clone()
        }
    }

    /// The form `w -> E(-1 - w)`, mapping the negative octant onto the
    /// nonnegative one.
    pub fn reflect(&self) -> QuadForm {
        let n = self.dim();
        let ones = vec![-1; n];
        let (s, e) = self.eval(&ones);
        let lin = (0..n)
            .map(|i| 2 * self.diag[i] - self.lin[i] + (0..n).map(|j| self.cross[i][j]).sum::<i64>())
            .collect();
        // (-s)^(-1-w) = (-s)^-1 (-s)^w and (-s)^-1 = -s
        QuadForm {
            lin,
            constant: e,
            sign: s,
            ..self.clone()
        }
    }

    fn check_cone(&self) -> Result<()> {
        let n = self.dim();
        if self.diag.iter().any(|&d| d < 1) {
            return Err(Error::Precondition("octant sums need positive diagonal coefficients".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if self.cross[i][j] < 0 {
                    return Err(Error::Precondition("octant sums need nonnegative cross coefficients".into()));
                }
            }
        }
        Ok(())
    }
}

/// `d C(v,2) + l v`.
fn axis(d: i64, l: i64, v: i64) -> i64 {
    d * binom2(v) + l * v
}

/// Minimum of `axis(d, l, v)` over `v >= 0`, for `d >= 1`.
fn axis_min(d: i64, l: i64) -> i64 {
    let mut v = ((0.5 - l as f64 / d as f64).floor() as i64).max(0);
    while v > 0 && axis(d, l, v - 1) <= axis(d, l, v) {
        v -= 1;
    }
    while axis(d, l, v + 1) < axis(d, l, v) {
        v += 1;
    }
    axis(d, l, v)
}

struct Walker<'a> {
    form: &'a QuadForm,
    bound: i64,
    out: &'a mut Vec<(i64, i64)>,
}

impl Walker<'_> {
    fn walk(&mut self, i: usize, fixed: i64, lin: &mut Vec<i64>, sign: i64) {
        let n = self.form.dim();
        if i == n {
            self.out.push((fixed, sign));
            return;
        }
        let d = self.form.diag[i];
        let rest: i64 = (i + 1..n).map(|j| axis_min(self.form.diag[j], lin[j])).sum();
        let li = lin[i];
        let s = -self.form.signs[i];
        let mut v = 0;
        loop {
            let val = fixed + axis(d, li, v) + rest;
            if val > self.bound {
                if axis(d, li, v + 1) >= axis(d, li, v) {
                    break;
                }
            } else {
                let cross = &self.form.cross[i][i + 1..];
                lin[i + 1..].iter_mut().zip(cross).for_each(|(l, c)| *l += c * v);
                self.walk(i + 1, fixed + axis(d, li, v), lin, sign * sign_pow(s, v));
                lin[i + 1..].iter_mut().zip(cross).for_each(|(l, c)| *l -= c * v);
            }
            v += 1;
        }
    }
}

fn octant_terms(form: &QuadForm, order: i64) -> Result<Vec<(i64, i64)>> {
    form.check_cone()?;
    let mut out = Vec::new();
    let mut lin = form.lin.clone();
    Walker {
        form,
        bound: order,
        out: &mut out,
    }
    .walk(0, form.constant, &mut lin, form.sign);
    Ok(out)
}

/// Sum over `v_i >= 0` for every `i`, through `q^order`.
pub fn octant_sum<T: Coeff>(form: &QuadForm, order: i64) -> Result<QSeries<T>> {
    Ok(QSeries::from_int_terms(octant_terms(form, order)?, 1, order))
}

/// Sum over `v_i < 0` for every `i`, through `q^order`.
pub fn negative_octant_sum<T: Coeff>(form: &QuadForm, order: i64) -> Result<QSeries<T>> {
    octant_sum(&form.reflect(), order)
}

/// `(Σ_{v >= 0} + sign Σ_{v < 0})` in one pass.
pub fn cone_sum<T: Coeff>(form: &QuadForm, negative_sign: i64, order: i64) -> Result<QSeries<T>> {
    let mut terms = octant_terms(form, order)?;
    terms.extend(
        octant_terms(&form.reflect(), order)?
            .into_iter()
            .map(|(e, c)| (e, c * negative_sign)),
    );
    Ok(QSeries::from_int_terms(terms, 1, order))
}

/// Sum of a one-dimensional form over all of `Z`, through `q^order`.
pub fn line_sum<T: Coeff>(form: &QuadForm, order: i64) -> Result<QSeries<T>> {
    if form.dim() != 1 {
        return Err(Error::Precondition("line sums need a one-dimensional form".into()));
    }
    cone_sum(form, 1, order)
}
