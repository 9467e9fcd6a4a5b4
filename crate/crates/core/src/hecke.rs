//! Hecke-type double sums
//!
//! `f_{a,b,c}(x,y,q) = (Σ_{r,s>=0} - Σ_{r,s<0}) (-1)^(r+s) x^r y^s q^(a C(r,2) + b r s + c C(s,2))`
//!
//! and triple sums
//!
//! `g_{a,b,c,d,e,f}(x,y,z,q) = (Σ_{r,s,t>=0} + Σ_{r,s,t<0}) (-1)^(r+s+t) x^r y^s z^t q^(...)`,
//!
//! with their shift and flip functional equations.

use std::fmt;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::lattice::{cone_sum, line_sum, QuadForm};
use crate::monomial::QMonomial;
use crate::report::{run_cases, VerificationReport};
use crate::series::QSeries;
use crate::theta::j;

/// `(a, b, c)` of a double sum, all positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HeckeParams2 {
    a: i64,
    b: i64,
    c: i64,
}

impl HeckeParams2 {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a < 1 || b < 1 || c < 1 {
            return Err(Error::Precondition(format!(
                "double-sum parameters must be positive, got ({a},{b},{c})"
            )));
        }
        Ok(HeckeParams2 { a, b, c })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn form(&self, x: QMonomial, y: QMonomial) -> QuadForm {
        QuadForm::new(
            vec![self.a, self.c],
            vec![vec![0, self.b], vec![0, 0]],
            vec![x.exp(), y.exp()],
            0,
            vec![x.sign(), y.sign()],
        )
    }
}

impl fmt::Display for HeckeParams2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

/// `(a, b, c, d, e, f)` of a triple sum, all positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HeckeParams3 {
    coef: [i64; 6],
}

impl HeckeParams3 {
    pub fn new(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64) -> Result<Self> {
        let coef = [a, b, c, d, e, f];
        if coef.iter().any(|&k| k < 1) {
            return Err(Error::Precondition(format!(
                "triple-sum parameters must be positive, got {coef:?}"
            )));
        }
        Ok(HeckeParams3 { coef })
    }

    /// `[a, b, c, d, e, f]`.
    pub fn coefficients(&self) -> [i64; 6] {
        self.coef
    }

    pub fn form(&self, x: QMonomial, y: QMonomial, z: QMonomial) -> QuadForm {
        let [a, b, c, d, e, f] = self.coef;
        QuadForm::new(
            vec![a, c, f],
            vec![vec![0, b, d], vec![0, 0, e], vec![0, 0, 0]],
            vec![x.exp(), y.exp(), z.exp()],
            0,
            vec![x.sign(), y.sign(), z.sign()],
        )
    }
}

impl fmt::Display for HeckeParams3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e, g] = self.coef;
        write!(f, "{a},{b},{c},{d},{e},{g}")
    }
}

/// `1` for `r >= 0`, `-1` otherwise.
pub fn sg(r: i64) -> i64 {
    if r >= 0 {
        1
    } else {
        -1
    }
}

/// `(sg(r) + sg(s)) / 2`.
pub fn sg2(r: i64, s: i64) -> i64 {
    (sg(r) + sg(s)) / 2
}

fn binom2(v: i64) -> i64 {
    v * (v - 1) / 2
}

/// `f_{a,b,c}(x, y, q)` through `q^order`.
pub fn hecke_f<T: Coeff>(p: HeckeParams2, x: QMonomial, y: QMonomial, order: i64) -> QSeries<T> {
    cone_sum(&p.form(x, y), -1, order).expect("validated parameters give a positive cone")
}

/// `g_{a,b,c,d,e,f}(x, y, z, q)` through `q^order`.
pub fn hecke_g<T: Coeff>(p: HeckeParams3, x: QMonomial, y: QMonomial, z: QMonomial, order: i64) -> QSeries<T> {
    cone_sum(&p.form(x, y, z), 1, order).expect("validated parameters give a positive cone")
}

/// `m * inner`, with `inner` built through the order that makes the product
/// known through `q^order`.
pub(crate) fn scaled<T: Coeff>(m: QMonomial, order: i64, inner: impl FnOnce(i64) -> Result<QSeries<T>>) -> Result<QSeries<T>> {
    Ok(m.times(&inner(order - m.exp())?))
}

/// Indices of `Σ_{m=0}^{n-1}` and the sign of the sum, using
/// `Σ_{m=0}^{n-1} = -Σ_{m=n}^{-1}` when `n < 0`.
pub fn signed_range(n: i64) -> (std::ops::Range<i64>, i64) {
    if n >= 0 {
        (0..n, 1)
    } else {
        (n..0, -1)
    }
}

/// `f(x, y) = sign q^shift f(x', y')`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flip2 {
    pub prefactor: QMonomial,
    pub x: QMonomial,
    pub y: QMonomial,
}

/// `f_{a,b,c}(x,y,q) = -q^(a+b+c)/(xy) f_{a,b,c}(q^(2a+b)/x, q^(2c+b)/y, q)`.
pub fn f_flip(p: HeckeParams2, x: QMonomial, y: QMonomial) -> Flip2 {
    let (a, b, c) = (p.a, p.b, p.c);
    Flip2 {
        prefactor: -(QMonomial::q_pow(a + b + c) / (x * y)),
        x: QMonomial::q_pow(2 * a + b) / x,
        y: QMonomial::q_pow(2 * c + b) / y,
    }
}

pub fn f_flip_sides<T: Coeff>(
    p: HeckeParams2,
    x: QMonomial,
    y: QMonomial,
    order: i64,
) -> Result<(QSeries<T>, QSeries<T>)> {
    let fl = f_flip(p, x, y);
    let rhs = scaled(fl.prefactor, order, |n| Ok(hecke_f(p, fl.x, fl.y, n)))?;
    Ok((hecke_f(p, x, y, order), rhs))
}

/// The pieces of the `(l, k)` shift of a double sum:
/// `f(x, y) = shifted + x_terms + y_terms`.
#[derive(Clone, Debug, PartialEq)]
pub struct FShift<T: Coeff> {
    pub prefactor: QMonomial,
    pub x: QMonomial,
    pub y: QMonomial,
    /// `prefactor * f(x', y')`.
    pub shifted: QSeries<T>,
    /// `Σ_{m=0}^{l-1} (-x)^m q^(a C(m,2)) j(q^(mb) y; q^c)`.
    pub x_terms: QSeries<T>,
    /// `Σ_{m=0}^{k-1} (-y)^m q^(c C(m,2)) j(q^(mb) x; q^a)`.
    pub y_terms: QSeries<T>,
}

impl<T: Coeff> FShift<T> {
    pub fn total(&self) -> QSeries<T> {
        self.shifted.add(&self.x_terms).add(&self.y_terms)
    }
}

/// `f_{a,b,c}(x,y,q) = (-x)^l (-y)^k q^(a C(l,2) + b l k + c C(k,2)) f(q^(al+bk) x, q^(bl+ck) y, q) + ...`
/// for any integers `l`, `k`.
pub fn f_shift<T: Coeff>(
    p: HeckeParams2,
    x: QMonomial,
    y: QMonomial,
    l: i64,
    k: i64,
    order: i64,
) -> Result<FShift<T>> {
    let (a, b, c) = (p.a, p.b, p.c);
    let prefactor = (-x).pow(l) * (-y).pow(k) * QMonomial::q_pow(a * binom2(l) + b * l * k + c * binom2(k));
    let nx = x.q_shift(a * l + b * k);
    let ny = y.q_shift(b * l + c * k);
    let shifted = scaled(prefactor, order, |n| Ok(hecke_f(p, nx, ny, n)))?;
    let edge = |count: i64, u: QMonomial, w: QMonomial, du: i64, dw: i64| -> Result<QSeries<T>> {
        let (range, sign) = signed_range(count);
        let mut acc = QSeries::zero(order);
        for m in range {
            let coef = (-u).pow(m) * QMonomial::q_pow(du * binom2(m));
            acc = acc.add(&scaled(coef, order, |n| Ok(j(w.q_shift(m * b), dw, n)))?);
        }
        Ok(acc.scale_i64(sign))
    };
    Ok(FShift {
        prefactor,
        x: nx,
        y: ny,
        shifted,
        x_terms: edge(l, x, y, a, c)?,
        y_terms: edge(k, y, x, c, a)?,
    })
}

/// The pieces of the `(R, S, T)` shift of a triple sum:
/// `g(x, y, z) = shifted + Σ f_terms - Σ theta_terms`.
#[derive(Clone, Debug, PartialEq)]
pub struct GShift<T: Coeff> {
    pub prefactor: QMonomial,
    pub args: [QMonomial; 3],
    pub shifted: QSeries<T>,
    /// Sums over `r`, `s` and `t` of double sums.
    pub f_terms: [QSeries<T>; 3],
    /// Double sums over `(r,t)`, `(s,t)` and `(r,s)` of theta functions.
    pub theta_terms: [QSeries<T>; 3],
}

impl<T: Coeff> GShift<T> {
    pub fn total(&self) -> QSeries<T> {
        let mut acc = self.shifted.clone();
        for f in &self.f_terms {
            acc = acc.add(f);
        }
        for t in &self.theta_terms {
            acc = acc.sub(t);
        }
        acc
    }
}

/// Shift of a triple sum by `(R, S, T)`. Negative shifts use the
/// `Σ_{m=0}^{n-1} = -Σ_{m=n}^{-1}` convention in every finite sum.
#[allow(clippy::too_many_arguments)]
pub fn g_shift<T: Coeff>(
    p: HeckeParams3,
    x: QMonomial,
    y: QMonomial,
    z: QMonomial,
    rr: i64,
    ss: i64,
    tt: i64,
    order: i64,
) -> Result<GShift<T>> {
    let [a, b, c, d, e, f] = p.coef;
    let q = QMonomial::q_pow;
    let expo = a * binom2(rr) + b * rr * ss + c * binom2(ss) + d * rr * tt + e * ss * tt + f * binom2(tt);
    let prefactor = (-x).pow(rr) * (-y).pow(ss) * (-z).pow(tt) * q(expo);
    let args = [
        x.q_shift(a * rr + b * ss + d * tt),
        y.q_shift(b * rr + c * ss + e * tt),
        z.q_shift(d * rr + e * ss + f * tt),
    ];
    let shifted = scaled(prefactor, order, |n| Ok(hecke_g(p, args[0], args[1], args[2], n)))?;

    let p2 = |u, v, w| HeckeParams2::new(u, v, w);
    let single = |count: i64, u: QMonomial, du: i64, pf: HeckeParams2, args: &dyn Fn(i64) -> (QMonomial, QMonomial)| {
        let (range, sign) = signed_range(count);
        let mut acc = QSeries::zero(order);
        for m in range {
            let (fx, fy) = args(m);
            let coef = (-u).pow(m) * q(du * binom2(m));
            acc = acc.add(&scaled(coef, order, |n| Ok(hecke_f(pf, fx, fy, n)))?);
        }
        Ok::<_, Error>(acc.scale_i64(sign))
    };
    let f_terms = [
        single(rr, x, a, p2(c, e, f)?, &|r| (y.q_shift(b * r), z.q_shift(d * r)))?,
        single(ss, y, c, p2(a, d, f)?, &|s| (x.q_shift(b * s), z.q_shift(e * s)))?,
        single(tt, z, f, p2(a, b, c)?, &|t| (x.q_shift(d * t), y.q_shift(e * t)))?,
    ];

    // Σ_m Σ_n (-u)^m (-v)^n q^(du C(m,2) + cross m n + dv C(n,2)) j(q^(bm m + bn n) w; q^base)
    #[allow(clippy::too_many_arguments)]
    let double = |cm: i64, cn: i64, u: QMonomial, v: QMonomial, du: i64, dv: i64, cross: i64, w: QMonomial, bm: i64, bn: i64, base: i64| {
        let (rm, sm) = signed_range(cm);
        let (rn, sn) = signed_range(cn);
        let mut acc = QSeries::zero(order);
        for m in rm {
            for n in rn.clone() {
                let coef = (-u).pow(m) * (-v).pow(n) * q(du * binom2(m) + cross * m * n + dv * binom2(n));
                acc = acc.add(&scaled(coef, order, |o| Ok(j(w.q_shift(bm * m + bn * n), base, o)))?);
            }
        }
        Ok::<_, Error>(acc.scale_i64(sm * sn))
    };
    let theta_terms = [
        double(rr, tt, x, z, a, f, d, y, b, e, c)?,
        double(ss, tt, y, z, c, f, e, x, b, d, a)?,
        double(rr, ss, x, y, a, c, b, z, d, e, f)?,
    ];
    Ok(GShift {
        prefactor,
        args,
        shifted,
        f_terms,
        theta_terms,
    })
}

/// `g(x, y, z) = prefactor g(args)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flip3 {
    pub prefactor: QMonomial,
    pub args: [QMonomial; 3],
}

/// `g(x,y,z) = -q^(a+b+c+d+e+f)/(xyz) g(q^(2a+b+d)/x, q^(b+2c+e)/y, q^(d+e+2f)/z)`.
pub fn g_flip(p: HeckeParams3, x: QMonomial, y: QMonomial, z: QMonomial) -> Flip3 {
    let [a, b, c, d, e, f] = p.coef;
    let q = QMonomial::q_pow;
    Flip3 {
        prefactor: -(q(a + b + c + d + e + f) / (x * y * z)),
        args: [q(2 * a + b + d) / x, q(b + 2 * c + e) / y, q(d + e + 2 * f) / z],
    }
}

pub fn g_flip_sides<T: Coeff>(
    p: HeckeParams3,
    x: QMonomial,
    y: QMonomial,
    z: QMonomial,
    order: i64,
) -> Result<(QSeries<T>, QSeries<T>)> {
    let fl = g_flip(p, x, y, z);
    let rhs = scaled(fl.prefactor, order, |n| {
        Ok(hecke_g(p, fl.args[0], fl.args[1], fl.args[2], n))
    })?;
    Ok((hecke_g(p, x, y, z, order), rhs))
}

/// Both sides of the finite rearrangement
///
/// `Σ_{sg(r)=sg(s)=sg(t)} c_{r,s,t} - Σ_{sg(r)=sg(s)=sg(t)} c_{r+R,s+S,t+T}`
/// `= Σ_{r=0}^{R-1} Σ_{sg(s)=sg(t)} sg(s) c_{r,s,t} + (same for s, t)`
/// `- Σ_{r<R} Σ_{t<T} Σ_{s in Z} c_{r,s,t} - (same for (s,t), (r,s))`,
///
/// every piece summed directly over the lattice.
#[allow(clippy::too_many_arguments)]
pub fn generic_shift_sides<T: Coeff>(
    p: HeckeParams3,
    x: QMonomial,
    y: QMonomial,
    z: QMonomial,
    rr: i64,
    ss: i64,
    tt: i64,
    order: i64,
) -> Result<(QSeries<T>, QSeries<T>)> {
    if rr < 0 || ss < 0 || tt < 0 {
        return Err(Error::Precondition(format!(
            "the finite rearrangement needs R, S, T >= 0, got ({rr},{ss},{tt})"
        )));
    }
    let form = p.form(x, y, z);
    let lhs = cone_sum::<T>(&form, 1, order)?.sub(&cone_sum(&form.translate(&[rr, ss, tt]), 1, order)?);
    let mut rhs = QSeries::zero(order);
    for (axis, count) in [(0, rr), (1, ss), (2, tt)] {
        for v in 0..count {
            rhs = rhs.add(&cone_sum(&form.restrict(axis, v), -1, order)?);
        }
    }
    // the remaining coordinate after fixing two; indices shift after the first restriction
    for ((ax1, n1), (ax2, n2)) in [((0, rr), (2, tt)), ((1, ss), (2, tt)), ((0, rr), (1, ss))] {
        for v1 in 0..n1 {
            let once = form.restrict(ax1, v1);
            for v2 in 0..n2 {
                rhs = rhs.sub(&line_sum(&once.restrict(ax2 - 1, v2), order)?);
            }
        }
    }
    Ok((lhs, rhs))
}

#[allow(clippy::too_many_arguments)]
pub fn generic_shift_check<T: Coeff>(
    p: HeckeParams3,
    x: QMonomial,
    y: QMonomial,
    z: QMonomial,
    rr: i64,
    ss: i64,
    tt: i64,
    order: i64,
) -> Result<VerificationReport> {
    run_cases(
        "generic-shift",
        order,
        [(format!("{p}; {x}, {y}, {z}; R,S,T={rr},{ss},{tt}"), || {
            generic_shift_sides::<T>(p, x, y, z, rr, ss, tt, order)
        })],
    )
}
