//! Appell-Lerch and theta expansions of Hecke-type double sums.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::appell::{appell_m, AppellArgs};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::hecke::{hecke_f, HeckeParams2};
use crate::monomial::QMonomial;
use crate::report::{run_cases, VerificationReport};
use crate::series::{build_to_order, QSeries};
use crate::theta::{j_reduce, jtheta, ThetaArg, ThetaQuotient};

/// `total = appell_part - theta_part`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionResult<T: Coeff> {
    pub appell_part: QSeries<T>,
    pub theta_part: QSeries<T>,
    pub total: QSeries<T>,
}

impl<T: Coeff> ExpansionResult<T> {
    fn new(appell_part: QSeries<T>, theta_part: QSeries<T>) -> Self {
        let total = appell_part.sub(&theta_part);
        ExpansionResult {
            appell_part,
            theta_part,
            total,
        }
    }
}

/// A monomial whose exponent is tracked exactly until it is evaluated.
#[derive(Clone, Debug)]
struct BigMono {
    sign: i64,
    exp: BigInt,
}

impl BigMono {
    fn q(exp: impl Into<BigInt>) -> Self {
        BigMono { sign: 1, exp: exp.into() }
    }

    fn of(m: QMonomial) -> Self {
        BigMono {
            sign: m.sign(),
            exp: m.exp().into(),
        }
    }

    fn neg(self) -> Self {
        BigMono { sign: -self.sign, ..self }
    }

    fn mul(self, other: &BigMono) -> Self {
        BigMono {
            sign: self.sign * other.sign,
            exp: self.exp + &other.exp,
        }
    }

    fn pow(&self, k: i64) -> Self {
        BigMono {
            sign: if k.rem_euclid(2) == 0 { 1 } else { self.sign },
            exp: &self.exp * k,
        }
    }

    fn to_mono(&self) -> Result<QMonomial> {
        let e = self.exp.to_i64().ok_or_else(|| Error::ExponentOverflow(self.exp.to_string()))?;
        Ok(QMonomial::new(self.sign, e))
    }
}

fn binom2(v: &BigInt) -> BigInt {
    v * (v - 1) / 2
}

/// `j(u; q^a) m(v, q^M, z)` through `q^order`.
fn theta_times_m<T: Coeff>(u: QMonomial, a: i64, args: AppellArgs, order: i64) -> Result<QSeries<T>> {
    let theta = ThetaArg::new(u, a);
    if theta.vanishes() {
        // the Appell-Lerch factor must still be defined
        args.validate()?;
        return Ok(QSeries::zero(order));
    }
    let (pre, red) = j_reduce(theta);
    build_to_order(order, |w| {
        let inner = jtheta::<T>(red, w - pre.exp()).mul(&appell_m(args, w - pre.exp())?);
        Ok(pre.times(&inner))
    })
}

/// Checks `ac < b^2`, `a | b` and `c | b`.
fn check_admissible(p: HeckeParams2) -> Result<()> {
    let (a, b, c) = (p.a(), p.b(), p.c());
    if a * c >= b * b || b % a != 0 || b % c != 0 {
        return Err(Error::Precondition(format!(
            "expansion needs ac < b^2 with a | b and c | b, got ({a},{b},{c})"
        )));
    }
    Ok(())
}

/// `h_{a,b,c}(x, y, q, z1, z0)`.
pub fn h_generic<T: Coeff>(
    p: HeckeParams2,
    x: QMonomial,
    y: QMonomial,
    z1: QMonomial,
    z0: QMonomial,
    order: i64,
) -> Result<QSeries<T>> {
    check_admissible(p)?;
    let (a, b, c) = (p.a(), p.b(), p.c());
    let (ba, bc) = (b / a, b / c);
    let ma = b * b / a - c;
    let mc = b * b / c - a;
    let big = |v: i64| -> BigInt { BigInt::from(v) };
    let u = BigMono::q(big(a) * binom2(&big(ba + 1)) - c)
        .neg()
        .mul(&BigMono::of(-y))
        .mul(&BigMono::of(-x).pow(-ba))
        .to_mono()?;
    let v = BigMono::q(big(c) * binom2(&big(bc + 1)) - a)
        .neg()
        .mul(&BigMono::of(-x))
        .mul(&BigMono::of(-y).pow(-bc))
        .to_mono()?;
    let first = theta_times_m(x, a, AppellArgs::new(u, ma, z1), order)?;
    let second = theta_times_m(y, c, AppellArgs::new(v, mc, z0), order)?;
    Ok(first.add(&second))
}

type ThetaTerm = ((i64, i64, i64), ThetaQuotient);

/// The theta-quotient terms of the general expansion, one per `(d, e, f)`.
fn theta_terms(p: HeckeParams2, x: QMonomial, y: QMonomial) -> Result<Vec<ThetaTerm>> {
    let (a, b, c) = (p.a(), p.b(), p.c());
    let big = |v: i64| -> BigInt { BigInt::from(v) };
    let (ba, bc) = (b / a, b / c);
    let ma = big(b * b / a - c);
    let mc = big(b * b / c - a);
    let period: BigInt = big(b) * (big(ba * bc) - big(1));
    let period_i = period.to_i64().ok_or_else(|| Error::ExponentOverflow(period.to_string()))?;
    let wide = (big(b * b / a) * (big(ba * bc) - big(1)))
        .to_i64()
        .ok_or_else(|| Error::ExponentOverflow("theta modulus".into()))?;
    // b^3 (b - a) / (2 a^2 c)
    let tail = big(b).pow(3) * (big(b) - a) / (big(2) * big(a).pow(2) * c);
    let cb = big(c) * binom2(&big(bc));
    let ab = big(a) * binom2(&big(ba));
    let mx = BigMono::of(-x);
    let my = BigMono::of(-y);
    let yy = BigMono::of(y);
    let mut out = Vec::new();
    for d in 0..bc {
        for e in 0..ba {
            for f in 0..ba {
                let (bd, be, bf) = (big(d), big(e), big(f));
                let coef = BigMono::q(&ma * binom2(&(&bd + 1)) + &mc * binom2(&(&be + &bf + 1)) + big(a) * binom2(&bf))
                    .mul(&mx.pow(f));
                let j1 = BigMono::q(&ma * (&bd + 1) + big(b) * &bf).mul(&yy);
                let j2 = BigMono::q(&period * (&be + &bf + 1) - &ma * (&bd + 1) + &tail)
                    .mul(&mx.pow(ba))
                    .mul(&yy.pow(-1));
                let j3 = BigMono::q(&mc * (&be + 1) + &ma * (&bd + 1) - &cb - &ab)
                    .mul(&mx.pow(1 - ba))
                    .mul(&my.pow(1 - bc));
                let d1 = BigMono::q(&mc * (&be + 1) - &cb).mul(&mx).mul(&my.pow(-bc));
                let d2 = BigMono::q(&ma * (&bd + 1) - &ab).mul(&mx.pow(-ba)).mul(&my);
                let tq = ThetaQuotient::new(coef.to_mono()?)
                    .j(j1.to_mono()?, b * b / a)
                    .j(j2.to_mono()?, wide)
                    .eta(period_i, 3)
                    .j(j3.to_mono()?, period_i)
                    .over_j(d1.to_mono()?, period_i)
                    .over_j(d2.to_mono()?, period_i);
                out.push(((d, e, f), tq));
            }
        }
    }
    Ok(out)
}

/// Sums theta quotients, attaching the index of any failing term.
fn sum_quotients<T: Coeff, L: std::fmt::Debug>(terms: &[(L, ThetaQuotient)], order: i64) -> Result<QSeries<T>> {
    let mut acc = QSeries::zero(order);
    for (label, tq) in terms {
        let s = tq.eval(order).map_err(|e| e.context(format!("theta term {label:?}")))?;
        acc = acc.add(&s);
    }
    Ok(acc)
}

/// `f_{a,b,c}(x,y,q) = h_{a,b,c}(x,y,q,-1,-1) - θ_{a,b,c}(x,y,q) / (J̄_{0,b²/a-c} J̄_{0,b²/c-a})`
/// for `ac < b^2`, `a | b`, `c | b`.
pub fn thm_main_expansion<T: Coeff>(
    p: HeckeParams2,
    x: QMonomial,
    y: QMonomial,
    order: i64,
) -> Result<ExpansionResult<T>> {
    check_admissible(p)?;
    let (a, b, c) = (p.a(), p.b(), p.c());
    let minus_one = QMonomial::neg_q_pow(0);
    let appell = h_generic(p, x, y, minus_one, minus_one, order)?;
    let terms: Vec<_> = theta_terms(p, x, y)?
        .into_iter()
        .map(|(k, tq)| (k, tq.over_j(minus_one, b * b / a - c).over_j(minus_one, b * b / c - a)))
        .collect();
    let theta = sum_quotients(&terms, order)?;
    Ok(ExpansionResult::new(appell, theta))
}

/// `f_{1,2,1}(x,y,q) = j(y;q) m(q^2 x/y^2, q^3, -1) + j(x;q) m(q^2 y/x^2, q^3, -1)`
/// `- y J_3^3 j(-x/y;q) j(q^2 xy;q^3) / (J̄_{0,3} j(-q y^2/x;q^3) j(-q x^2/y;q^3))`.
pub fn f121_expansion<T: Coeff>(x: QMonomial, y: QMonomial, order: i64) -> Result<ExpansionResult<T>> {
    let minus_one = QMonomial::neg_q_pow(0);
    let q = QMonomial::q_pow;
    let first = theta_times_m(y, 1, AppellArgs::new(q(2) * x / y.pow(2), 3, minus_one), order)?;
    let second = theta_times_m(x, 1, AppellArgs::new(q(2) * y / x.pow(2), 3, minus_one), order)?;
    let theta = ThetaQuotient::new(y)
        .eta(3, 3)
        .j(-(x / y), 1)
        .j(q(2) * x * y, 3)
        .over_j(minus_one, 3)
        .over_j(-(q(1) * y.pow(2) / x), 3)
        .over_j(-(q(1) * x.pow(2) / y), 3)
        .eval::<T>(order)?;
    Ok(ExpansionResult::new(first.add(&second), theta))
}

/// `h_{4,4,1}(x,y,q,-1,-1) = j(x;q^4) m(-q^3 y/x, q^3, -1) + j(y;q) m(q^6 x/y^4, q^12, -1)`.
pub fn h441<T: Coeff>(x: QMonomial, y: QMonomial, order: i64) -> Result<QSeries<T>> {
    let minus_one = QMonomial::neg_q_pow(0);
    let q = QMonomial::q_pow;
    let first = theta_times_m(x, 4, AppellArgs::new(-(q(3) * y / x), 3, minus_one), order)?;
    let second = theta_times_m(y, 1, AppellArgs::new(q(6) * x / y.pow(4), 12, minus_one), order)?;
    Ok(first.add(&second))
}

/// `h_{3,3,1}(x,y,q,-1,-1) = j(x;q^3) m(-q^2 y/x, q^2, -1) + j(y;q) m(-q^3 x/y^3, q^6, -1)`.
pub fn h331<T: Coeff>(x: QMonomial, y: QMonomial, order: i64) -> Result<QSeries<T>> {
    let minus_one = QMonomial::neg_q_pow(0);
    let q = QMonomial::q_pow;
    let first = theta_times_m(x, 3, AppellArgs::new(-(q(2) * y / x), 2, minus_one), order)?;
    let second = theta_times_m(y, 1, AppellArgs::new(-(q(3) * x / y.pow(3)), 6, minus_one), order)?;
    Ok(first.add(&second))
}

/// The four-term expansion of `f_{4,4,1}(x, y, q)`.
pub fn f441_expansion<T: Coeff>(x: QMonomial, y: QMonomial, order: i64) -> Result<ExpansionResult<T>> {
    let q = QMonomial::q_pow;
    let nq = QMonomial::neg_q_pow;
    let terms: Vec<_> = (0..4)
        .map(|d| {
            let tq = ThetaQuotient::new(q(3 * (d + 1) * d / 2))
                .j(q(3 + 3 * d) * y, 4)
                .j(nq(9 - 3 * d) * x / y, 12)
                .eta(12, 3)
                .j(nq(9 + 3 * d) / y.pow(3), 12)
                .over_j(nq(0), 3)
                .over_j(nq(0), 12)
                .over_j(nq(6) * x / y.pow(4), 12)
                .over_j(q(3 + 3 * d) * y / x, 12);
            (d, tq)
        })
        .collect();
    let theta = sum_quotients(&terms, order)?;
    Ok(ExpansionResult::new(h441(x, y, order)?, theta))
}

/// The three-term expansion of `f_{3,3,1}(x, y, q)`.
pub fn f331_expansion<T: Coeff>(x: QMonomial, y: QMonomial, order: i64) -> Result<ExpansionResult<T>> {
    let q = QMonomial::q_pow;
    let nq = QMonomial::neg_q_pow;
    let terms: Vec<_> = (0..3)
        .map(|d| {
            let tq = ThetaQuotient::new(q(d * (d + 1)))
                .j(q(2 + 2 * d) * y, 3)
                .j(nq(4 - 2 * d) * x / y, 6)
                .eta(6, 3)
                .j(q(5 + 2 * d) / y.pow(2), 6)
                .scaled(1, 4)
                .over_j(nq(2), 8)
                .over_j(nq(6), 24)
                .over_j(q(3) * x / y.pow(3), 6)
                .over_j(q(2 + 2 * d) * y / x, 6);
            (d, tq)
        })
        .collect();
    let theta = sum_quotients(&terms, order)?;
    Ok(ExpansionResult::new(h331(x, y, order)?, theta))
}

/// `f_{1,3,1}(x,y,q) = j(y;q) m(-q^5 x/y^3, q^8, q^2 y/x) + j(x;q) m(-q^5 y/x^3, q^8, x/(q^2 y))`
/// `+ q^5 x^2 y J_{2,4} J_{8,16} j(q^7 xy; q^8) j(q^22 x^2 y^2; q^16) / (j(-q^5 x^2; q^8) j(-q^9 y^2; q^8))`.
///
/// The added theta quotient is reported as a negative `theta_part`.
pub fn f131_expansion<T: Coeff>(x: QMonomial, y: QMonomial, order: i64) -> Result<ExpansionResult<T>> {
    let q = QMonomial::q_pow;
    let nq = QMonomial::neg_q_pow;
    let first = theta_times_m(y, 1, AppellArgs::new(-(q(5) * x / y.pow(3)), 8, q(2) * y / x), order)?;
    let second = theta_times_m(x, 1, AppellArgs::new(-(q(5) * y / x.pow(3)), 8, x / (q(2) * y)), order)?;
    let quotient = ThetaQuotient::new(q(5) * x.pow(2) * y)
        .j(q(2), 4)
        .j(q(8), 16)
        .j(q(7) * x * y, 8)
        .j(q(22) * (x * y).pow(2), 16)
        .over_j(nq(5) * x.pow(2), 8)
        .over_j(nq(9) * y.pow(2), 8)
        .eval::<T>(order)?;
    Ok(ExpansionResult::new(first.add(&second), quotient.neg()))
}

/// Compares an expansion against the direct double sum.
pub fn expansion_check<T, F>(name: &str, cases: &[(HeckeParams2, QMonomial, QMonomial)], order: i64, expand: F) -> Result<VerificationReport>
where
    T: Coeff,
    F: Fn(HeckeParams2, QMonomial, QMonomial, i64) -> Result<ExpansionResult<T>>,
{
    run_cases(
        name,
        order,
        cases.iter().map(|&(p, x, y)| {
            let expand = &expand;
            (format!("f_{{{p}}}({x}, {y})"), move || {
                Ok((expand(p, x, y, order)?.total, hecke_f(p, x, y, order)))
            })
        }),
    )
}

/// `h(-q^(A+m), q^(2+m)) - q^-m h(-q^(A-m), q^(2-m))` for the `(4,4,1)`
/// (`A = 4`) or `(3,3,1)` (`A = 3`) pair.
pub fn h_cancellation<T: Coeff>(a: i64, m: i64, order: i64) -> Result<QSeries<T>> {
    let h = |x, y, n| match a {
        4 => h441::<T>(x, y, n),
        3 => h331::<T>(x, y, n),
        _ => Err(Error::Precondition(format!("no h-cancellation for a = {a}"))),
    };
    let nq = QMonomial::neg_q_pow;
    let q = QMonomial::q_pow;
    let left = h(nq(a + m), q(2 + m), order)?;
    let right = h(nq(a - m), q(2 - m), order + m)?.shift(-m);
    Ok(left.sub(&right))
}
