use qhecke::appell::{appell_m, AppellArgs};
use qhecke::eulerian::{chi0, chi1, kl_lhs_a, kl_lhs_b, partial_theta, PartialThetaSpec};
use qhecke::hecke::{hecke_f, hecke_g, HeckeParams2, HeckeParams3};
use qhecke::series::build_to_order;
use qhecke::theta::{eta_product, j, jacobi_j, jacobi_jbar, pochhammer};
use qhecke::{Error, QSeries, Rational, Result, Series};

use crate::syntax::{BinOp, Expr, ExprKind, Primitive};

/// Largest accepted `|k|` in `e^k`.
pub const MAX_POWER: i64 = 10_000;

/// Evaluates `e` through `q^order`, raising the working order as needed to
/// absorb precision lost to negative valuations and division.
pub fn eval(e: &Expr, order: i64) -> Result<Series> {
    build_to_order(order, |w| eval_at(e, w))
}

fn context(e: &Expr, err: Error) -> Error {
    err.context(format!("in `{e}` at bytes {}..{}", e.span.start, e.span.end))
}

fn positive(what: &str, m: i64) -> Result<i64> {
    if m < 1 {
        return Err(Error::Precondition(format!("{what} must be positive, got {m}")));
    }
    Ok(m)
}

fn eval_at(e: &Expr, w: i64) -> Result<Series> {
    let value = match &e.kind {
        ExprKind::Num(n) => Ok(QSeries::constant(Rational::from_integer(n.clone()), w)),
        ExprKind::Q => Ok(QSeries::monomial(Rational::from_integer(1.into()), 1, w)),
        ExprKind::Neg(inner) => return Ok(eval_at(inner, w)?.neg()),
        ExprKind::Binary(op, l, r) => {
            let (a, b) = (eval_at(l, w)?, eval_at(r, w)?);
            match op {
                BinOp::Add => Ok(a.add(&b)),
                BinOp::Sub => Ok(a.sub(&b)),
                BinOp::Mul => Ok(a.mul(&b)),
                BinOp::Div => a.div(&b),
            }
        }
        ExprKind::Pow(base, k) => power(base, *k, w),
        ExprKind::Call(p) => primitive(p, w),
    };
    value.map_err(|err| match err {
        // already located at the innermost node
        Error::Context { .. } => err,
        other => context(e, other),
    })
}

fn power(base: &Expr, k: i64, w: i64) -> Result<Series> {
    if k.abs() > MAX_POWER {
        return Err(Error::Precondition(format!("exponent {k} exceeds {MAX_POWER} in absolute value")));
    }
    if base.kind == ExprKind::Q {
        // exact, so no precision is lost for negative k
        return Ok(QSeries::monomial(Rational::from_integer(1.into()), k, w));
    }
    let b = eval_at(base, w)?;
    if k >= 0 {
        Ok(b.pow(k as u32))
    } else {
        Ok(b.invert()?.pow((-k) as u32))
    }
}

fn primitive(p: &Primitive, w: i64) -> Result<Series> {
    Ok(match *p {
        Primitive::Eta { m } => eta_product(positive("J index", m)?, w),
        Primitive::J { a, m } => jacobi_j(a, positive("J modulus", m)?, w),
        Primitive::JBar { a, m } => jacobi_jbar(a, positive("JB modulus", m)?, w),
        Primitive::Theta { x, m } => j(x, positive("theta modulus", m)?, w),
        Primitive::Appell { x, m, z } => appell_m(AppellArgs::new(x, m, z), w)?,
        Primitive::F { abc: [a, b, c], x, y } => hecke_f(HeckeParams2::new(a, b, c)?, x, y, w),
        Primitive::G { coeffs: [a, b, c, d, e, f], x, y, z } => {
            hecke_g(HeckeParams3::new(a, b, c, d, e, f)?, x, y, z, w)
        }
        Primitive::Chi0 => chi0(w),
        Primitive::Chi1 => chi1(w),
        Primitive::KlA => kl_lhs_a(w),
        Primitive::KlB => kl_lhs_b(w),
        Primitive::PartialTheta { a, b, c } => {
            partial_theta(PartialThetaSpec::new(a, b, c.unwrap_or(0), true)?, w)
        }
        Primitive::Poch { x, len } => pochhammer(x, len, 1, w)?,
    })
}
