//! Named exact identities, each checked coefficientwise through a chosen order.

use rayon::prelude::*;

use crate::appell::{
    appell_m, flip_sides, x_shift_sides, x_step_sides, z_change_sides, z_shift_sides, AppellArgs,
};
use crate::closed_forms::{
    f121_expansion, f131_expansion, f331_expansion, f441_expansion, h_cancellation, thm_main_expansion,
};
use crate::coeff::{sign_pow, Coeff};
use crate::error::{Error, Result, ResultExt};
use crate::eulerian::{chi0, chi1, kl_lhs_a, kl_lhs_b, partial_theta, PartialThetaSpec};
use crate::hecke::{
    f_flip_sides, f_shift, g_flip_sides, g_shift, generic_shift_sides, hecke_f, hecke_g, scaled, HeckeParams2,
    HeckeParams3,
};
use crate::monomial::QMonomial;
use crate::report::{run_cases, VerificationReport};
use crate::series::build_to_order;
use crate::theta::{eta_product, j, j_mod_dec, j_mod_inc, jacobi_j, jacobi_jbar, ThetaArg, ThetaQuotient};
use crate::{Rational, Series};

type Sides = Box<dyn Fn(i64) -> Result<(Series, Series)>>;

/// One instance of an identity: both sides as functions of the order.
pub struct Case {
    pub label: String,
    sides: Sides,
}

impl Case {
    fn new(label: impl Into<String>, sides: impl Fn(i64) -> Result<(Series, Series)> + 'static) -> Self {
        Case {
            label: label.into(),
            sides: Box::new(sides),
        }
    }

    /// `(lhs, rhs)` through `q^order`.
    pub fn sides(&self, order: i64) -> Result<(Series, Series)> {
        (self.sides)(order)
    }
}

pub struct Identity {
    pub name: &'static str,
    /// What is being checked, in words and formulas.
    pub statement: &'static str,
    pub default_order: i64,
    cases: fn() -> Vec<Case>,
}

impl Identity {
    pub fn cases(&self) -> Vec<Case> {
        (self.cases)()
    }

    pub fn verify(&self, order: i64) -> Result<VerificationReport> {
        let cases = self.cases();
        run_cases(
            self.name,
            order,
            cases.iter().map(|c| (c.label.clone(), move || c.sides(order))),
        )
        .context_with(|| format!("identity {}", self.name))
    }
}

const fn q(e: i64) -> QMonomial {
    QMonomial::q_pow(e)
}

const fn nq(e: i64) -> QMonomial {
    QMonomial::neg_q_pow(e)
}

fn p2(a: i64, b: i64, c: i64) -> HeckeParams2 {
    HeckeParams2::new(a, b, c).expect("positive parameters")
}

fn p3(c: [i64; 6]) -> HeckeParams3 {
    HeckeParams3::new(c[0], c[1], c[2], c[3], c[4], c[5]).expect("positive parameters")
}

fn constant(c: i64, order: i64) -> Series {
    Series::constant(<Rational as Coeff>::from_i64(c), order)
}

fn j1(order: i64) -> Series {
    eta_product(1, order)
}

fn m(x: QMonomial, modulus: i64, z: QMonomial, order: i64) -> Result<Series> {
    appell_m(AppellArgs::new(x, modulus, z), order)
}

fn times(c: QMonomial, order: i64, inner: impl FnOnce(i64) -> Result<Series>) -> Result<Series> {
    scaled(c, order, inner)
}

const G121221: [i64; 6] = [1, 2, 1, 2, 2, 1];
const G171111: [i64; 6] = [1, 7, 1, 1, 1, 1];
const G151111: [i64; 6] = [1, 5, 1, 1, 1, 1];
const G131331: [i64; 6] = [1, 3, 1, 3, 3, 1];

fn g(c: [i64; 6], x: QMonomial, y: QMonomial, z: QMonomial, order: i64) -> Series {
    hecke_g(p3(c), x, y, z, order)
}

fn ptheta(a: i64, b: i64, c: i64, order: i64) -> Result<Series> {
    Ok(partial_theta(PartialThetaSpec::new(a, b, c, true)?, order))
}

/// `Σ_{r>=0} (-1)^r q^(3r^2+2r) (1 + q^(2r+1))`.
fn ptheta_pair(order: i64) -> Result<Series> {
    Ok(ptheta(6, 4, 0, order)?.add(&ptheta(6, 8, 1, order)?))
}

/// `f_{A,A,1}(-q^(A+k), q^(2+k), q) - q^-k f_{A,A,1}(-q^(A-k), q^(2-k), q)`.
fn reflected_pair(a: i64, k: i64, order: i64) -> Result<Series> {
    let p = p2(a, a, 1);
    let right = times(q(-k), order, |w| Ok(hecke_f(p, nq(a - k), q(2 - k), w)))?;
    Ok(hecke_f::<Rational>(p, nq(a + k), q(2 + k), order).sub(&right))
}

fn single(label: &str, sides: impl Fn(i64) -> Result<(Series, Series)> + 'static) -> Vec<Case> {
    vec![Case::new(label, sides)]
}

fn chi0_appell() -> Vec<Case> {
    single("chi0", |n| {
        let t1 = m(q(7), 15, q(9), n)?.scale_i64(-3);
        let t2 = times(q(-1), n, |w| m(q(2), 15, q(4), w))?.scale_i64(-3);
        let th = ThetaQuotient::new(q(0))
            .eta(5, 2)
            .j(q(2), 5)
            .over_j(q(1), 5)
            .over_j(q(1), 5)
            .scaled(2, 1)
            .eval(n)?;
        Ok((chi0(n), constant(2, n).add(&t1).add(&t2).add(&th)))
    })
}

fn chi1_appell() -> Vec<Case> {
    single("chi1", |n| {
        let t1 = times(q(-1), n, |w| m(q(4), 15, q(3), w))?.scale_i64(-3);
        let t2 = times(q(-2), n, |w| m(q(1), 15, q(2), w))?.scale_i64(-3);
        let th = ThetaQuotient::new(q(0))
            .eta(5, 2)
            .j(q(1), 5)
            .over_j(q(2), 5)
            .over_j(q(2), 5)
            .scaled(-2, 1)
            .eval(n)?;
        Ok((chi1(n), t1.add(&t2).add(&th)))
    })
}

fn f121_cases() -> Vec<Case> {
    [
        (q(1), q(1)),
        (q(1), q(2)),
        (q(2), q(1)),
        (q(2), q(3)),
        (q(3), q(1)),
        (q(-1), q(3)),
        (q(4), q(-1)),
        (q(5), q(2)),
    ]
    .into_iter()
    .map(|(x, y)| {
        Case::new(format!("x={x}, y={y}"), move |n| {
            Ok((hecke_f(p2(1, 2, 1), x, y, n), f121_expansion(x, y, n)?.total))
        })
    })
    .collect()
}

fn zwegers_chi0() -> Vec<Case> {
    single("chi0", |n| {
        let quotient = g(G121221, q(1), q(1), q(1), n).div(&j1(n).pow(2))?;
        Ok((constant(2, n).sub(&quotient), chi0(n)))
    })
}

fn zwegers_chi1() -> Vec<Case> {
    single("chi1", |n| {
        Ok((g(G121221, q(2), q(2), q(2), n).div(&j1(n).pow(2))?, chi1(n)))
    })
}

fn kl_triple_1() -> Vec<Case> {
    single("(1,7,1,1,1,1)", |n| {
        let second = times(q(4), n, |w| Ok(g(G171111, q(6), q(7), q(2), w)))?;
        let lhs = g(G171111, q(2), q(3), q(1), n).add(&second);
        Ok((lhs, j1(n).pow(2).mul(&ptheta(3, 3, 0, n)?)))
    })
}

fn kl_triple_2() -> Vec<Case> {
    single("(1,5,1,1,1,1)", |n| {
        let second = times(q(3), n, |w| Ok(g(G151111, q(5), q(5), q(2), w)))?;
        let lhs = g(G151111, q(2), q(2), q(1), n).add(&second);
        let rhs = j1(n).mul(&jacobi_j(1, 2, n)).mul(&ptheta_pair(n)?);
        Ok((lhs, rhs))
    })
}

fn kl_eulerian_a() -> Vec<Case> {
    single("A", |n| Ok((kl_lhs_a(n), ptheta(3, 3, 0, n)?.div(&j1(n))?)))
}

fn kl_eulerian_b() -> Vec<Case> {
    single("B", |n| Ok((kl_lhs_b(n), ptheta_pair(n)?.div(&eta_product(2, n))?)))
}

fn newid(x: QMonomial, y: QMonomial, z: QMonomial, rhs: fn(i64) -> Result<Series>) -> Vec<Case> {
    single(&format!("g({x}, {y}, {z})"), move |n| Ok((g(G121221, x, y, z, n), rhs(n)?)))
}

fn newid_1() -> Vec<Case> {
    newid(q(3), q(3), q(3), |n| Ok(Series::zero(n)))
}

fn newid_2() -> Vec<Case> {
    newid(q(1), q(1), q(2), |n| Ok(j1(n).pow(2)))
}

fn newid_3() -> Vec<Case> {
    newid(q(1), q(2), q(2), |n| Ok(j1(n).pow(2).mul(&chi0(n))))
}

fn newid_4() -> Vec<Case> {
    // J_1^2 (q chi0 + 1 - q)
    newid(q(1), q(1), q(3), |n| {
        let inner = chi0(n).shift(1).add(&constant(1, n)).sub(&q(1).to_series(n));
        Ok(j1(n).pow(2).mul(&inner))
    })
}

fn newid_5() -> Vec<Case> {
    // J_1^2 (q chi1 + 1)
    newid(q(1), q(2), q(3), |n| {
        let inner = chi1(n).shift(1).add(&constant(1, n));
        Ok(j1(n).pow(2).mul(&inner))
    })
}

fn lemma(a: i64, k: i64, value: fn(i64) -> Result<Series>) -> Vec<Case> {
    single(&format!("k={k}"), move |n| Ok((reflected_pair(a, k, n)?, value(n)?)))
}

/// `c J_1^2`.
fn j1_squared_times(c: QMonomial, n: i64) -> Result<Series> {
    times(c, n, |w| Ok(j1(w).pow(2)))
}

/// `c J_1^3 / J_2`.
fn j1_cubed_over_j2(c: QMonomial, n: i64) -> Result<Series> {
    ThetaQuotient::new(c).eta(1, 3).over_eta(2, 1).eval(n)
}

fn symmetry_shift(a: i64, lhs: fn(i64, i64) -> Series) -> Vec<Case> {
    (-3..=3)
        .map(|t| {
            Case::new(format!("t={t}"), move |n| Ok((lhs(t, n), reflected_pair(a, t, n)?)))
        })
        .collect()
}

fn symmetry_171() -> Vec<Case> {
    symmetry_shift(4, |t, n| {
        let p = p2(1, 7, 1);
        let second = q(4 + t).times(&hecke_f::<Rational>(p, q(6 + t), q(7 + t), n - 4 - t));
        hecke_f::<Rational>(p, q(2 + t), q(3 + t), n).add(&second)
    })
}

fn symmetry_151() -> Vec<Case> {
    symmetry_shift(3, |t, n| {
        let p = p2(1, 5, 1);
        let second = q(3 + t).times(&hecke_f::<Rational>(p, q(5 + t), q(5 + t), n - 3 - t));
        hecke_f::<Rational>(p, q(2 + t), q(2 + t), n).add(&second)
    })
}

/// The `(A,A,1)` reflected pair at `A m + k` against the pair at `k`.
fn reduce_cases(a: i64, exponent: fn(i64, i64) -> i64) -> Vec<Case> {
    let mut out = Vec::new();
    for mm in -2..=2 {
        for k in 0..a {
            out.push(Case::new(format!("m={mm}, k={k}"), move |n| {
                let lhs = reflected_pair(a, a * mm + k, n)?;
                let rhs = times(q(exponent(mm, k)), n, |w| reflected_pair(a, k, w))?;
                Ok((lhs, rhs))
            }));
        }
    }
    out
}

fn f441_reduce() -> Vec<Case> {
    reduce_cases(4, |m, k| -2 * m * m - 2 * m - m * k)
}

fn f331_reduce() -> Vec<Case> {
    reduce_cases(3, |m, k| -3 * m * (m + 1) / 2 - m * k)
}

fn f111_zero() -> Vec<Case> {
    [(0, 1), (1, 0), (1, 2), (2, 5), (-1, 3), (3, -2), (0, -1), (4, 1), (-3, -1), (5, 7)]
        .into_iter()
        .map(|(a, b)| {
            Case::new(format!("m={a}, n={b}"), move |n| {
                Ok((hecke_f(p2(1, 1, 1), q(a), q(b), n), Series::zero(n)))
            })
        })
        .collect()
}

fn h1_cases() -> Vec<Case> {
    [
        (q(1), q(2)),
        (nq(1), q(3)),
        (q(2), nq(1)),
        (q(-1), q(2)),
        (q(3), q(5)),
        (nq(2), nq(3)),
        (q(4), q(1)),
        (q(0), q(1)),
        (q(-2), nq(1)),
        (q(5), nq(-1)),
    ]
    .into_iter()
    .map(|(x, y)| Case::new(format!("x={x}, y={y}"), move |n| crate::theta::h1_sides(x, y, n)))
    .collect()
}

const APPELL_TRIPLES: [(QMonomial, i64, QMonomial); 10] = [
    (q(7), 15, q(9)),
    (q(2), 15, q(4)),
    (q(1), 3, nq(0)),
    (nq(3), 2, q(1)),
    (q(2), 3, nq(1)),
    (nq(1), 5, nq(2)),
    (q(-4), 7, q(3)),
    (nq(5), 4, q(2)),
    (q(3), 1, nq(0)),
    (q(11), 6, nq(-2)),
];

fn appell_cases(sides: fn(AppellArgs, i64) -> Result<(Series, Series)>) -> Vec<Case> {
    APPELL_TRIPLES
        .into_iter()
        .map(|(x, modulus, z)| {
            let args = AppellArgs::new(x, modulus, z);
            Case::new(args.to_string(), move |n| sides(args, n))
        })
        .collect()
}

fn m_z_shift() -> Vec<Case> {
    appell_cases(z_shift_sides)
}

fn m_flip() -> Vec<Case> {
    appell_cases(flip_sides)
}

fn m_x_shift() -> Vec<Case> {
    appell_cases(x_shift_sides)
}

fn m_rewritten() -> Vec<Case> {
    appell_cases(x_step_sides)
}

fn m_z_change() -> Vec<Case> {
    [
        (q(1), 15, q(4), q(2)),
        (q(2), 3, nq(0), nq(1)),
        (q(7), 15, q(9), nq(3)),
        (q(1), 1, nq(0), nq(2)),
        (q(-3), 4, nq(1), nq(-2)),
        (q(2), 5, nq(1), nq(3)),
        (nq(1), 3, nq(1), q(1)),
        (q(4), 7, nq(0), nq(5)),
        (q(3), 2, nq(1), nq(-1)),
        (q(1), 8, nq(3), nq(1)),
    ]
    .into_iter()
    .map(|(x, modulus, z1, z0)| {
        Case::new(format!("x={x}, q^{modulus}, z1={z1}, z0={z0}"), move |n| {
            z_change_sides(x, modulus, z1, z0, n)
        })
    })
    .collect()
}

fn f_flip_cases() -> Vec<Case> {
    [
        ((1, 2, 1), q(1), q(1)),
        ((1, 2, 1), q(2), nq(1)),
        ((4, 4, 1), nq(4), q(2)),
        ((3, 3, 1), nq(3), q(2)),
        ((1, 7, 1), q(2), q(3)),
        ((1, 5, 1), q(5), q(5)),
        ((2, 3, 1), q(-1), q(2)),
        ((1, 3, 1), q(1), q(1)),
        ((1, 1, 1), q(0), q(2)),
        ((2, 5, 3), nq(2), q(-1)),
    ]
    .into_iter()
    .map(|((a, b, c), x, y)| {
        let p = p2(a, b, c);
        Case::new(format!("f_{{{p}}}({x}, {y})"), move |n| f_flip_sides(p, x, y, n))
    })
    .collect()
}

fn f_shift_cases() -> Vec<Case> {
    [
        ((1, 2, 1), q(1), q(1), 1, 0),
        ((1, 2, 1), q(2), nq(1), 2, 1),
        ((4, 4, 1), nq(4), q(2), -1, 2),
        ((3, 3, 1), nq(3), q(2), 1, -2),
        ((1, 7, 1), q(2), q(3), -1, -1),
        ((1, 5, 1), q(5), q(5), 0, 3),
        ((2, 3, 1), q(-1), q(2), -2, 1),
        ((1, 3, 1), q(1), q(1), 3, -1),
        ((1, 1, 1), q(0), q(2), 1, -1),
        ((2, 5, 3), nq(2), q(-1), 2, 2),
    ]
    .into_iter()
    .map(|((a, b, c), x, y, l, k)| {
        let p = p2(a, b, c);
        Case::new(format!("f_{{{p}}}({x}, {y}); l={l}, k={k}"), move |n| {
            Ok((hecke_f(p, x, y, n), f_shift(p, x, y, l, k, n)?.total()))
        })
    })
    .collect()
}

type TripleCase = ([i64; 6], QMonomial, QMonomial, QMonomial);

const TRIPLES: [TripleCase; 10] = [
    (G121221, q(1), q(1), q(1)),
    (G121221, q(2), q(2), q(2)),
    (G121221, q(1), q(2), q(3)),
    (G171111, q(2), q(3), q(1)),
    (G151111, q(5), q(5), q(2)),
    (G131331, q(1), q(1), q(1)),
    ([1, 1, 1, 1, 1, 1], nq(1), q(2), q(0)),
    ([2, 3, 1, 1, 2, 2], q(-1), q(1), nq(2)),
    ([1, 2, 3, 1, 1, 2], q(3), nq(0), q(1)),
    ([2, 1, 1, 3, 1, 1], nq(2), q(-2), q(4)),
];

fn g_shift_cases() -> Vec<Case> {
    let shifts = [
        (0, 0, 1),
        (0, 1, 1),
        (0, 0, 2),
        (-1, 0, 1),
        (1, 2, -1),
        (2, 1, 1),
        (-1, -1, 0),
        (1, -2, 2),
        (0, 2, -2),
        (-2, 1, -1),
    ];
    TRIPLES
        .into_iter()
        .zip(shifts)
        .map(|((c, x, y, z), (r, s, t))| {
            let p = p3(c);
            Case::new(format!("g_{{{p}}}({x}, {y}, {z}); R,S,T={r},{s},{t}"), move |n| {
                Ok((hecke_g(p, x, y, z, n), g_shift(p, x, y, z, r, s, t, n)?.total()))
            })
        })
        .collect()
}

fn g_flip_cases() -> Vec<Case> {
    TRIPLES
        .into_iter()
        .map(|(c, x, y, z)| {
            let p = p3(c);
            Case::new(format!("g_{{{p}}}({x}, {y}, {z})"), move |n| g_flip_sides(p, x, y, z, n))
        })
        .collect()
}

fn generic_shift_cases() -> Vec<Case> {
    let shifts = [
        (1, 1, 1),
        (2, 0, 1),
        (0, 2, 2),
        (1, 2, 1),
        (2, 2, 2),
        (3, 1, 0),
        (1, 0, 3),
        (2, 1, 2),
        (0, 0, 1),
        (1, 3, 1),
    ];
    TRIPLES
        .into_iter()
        .zip(shifts)
        .map(|((c, x, y, z), (r, s, t))| {
            let p = p3(c);
            Case::new(format!("g_{{{p}}}({x}, {y}, {z}); R,S,T={r},{s},{t}"), move |n| {
                generic_shift_sides(p, x, y, z, r, s, t, n)
            })
        })
        .collect()
}

fn thm_main_cases() -> Vec<Case> {
    [
        ((1, 2, 1), q(1), q(1)),
        ((1, 2, 1), q(2), nq(1)),
        ((4, 4, 1), nq(4), q(2)),
        ((4, 4, 1), nq(5), q(3)),
        ((3, 3, 1), nq(3), q(2)),
        ((3, 3, 1), nq(4), q(3)),
        ((2, 2, 1), q(1), nq(3)),
    ]
    .into_iter()
    .map(|((a, b, c), x, y)| {
        let p = p2(a, b, c);
        Case::new(format!("f_{{{p}}}({x}, {y})"), move |n| {
            Ok((hecke_f(p, x, y, n), thm_main_expansion(p, x, y, n)?.total))
        })
    })
    .collect()
}

fn rearrangement_cases() -> Vec<Case> {
    fn tq() -> ThetaQuotient {
        ThetaQuotient::new(q(0))
    }
    type Rearrangement = (&'static str, fn(i64) -> Result<Series>, ThetaQuotient);
    let list: Vec<Rearrangement> = vec![
        ("Jb(0,1) = 2 Jb(1,4)", |n| Ok(jacobi_jbar(0, 1, n)), tq().j(nq(1), 4).scaled(2, 1)),
        ("Jb(1,4) = J2^2 / J1", |n| Ok(jacobi_jbar(1, 4, n)), tq().eta(2, 2).over_eta(1, 1)),
        (
            "Jb(1,2) = J2^5 / (J1^2 J4^2)",
            |n| Ok(jacobi_jbar(1, 2, n)),
            tq().eta(2, 5).over_eta(1, 2).over_eta(4, 2),
        ),
        ("J(1,2) = J1^2 / J2", |n| Ok(jacobi_j(1, 2, n)), tq().eta(1, 2).over_eta(2, 1)),
        (
            "Jb(1,3) = J2 J3^2 / (J1 J6)",
            |n| Ok(jacobi_jbar(1, 3, n)),
            tq().eta(2, 1).eta(3, 2).over_eta(1, 1).over_eta(6, 1),
        ),
        ("J(1,4) = J1 J4 / J2", |n| Ok(jacobi_j(1, 4, n)), tq().eta(1, 1).eta(4, 1).over_eta(2, 1)),
        (
            "J(1,6) = J1 J6^2 / (J2 J3)",
            |n| Ok(jacobi_j(1, 6, n)),
            tq().eta(1, 1).eta(6, 2).over_eta(2, 1).over_eta(3, 1),
        ),
        (
            "Jb(1,6) = J2^2 J3 J12 / (J1 J4 J6)",
            |n| Ok(jacobi_jbar(1, 6, n)),
            tq().eta(2, 2).eta(3, 1).eta(12, 1).over_eta(1, 1).over_eta(4, 1).over_eta(6, 1),
        ),
    ];
    list.into_iter()
        .map(|(label, lhs, rhs)| Case::new(label, move |n| Ok((lhs(n)?, rhs.eval(n)?))))
        .collect()
}

fn f131_cases() -> Vec<Case> {
    [(q(1), q(1)), (q(2), q(1)), (q(4), q(4)), (q(1), q(3)), (q(-1), q(2))]
        .into_iter()
        .map(|(x, y)| {
            Case::new(format!("x={x}, y={y}"), move |n| {
                Ok((hecke_f(p2(1, 3, 1), x, y, n), f131_expansion(x, y, n)?.total))
            })
        })
        .collect()
}

fn j_elliptic_cases() -> Vec<Case> {
    [(q(1), 3, 2), (nq(2), 5, -3), (q(-1), 2, 4), (nq(0), 1, -2), (q(4), 7, 1), (nq(3), 4, 3)]
        .into_iter()
        .map(|(x, modulus, k)| {
            Case::new(format!("x={x}, q^{modulus}, n={k}"), move |n| {
                let pre = QMonomial::new(sign_pow(-1, k), -modulus * k * (k - 1) / 2) * x.pow(-k);
                let rhs = times(pre, n, |w| Ok(j(x, modulus, w)))?;
                Ok((j(x.q_shift(modulus * k), modulus, n), rhs))
            })
        })
        .collect()
}

fn j_inversion_cases() -> Vec<Case> {
    let mut out = Vec::new();
    for (x, modulus) in [(q(1), 3), (nq(2), 5), (q(-1), 2), (nq(0), 1), (q(4), 7)] {
        out.push(Case::new(format!("j({x}) = j(q^{modulus}/x)"), move |n| {
            Ok((j(x, modulus, n), j(q(modulus) / x, modulus, n)))
        }));
        out.push(Case::new(format!("j({x}) = -x j(1/x)"), move |n| {
            Ok((j(x, modulus, n), times(-x, n, |w| Ok(j(x.inv(), modulus, w)))?))
        }));
    }
    out
}

fn j_mod_inc_cases() -> Vec<Case> {
    [(nq(1), 1, 2), (q(2), 3, 3), (nq(0), 2, 2), (q(1), 2, 4), (nq(3), 5, 2)]
        .into_iter()
        .map(|(x, modulus, k)| {
            let arg = ThetaArg::new(x, modulus);
            Case::new(format!("{arg}, n={k}"), move |n| Ok((j(x, modulus, n), j_mod_inc(arg, k, n)?)))
        })
        .collect()
}

fn j_mod_dec_cases() -> Vec<Case> {
    [(nq(1), 1), (q(2), 3), (nq(0), 2), (q(1), 2), (nq(3), 5)]
        .into_iter()
        .map(|(x, modulus)| {
            let arg = ThetaArg::new(x, modulus);
            Case::new(format!("{arg}, n=2"), move |n| {
                Ok((j(x.pow(2), 2 * modulus, n), j_mod_dec(arg, 2, n)?))
            })
        })
        .collect()
}

fn expansion_cases(
    p: HeckeParams2,
    pairs: &[(QMonomial, QMonomial)],
    expand: fn(QMonomial, QMonomial, i64) -> Result<crate::closed_forms::ExpansionResult<Rational>>,
) -> Vec<Case> {
    pairs
        .iter()
        .map(|&(x, y)| {
            Case::new(format!("x={x}, y={y}"), move |n| Ok((hecke_f(p, x, y, n), expand(x, y, n)?.total)))
        })
        .collect()
}

fn cor_f441() -> Vec<Case> {
    expansion_cases(p2(4, 4, 1), &[(nq(5), q(3)), (nq(4), q(2)), (nq(6), q(1)), (q(1), q(3))], f441_expansion)
}

fn cor_f331() -> Vec<Case> {
    expansion_cases(p2(3, 3, 1), &[(nq(4), q(3)), (nq(3), q(2)), (nq(5), q(1)), (q(1), q(2))], f331_expansion)
}

fn h_cancellation_cases() -> Vec<Case> {
    let mut out = Vec::new();
    for a in [4, 3] {
        for mm in -2..=4 {
            out.push(Case::new(format!("({a},{a},1), m={mm}"), move |n| {
                Ok((h_cancellation(a, mm, n)?, Series::zero(n)))
            }));
        }
    }
    out
}

macro_rules! identity {
    ($name:expr, $statement:expr, $cases:expr) => {
        Identity {
            name: $name,
            statement: $statement,
            default_order: 60,
            cases: $cases,
        }
    };
}

/// Every registered identity, in a fixed order.
pub fn registry() -> Vec<Identity> {
    vec![
        identity!(
            "chi0-appell",
            "chi0(q) = 2 - 3m(q^7,q^15,q^9) - 3q^-1 m(q^2,q^15,q^4) + 2 J5^2 J(2,5) / J(1,5)^2",
            chi0_appell
        ),
        identity!(
            "chi1-appell",
            "chi1(q) = -3q^-1 m(q^4,q^15,q^3) - 3q^-2 m(q,q^15,q^2) - 2 J5^2 J(1,5) / J(2,5)^2",
            chi1_appell
        ),
        identity!(
            "f121-expansion",
            "f_{1,2,1}(x,y,q) = j(y;q) m(q^2x/y^2,q^3,-1) + j(x;q) m(q^2y/x^2,q^3,-1) - theta quotient",
            f121_cases
        ),
        identity!("zwegers-chi0", "2 - g_{1,2,1,2,2,1}(q,q,q,q) / J1^2 = chi0(q)", zwegers_chi0),
        identity!("zwegers-chi1", "g_{1,2,1,2,2,1}(q^2,q^2,q^2,q) / J1^2 = chi1(q)", zwegers_chi1),
        identity!(
            "kl-triple-1",
            "g_{1,7,1,1,1,1}(q^2,q^3,q,q) + q^4 g_{1,7,1,1,1,1}(q^6,q^7,q^2,q) = J1^2 sum (-1)^r q^(3r(r+1)/2)",
            kl_triple_1
        ),
        identity!(
            "kl-triple-2",
            "g_{1,5,1,1,1,1}(q^2,q^2,q,q) + q^3 g_{1,5,1,1,1,1}(q^5,q^5,q^2,q) = J1 J(1,2) sum (-1)^r q^(3r^2+2r) (1 + q^(2r+1))",
            kl_triple_2
        ),
        identity!(
            "kl-eulerian-A",
            "sum (q;q)_2n q^n / (q;q)_n^2 = (1/J1) sum (-1)^r q^(3r(r+1)/2)",
            kl_eulerian_a
        ),
        identity!(
            "kl-eulerian-B",
            "sum (q;q^2)_n q^n / (q;q)_n = (1/J2) sum (-1)^r q^(3r^2+2r) (1 + q^(2r+1))",
            kl_eulerian_b
        ),
        identity!("newid-1", "g_{1,2,1,2,2,1}(q^3,q^3,q^3,q) = 0", newid_1),
        identity!("newid-2", "g_{1,2,1,2,2,1}(q,q,q^2,q) = J1^2", newid_2),
        identity!("newid-3", "g_{1,2,1,2,2,1}(q,q^2,q^2,q) = J1^2 chi0(q)", newid_3),
        identity!("newid-4", "g_{1,2,1,2,2,1}(q,q,q^3,q) = J1^2 (q chi0(q) + 1 - q)", newid_4),
        identity!("newid-5", "g_{1,2,1,2,2,1}(q,q^2,q^3,q) = J1^2 (q chi1(q) + 1)", newid_5),
        identity!("lemma-a0", "a_0 = f_{4,4,1}(-q^4,q^2,q) - f_{4,4,1}(-q^4,q^2,q) = 0", || {
            lemma(4, 0, |n| Ok(Series::zero(n)))
        }),
        identity!("lemma-a1", "a_1 = f_{4,4,1}(-q^5,q^3,q) - q^-1 f_{4,4,1}(-q^3,q,q) = -q^-1 J1^2", || {
            lemma(4, 1, |n| j1_squared_times(nq(-1), n))
        }),
        identity!("lemma-a2", "a_2 = f_{4,4,1}(-q^6,q^4,q) - q^-2 f_{4,4,1}(-q^2,1,q) = 0", || {
            lemma(4, 2, |n| Ok(Series::zero(n)))
        }),
        identity!("lemma-a3", "a_3 = f_{4,4,1}(-q^7,q^5,q) - q^-3 f_{4,4,1}(-q,q^-1,q) = q^-3 J1^2", || {
            lemma(4, 3, |n| j1_squared_times(q(-3), n))
        }),
        identity!("lemma-b0", "b_0 = f_{3,3,1}(-q^3,q^2,q) - f_{3,3,1}(-q^3,q^2,q) = 0", || {
            lemma(3, 0, |n| Ok(Series::zero(n)))
        }),
        identity!("lemma-b1", "b_1 = f_{3,3,1}(-q^4,q^3,q) - q^-1 f_{3,3,1}(-q^2,q,q) = -q^-1 J1^3 / J2", || {
            lemma(3, 1, |n| j1_cubed_over_j2(nq(-1), n))
        }),
        identity!("lemma-b2", "b_2 = f_{3,3,1}(-q^5,q^4,q) - q^-2 f_{3,3,1}(-q,1,q) = q^-2 J1^3 / J2", || {
            lemma(3, 2, |n| j1_cubed_over_j2(q(-2), n))
        }),
        identity!(
            "prop-symmetry-shift-171",
            "f_{1,7,1}(q^(2+t),q^(3+t),q) + q^(4+t) f_{1,7,1}(q^(6+t),q^(7+t),q) = f_{4,4,1}(-q^(4+t),q^(2+t),q) - q^-t f_{4,4,1}(-q^(4-t),q^(2-t),q), t = -3..3",
            symmetry_171
        ),
        identity!(
            "prop-symmetry-shift-151",
            "f_{1,5,1}(q^(2+t),q^(2+t),q) + q^(3+t) f_{1,5,1}(q^(5+t),q^(5+t),q) = f_{3,3,1}(-q^(3+t),q^(2+t),q) - q^-t f_{3,3,1}(-q^(3-t),q^(2-t),q), t = -3..3",
            symmetry_151
        ),
        identity!(
            "prop-f441-reduce",
            "a_(4m+k) = a_k q^(-2m^2-2m-mk), m = -2..2, k = 0..3",
            f441_reduce
        ),
        identity!(
            "prop-f331-reduce",
            "b_(3m+k) = b_k q^(-3m(m+1)/2-mk), m = -2..2, k = 0..2",
            f331_reduce
        ),
        identity!("prop-f111-zero", "f_{1,1,1}(q^m,q^n,q) = 0 for m != n", f111_zero),
        identity!(
            "h1-theorem",
            "j(-x;q) j(y;q) + j(x;q) j(-y;q) = 2 j(xy;q^2) j(qy/x;q^2)",
            h1_cases
        ),
        identity!("m-functional-a", "m(x,q,z) = m(x,q,qz)", m_z_shift),
        identity!("m-functional-b", "m(x,q,z) = x^-1 m(x^-1,q,z^-1)", m_flip),
        identity!("m-functional-c", "m(qx,q,z) = 1 - x m(x,q,z)", m_x_shift),
        identity!(
            "m-functional-d",
            "m(x,q,z1) - m(x,q,z0) = z0 J1^3 j(z1/z0) j(x z0 z1) / (j(z0) j(z1) j(x z0) j(x z1))",
            m_z_change
        ),
        identity!("m-rewritten", "m(x,q,z) = 1 - q^-1 x m(q^-1 x,q,z)", m_rewritten),
        identity!("f-flip", "f_{a,b,c}(x,y,q) = -q^(a+b+c)/(xy) f_{a,b,c}(q^(2a+b)/x, q^(2c+b)/y, q)", f_flip_cases),
        identity!("f-shift", "(l,k) shift of f_{a,b,c}, including negative l, k", f_shift_cases),
        identity!("g-shift", "(R,S,T) shift of g_{a,b,c,d,e,f}, including negative R, S, T", g_shift_cases),
        identity!(
            "g-flip",
            "g(x,y,z) = -q^(a+b+c+d+e+f)/(xyz) g(q^(2a+b+d)/x, q^(b+2c+e)/y, q^(d+e+2f)/z)",
            g_flip_cases
        ),
        identity!(
            "generic-shift",
            "finite rearrangement of a triple cone sum shifted by (R,S,T), summed directly",
            generic_shift_cases
        ),
        identity!(
            "thm-main-vs-direct",
            "general Appell-Lerch expansion of f_{a,b,c} for ac < b^2, a | b, c | b equals the double sum",
            thm_main_cases
        ),
        identity!("product-rearrangements", "theta products rewritten as eta quotients", rearrangement_cases),
        identity!(
            "f131-expansion-vs-direct",
            "f_{1,3,1}(x,y,q) = j(y;q) m(-q^5x/y^3,q^8,q^2y/x) + j(x;q) m(-q^5y/x^3,q^8,x/(q^2y)) + theta quotient",
            f131_cases
        ),
        identity!("j-elliptic", "j(q^n x;q) = (-1)^n q^(-C(n,2)) x^-n j(x;q)", j_elliptic_cases),
        identity!("j-inversion", "j(x;q) = j(q/x;q) = -x j(1/x;q)", j_inversion_cases),
        identity!("j-mod-inc", "j(x;q) = J1 j(x,qx,...,q^(n-1)x;q^n) / Jn^n", j_mod_inc_cases),
        identity!("j-mod-dec", "j(x^2;q^2) = J2 j(x;q) j(-x;q) / J1^2", j_mod_dec_cases),
        identity!("cor-f441", "four-term theta expansion of f_{4,4,1} equals the double sum", cor_f441),
        identity!("cor-f331", "three-term theta expansion of f_{3,3,1} equals the double sum", cor_f331),
        identity!(
            "h-cancellation",
            "h(-q^(A+m),q^(2+m)) - q^-m h(-q^(A-m),q^(2-m)) = 0 for (A,A,1) = (4,4,1), (3,3,1)",
            h_cancellation_cases
        ),
    ]
}

pub fn find(name: &str) -> Result<Identity> {
    registry()
        .into_iter()
        .find(|i| i.name == name)
        .ok_or_else(|| Error::UnknownIdentity(name.to_string()))
}

pub fn verify(name: &str, order: i64) -> Result<VerificationReport> {
    find(name)?.verify(order)
}

/// Verifies every identity, `jobs` at a time (`0` picks a default), and
/// returns the reports in registry order.
pub fn verify_all(order: i64, jobs: usize) -> Vec<Result<VerificationReport>> {
    let ids = registry();
    let run = || ids.par_iter().map(|i| i.verify(order)).collect();
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}

/// `(name, statement)` for every registered identity.
pub fn list() -> Vec<(&'static str, &'static str)> {
    registry().iter().map(|i| (i.name, i.statement)).collect()
}

/// `g_{1,3,1,3,3,1}(q,q,q,q)` minus its four Appell-Lerch terms:
///
/// `3 J(1,2) Jb(3,8) [m(-q^27,q^56,-1) + q^-2 m(-q^13,q^56,-1)]`
/// `- 3 J(1,2) Jb(1,8) [q^-7 m(-q^-1,q^56,-1) + q^-16 m(-q^-15,q^56,-1)]`.
pub fn conjecture_residual(order: i64) -> Result<Series> {
    let minus_one = nq(0);
    let appell = |shift: i64, x: QMonomial, jbar: i64, c: i64| {
        build_to_order(order, move |w| {
            let inner = times(q(shift), w, |v| m(x, 56, minus_one, v))?;
            Ok(inner.mul(&jacobi_j(1, 2, w)).mul(&jacobi_jbar(jbar, 8, w)).scale_i64(c))
        })
    };
    let mut acc = g(G131331, q(1), q(1), q(1), order);
    for (shift, x, jbar, c) in [(0, nq(27), 3, 3), (-2, nq(13), 3, 3), (-7, nq(-1), 1, -3), (-16, nq(-15), 1, -3)] {
        acc = acc.sub(&appell(shift, x, jbar, c).map_err(|e| e.context(format!("term m({x}, q^56, -1)")))?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn names_unique() {
        let names: Vec<_> = list().into_iter().map(|(n, _)| n).collect();
        let set: HashSet<_> = names.iter().collect();
        assert_eq!(set.len(), names.len());
        assert!(names.len() >= 40);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(verify("no-such", 10), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn small_order_suite() {
        for r in verify_all(20, 0) {
            let r = r.unwrap();
            assert!(r.passed, "{}: {:?}", r.name, r.first_mismatch);
        }
    }
}
