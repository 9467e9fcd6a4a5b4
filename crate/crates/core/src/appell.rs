//! The Appell-Lerch function
//! `m(x, q^M, z) = j(z; q^M)^-1 Σ_r (-1)^r q^(M r(r-1)/2) z^r / (1 - q^(M(r-1)) x z)`
//! for monomial arguments, and its functional equations.

use std::fmt;

use crate::coeff::{sign_pow, Coeff};
use crate::error::{Error, Result};
use crate::monomial::QMonomial;
use crate::series::{build_to_order, QSeries};
use crate::theta::{eta_product, j, jtheta, ThetaArg};

/// Arguments of `m(x, q^modulus, z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AppellArgs {
    pub x: QMonomial,
    pub modulus: i64,
    pub z: QMonomial,
}

impl fmt::Display for AppellArgs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m({}, q^{}, {})", self.x, self.modulus, self.z)
    }
}

impl AppellArgs {
    pub fn new(x: QMonomial, modulus: i64, z: QMonomial) -> Self {
        AppellArgs { x, modulus, z }
    }

    fn sigma(&self) -> i64 {
        self.x.sign() * self.z.sign()
    }

    /// Exponent `M(r-1) + x.exp + z.exp` of the `r`-th denominator.
    fn denom_exp(&self, r: i64) -> i64 {
        self.modulus * (r - 1) + self.x.exp() + self.z.exp()
    }

    fn numer_exp(&self, r: i64) -> i64 {
        self.modulus * r * (r - 1) / 2 + self.z.exp() * r
    }

    /// Lowest exponent contributed by the `r`-th term of the sum.
    fn term_floor(&self, r: i64) -> i64 {
        self.numer_exp(r) + (-self.denom_exp(r)).max(0)
    }

    /// Checks that `j(z; q^M)` is nonzero and no denominator vanishes.
    pub fn validate(&self) -> Result<()> {
        if self.modulus < 1 {
            return Err(Error::Precondition(format!(
                "Appell-Lerch modulus must be positive, got {}",
                self.modulus
            )));
        }
        if ThetaArg::new(self.z, self.modulus).vanishes() {
            return Err(Error::ThetaZero(format!("j({}; q^{})", self.z, self.modulus)));
        }
        let s = self.x.exp() + self.z.exp();
        if self.sigma() == 1 && s.rem_euclid(self.modulus) == 0 {
            return Err(Error::Pole {
                x: self.x.to_string(),
                modulus: self.modulus,
                z: self.z.to_string(),
                r: 1 - s / self.modulus,
            });
        }
        Ok(())
    }

    fn floor_minimiser(&self) -> i64 {
        let mut r = (0.5 - self.z.exp() as f64 / self.modulus as f64).round() as i64;
        while self.term_floor(r - 1) < self.term_floor(r) {
            r -= 1;
        }
        while self.term_floor(r + 1) < self.term_floor(r) {
            r += 1;
        }
        r
    }
}

/// Default number of extra indices scanned past the last contributing one.
pub const RANGE_MARGIN: i64 = 2;

/// The bilateral sum without the `1/j(z; q^M)` normaliser, through `q^order`.
fn appell_numerator<T: Coeff>(args: &AppellArgs, order: i64, margin: i64) -> QSeries<T> {
    let sigma = args.sigma();
    // coefficients are accumulated doubled so that the 1/2 from a
    // denominator 1 + 1 stays an integer
    let mut terms: Vec<(i64, i64)> = Vec::new();
    let mut push_r = |r: i64| {
        let e = args.denom_exp(r);
        let n = args.numer_exp(r);
        let c = sign_pow(-args.z.sign(), r);
        match e.cmp(&0) {
            std::cmp::Ordering::Greater => {
                let mut k = 0;
                while n + e * k <= order {
                    terms.push((n + e * k, 2 * c * sign_pow(sigma, k)));
                    k += 1;
                }
            }
            std::cmp::Ordering::Less => {
                // 1/(1 - σq^E) = -σ q^-E / (1 - σ q^-E)
                let mut k = 0;
                while n - e * (k + 1) <= order {
                    terms.push((n - e * (k + 1), -2 * c * sign_pow(sigma, k + 1)));
                    k += 1;
                }
            }
            std::cmp::Ordering::Equal => {
                debug_assert_eq!(sigma, -1);
                if n <= order {
                    terms.push((n, c));
                }
            }
        }
    };
    let r0 = args.floor_minimiser();
    for dir in [1i64, -1] {
        let mut r = if dir == 1 { r0 } else { r0 - 1 };
        let mut beyond = 0;
        while beyond <= margin {
            if args.term_floor(r) <= order {
                push_r(r);
            } else {
                beyond += 1;
            }
            r += dir;
        }
    }
    QSeries::from_int_terms(terms, 2, order)
}

/// `m(x, q^M, z)` through `q^order`.
pub fn appell_m<T: Coeff>(args: AppellArgs, order: i64) -> Result<QSeries<T>> {
    appell_m_with_margin(args, order, RANGE_MARGIN)
}

/// [`appell_m`] with an explicit index-range safety margin.
pub fn appell_m_with_margin<T: Coeff>(args: AppellArgs, order: i64, margin: i64) -> Result<QSeries<T>> {
    args.validate()?;
    let theta = ThetaArg::new(args.z, args.modulus);
    let vj = theta.min_exponent();
    build_to_order(order, |w| {
        let num = appell_numerator::<T>(&args, w + vj, margin);
        num.div(&jtheta(theta, w + vj))
    })
}

/// `m(x, q^M, z) = m(x, q^M, q^M z)`.
pub fn appell_z_shift(args: AppellArgs) -> AppellArgs {
    AppellArgs {
        z: args.z.q_shift(args.modulus),
        ..args
    }
}

/// `m(x, q^M, z) = x^-1 m(x^-1, q^M, z^-1)`: returns the new arguments and
/// the prefactor `x^-1`.
pub fn appell_flip(args: AppellArgs) -> (AppellArgs, QMonomial) {
    (
        AppellArgs {
            x: args.x.inv(),
            z: args.z.inv(),
            ..args
        },
        args.x.inv(),
    )
}

/// `m(x, q^M, z) = constant + factor * m(args)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct XStep {
    pub constant: i64,
    pub factor: QMonomial,
    pub args: AppellArgs,
}

/// `m(x, q^M, z) = 1 - q^-M x m(q^-M x, q^M, z)`.
pub fn appell_x_step(args: AppellArgs) -> XStep {
    let lowered = args.x.q_shift(-args.modulus);
    XStep {
        constant: 1,
        factor: -lowered,
        args: AppellArgs { x: lowered, ..args },
    }
}

/// The theta quotient equal to `m(x, q^M, z1) - m(x, q^M, z0)`:
/// `z0 J_M^3 j(z1/z0) j(x z0 z1) / (j(z0) j(z1) j(x z0) j(x z1))`, all to base `q^M`.
pub fn appell_z_change<T: Coeff>(
    x: QMonomial,
    modulus: i64,
    z1: QMonomial,
    z0: QMonomial,
    order: i64,
) -> Result<QSeries<T>> {
    let den_args = [z0, z1, x * z0, x * z1];
    for d in den_args {
        let arg = ThetaArg::new(d, modulus);
        if arg.vanishes() {
            return Err(Error::ThetaZero(arg.to_string()));
        }
    }
    build_to_order(order, |w| {
        let num = eta_product::<T>(modulus, w)
            .pow(3)
            .mul(&j(z1 / z0, modulus, w))
            .mul(&j(x * z0 * z1, modulus, w))
            .mul(&z0.to_series(w));
        let mut den = QSeries::one(w);
        for d in den_args {
            den = den.mul(&j(d, modulus, w));
        }
        num.div(&den)
    })
}

/// Both sides of `m(x, q^M, z) = m(x, q^M, q^M z)`.
pub fn z_shift_sides<T: Coeff>(args: AppellArgs, order: i64) -> Result<(QSeries<T>, QSeries<T>)> {
    Ok((appell_m(args, order)?, appell_m(appell_z_shift(args), order)?))
}

/// Both sides of `m(x, q^M, z) = x^-1 m(x^-1, q^M, z^-1)`.
pub fn flip_sides<T: Coeff>(args: AppellArgs, order: i64) -> Result<(QSeries<T>, QSeries<T>)> {
    let (new, pre) = appell_flip(args);
    let rhs = build_to_order(order, |w| Ok(appell_m::<T>(new, w)?.mul(&pre.to_series(w))))?;
    Ok((appell_m(args, order)?, rhs))
}

/// Both sides of `m(q^M x, q^M, z) = 1 - x m(x, q^M, z)`.
pub fn x_shift_sides<T: Coeff>(args: AppellArgs, order: i64) -> Result<(QSeries<T>, QSeries<T>)> {
    let raised = AppellArgs {
        x: args.x.q_shift(args.modulus),
        ..args
    };
    let lhs = appell_m(raised, order)?;
    let rhs = build_to_order(order, |w| {
        Ok(QSeries::one(w).sub(&appell_m::<T>(args, w)?.mul(&args.x.to_series(w))))
    })?;
    Ok((lhs, rhs))
}

/// Both sides of the rewritten form `m(x, q^M, z) = 1 - q^-M x m(q^-M x, q^M, z)`.
pub fn x_step_sides<T: Coeff>(args: AppellArgs, order: i64) -> Result<(QSeries<T>, QSeries<T>)> {
    let step = appell_x_step(args);
    let rhs = build_to_order(order, |w| {
        Ok(QSeries::constant(T::from_i64(step.constant), w)
            .add(&appell_m::<T>(step.args, w)?.mul(&step.factor.to_series(w))))
    })?;
    Ok((appell_m(args, order)?, rhs))
}

/// Both sides of the change-of-`z` identity.
pub fn z_change_sides<T: Coeff>(
    x: QMonomial,
    modulus: i64,
    z1: QMonomial,
    z0: QMonomial,
    order: i64,
) -> Result<(QSeries<T>, QSeries<T>)> {
    let lhs = appell_m::<T>(AppellArgs::new(x, modulus, z1), order)?
        .sub(&appell_m(AppellArgs::new(x, modulus, z0), order)?);
    Ok((lhs, appell_z_change(x, modulus, z1, z0, order)?))
}
