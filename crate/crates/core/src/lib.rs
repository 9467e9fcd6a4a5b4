//! Exact q-series engine for theta products, Appell-Lerch functions and
//! Hecke-type double and triple sums.
//!
//! Every quantity is a [`QSeries`]: a truncated Laurent series in `q` whose
//! coefficients live in a [`Coeff`] field. The math is generic over that
//! field; [`Series`] (exact rationals) is what the identity catalog and the
//! command-line tool use.

pub mod appell;
pub mod catalog;
pub mod closed_forms;
pub mod coeff;
pub mod error;
pub mod eulerian;
pub mod hecke;
pub mod lattice;
pub mod monomial;
pub mod report;
pub mod series;
pub mod theta;

pub use coeff::Coeff;
pub use error::{Error, Result};
pub use monomial::QMonomial;
pub use report::VerificationReport;
pub use series::QSeries;

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;
/// Series with exact rational coefficients.
pub type Series = QSeries<Rational>;
/// Series with double-precision coefficients.
pub type SeriesF64 = QSeries<f64>;

/// Working order used when none is given.
pub const DEFAULT_ORDER: i64 = 100;
