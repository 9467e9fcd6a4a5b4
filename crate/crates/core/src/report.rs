use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::Result;
use crate::series::QSeries;

/// Where a failed check first disagreed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchRecord {
    /// Label of the failing case within a batch, empty for single checks.
    pub case: String,
    pub exponent: i64,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub order_checked: i64,
    pub passed: bool,
    pub cases: usize,
    pub first_mismatch: Option<MismatchRecord>,
    /// Wall-clock time in seconds.
    pub wall_time: f64,
}

impl VerificationReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report encoding is infallible")
    }
}

/// Coefficientwise comparison of one case through `q^order`.
pub fn compare_case<T: Coeff>(
    case: &str,
    lhs: &QSeries<T>,
    rhs: &QSeries<T>,
    order: i64,
) -> Result<Option<MismatchRecord>> {
    Ok(lhs.compare_to_order(rhs, order)?.map(|m| MismatchRecord {
        case: case.to_string(),
        exponent: m.exponent,
        lhs: m.lhs.to_text(),
        rhs: m.rhs.to_text(),
    }))
}

/// Runs a batch of `(label, lhs, rhs)` builders and folds them into one report.
pub fn run_cases<T, I, F>(name: &str, order: i64, cases: I) -> Result<VerificationReport>
where
    T: Coeff,
    I: IntoIterator<Item = (String, F)>,
    F: FnOnce() -> Result<(QSeries<T>, QSeries<T>)>,
{
    let start = std::time::Instant::now();
    let mut count = 0;
    let mut first_mismatch = None;
    for (label, build) in cases {
        count += 1;
        let (lhs, rhs) = build()?;
        if let Some(m) = compare_case(&label, &lhs, &rhs, order)? {
            first_mismatch = Some(m);
            break;
        }
    }
    Ok(VerificationReport {
        name: name.to_string(),
        order_checked: order,
        passed: first_mismatch.is_none(),
        cases: count,
        first_mismatch,
        wall_time: start.elapsed().as_secs_f64(),
    })
}
