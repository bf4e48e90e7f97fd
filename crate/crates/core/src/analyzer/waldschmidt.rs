use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::sequence::{AlphaSequence, BetaSequence};
use crate::error::{Error, Result};
use crate::scalar::{option_rational_string, rational_string};

/// A repeating tail of the full β-list `β_0, β_1, ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Period {
    /// Index into the full β-list where the repetition starts.
    pub start: usize,
    pub length: usize,
    pub sum: usize,
}

/// Bounds `max (α(mZ)+1)/(m+1) ≤ α̂ ≤ min α(mZ)/m` over the computed range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WaldschmidtInterval {
    #[serde(with = "rational_string")]
    pub lower: BigRational,
    pub lower_at: usize,
    #[serde(with = "rational_string")]
    pub upper: BigRational,
    pub upper_at: usize,
    /// `sum / length` of a detected period, when it equals the upper bound.
    /// Never a certified value.
    #[serde(with = "option_rational_string")]
    pub conjectured: Option<BigRational>,
    pub period: Option<Period>,
}

impl WaldschmidtInterval {
    pub fn exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, value: &BigRational) -> bool {
        &self.lower <= value && value <= &self.upper
    }
}

fn ratio(n: usize, d: usize) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shortest period (then earliest start) spanning at least two full
/// repetitions of the tail whose mean matches `target`.
fn detect_period(full: &[usize], target: &BigRational) -> Option<Period> {
    let n = full.len();
    for q in 1..=n / 2 {
        for start in 0..=n - 2 * q {
            let periodic = (start + q..n).all(|j| full[j] == full[j - q]);
            if !periodic {
                continue;
            }
            let sum: usize = full[start..start + q].iter().sum();
            if &ratio(sum, q) == target {
                return Some(Period { start, length: q, sum });
            }
        }
    }
    None
}

pub fn waldschmidt_interval(seq: &AlphaSequence) -> Result<WaldschmidtInterval> {
    if seq.is_empty() {
        return Err(Error::Precondition("empty α-sequence".into()));
    }
    let mut lower = (ratio(0, 1), 0);
    let mut upper: Option<(BigRational, usize)> = None;
    for (i, &a) in seq.values().iter().enumerate() {
        let m = i + 1;
        let lo = ratio(a + 1, m + 1);
        if lo > lower.0 {
            lower = (lo, m);
        }
        let up = ratio(a, m);
        if upper.as_ref().is_none_or(|(u, _)| &up < u) {
            upper = Some((up, m));
        }
    }
    let (upper, upper_at) = upper.expect("nonempty");
    let full = BetaSequence {
        beta0: seq.values()[0],
        betas: seq.values().windows(2).map(|w| w[1].saturating_sub(w[0])).collect(),
    }
    .full();
    let period = detect_period(&full, &upper);
    Ok(WaldschmidtInterval {
        lower: lower.0,
        lower_at: lower.1,
        conjectured: period.map(|p| ratio(p.sum, p.length)),
        upper,
        upper_at,
        period,
    })
}
