//! Inequalities every α-sequence obeys, used both to narrow the degree search
//! and to audit computed sequences.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

fn ratio(n: usize, d: usize) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `(α(Z) + 1) / 2`, a lower bound for the Waldschmidt constant.
pub fn chudnovsky_bound(alpha1: usize) -> Result<BigRational> {
    if alpha1 == 0 {
        return Err(Error::Precondition("α(Z) must be at least 1".into()));
    }
    Ok(ratio(alpha1 + 1, 2))
}

/// `(d - 1)(m + k) / (k - 1)`: the bound on `α((m+k)Z)` when it exceeds
/// `α(mZ)` by exactly `d`.
pub fn ev_gap_bound(m: usize, k: usize, d: usize) -> Result<BigRational> {
    if k < 2 || d < k || m == 0 {
        return Err(Error::Precondition(format!(
            "need d ≥ k ≥ 2 and m ≥ 1, got m = {m}, k = {k}, d = {d}"
        )));
    }
    Ok(ratio((d - 1) * (m + k), k - 1))
}

/// Least `α(mZ)` compatible with `α(nZ) = alpha_n` for some `n < m`.
pub(crate) fn ev_lower(n: usize, alpha_n: usize, m: usize) -> usize {
    (m * (alpha_n + 1)).div_ceil(n + 1)
}

/// The first inequality a purported α-sequence (`values[m-1] = α(mZ)`) breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceViolation {
    NotIncreasing { m: usize },
    Subadditivity { a: usize, b: usize },
    Chudnovsky { m: usize },
    Ev { n: usize, m: usize },
}

impl fmt::Display for SequenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotIncreasing { m } => write!(f, "α({}Z) ≥ α({m}Z)", m + 1),
            Self::Subadditivity { a, b } => write!(f, "α({}Z) > α({a}Z) + α({b}Z)", a + b),
            Self::Chudnovsky { m } => write!(f, "α({m}Z)/{m} < (α(Z)+1)/2"),
            Self::Ev { n, m } => write!(f, "α({m}Z)/{m} < (α({n}Z)+1)/({n}+1)"),
        }
    }
}

fn strictly_increasing(values: &[usize]) -> Option<SequenceViolation> {
    values
        .windows(2)
        .position(|w| w[1] <= w[0])
        .map(|i| SequenceViolation::NotIncreasing { m: i + 1 })
}

fn ev_violation(values: &[usize]) -> Option<SequenceViolation> {
    for m in 1..=values.len() {
        for n in 1..=m {
            // (α(n)+1)/(n+1) ≤ α(m)/m
            if (values[n - 1] + 1) * m > values[m - 1] * (n + 1) {
                return Some(SequenceViolation::Ev { n, m });
            }
        }
    }
    None
}

/// Strict increase, then the inequality `(α(nZ)+1)/(n+1) ≤ α(mZ)/m` for all
/// `n ≤ m` in range.
pub fn ev_check(values: &[usize]) -> bool {
    strictly_increasing(values).is_none() && ev_violation(values).is_none()
}

/// Full audit: strict increase, subadditivity, the Chudnovsky bound and the
/// `n ≤ m` inequality above.
pub fn sequence_violation(values: &[usize]) -> Option<SequenceViolation> {
    if let Some(v) = strictly_increasing(values) {
        return Some(v);
    }
    for a in 1..=values.len() {
        for b in a..=values.len() - a {
            if values[a + b - 1] > values[a - 1] + values[b - 1] {
                return Some(SequenceViolation::Subadditivity { a, b });
            }
        }
    }
    if let Some(&alpha1) = values.first() {
        for (i, &v) in values.iter().enumerate() {
            let m = i + 1;
            if v * 2 < (alpha1 + 1) * m {
                return Some(SequenceViolation::Chudnovsky { m });
            }
        }
    }
    ev_violation(values)
}
