use serde::{Deserialize, Serialize};

use super::bounds::{ev_lower, sequence_violation};
use crate::error::{Error, Result};
use crate::geometry::PointConfiguration;
use crate::interpolation::{binomial, CertaintyPolicy, Engine, FatPointScheme};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaValue {
    pub value: usize,
    pub certified: bool,
}

/// `α(mZ)` for `m = 1..=len`, with a certification flag per entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaSequence {
    values: Vec<usize>,
    certified: Vec<bool>,
}

impl AlphaSequence {
    pub fn new(values: Vec<usize>, certified: Vec<bool>) -> Result<Self> {
        if values.len() != certified.len() {
            return Err(Error::LengthMismatch {
                expected: values.len(),
                found: certified.len(),
            });
        }
        Ok(Self { values, certified })
    }

    /// A sequence of values taken as exact.
    pub fn exact(values: Vec<usize>) -> Self {
        let certified = vec![true; values.len()];
        Self { values, certified }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn certified(&self) -> &[bool] {
        &self.certified
    }

    pub fn all_certified(&self) -> bool {
        self.certified.iter().all(|&c| c)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `α(mZ)`, 1-based.
    pub fn get(&self, m: usize) -> Option<usize> {
        m.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }
}

/// `β_0 = α(Z)` and the first differences `β_m = α((m+1)Z) - α(mZ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaSequence {
    pub beta0: usize,
    pub betas: Vec<usize>,
}

impl BetaSequence {
    /// `β_0, β_1, ...` as one list.
    pub fn full(&self) -> Vec<usize> {
        std::iter::once(self.beta0).chain(self.betas.iter().copied()).collect()
    }
}

pub fn beta_sequence(seq: &AlphaSequence) -> Result<BetaSequence> {
    if seq.len() < 2 {
        return Err(Error::Precondition("β-sequence needs at least two α values".into()));
    }
    let v = seq.values();
    let betas = v
        .windows(2)
        .map(|w| {
            w[1].checked_sub(w[0])
                .filter(|&b| b > 0)
                .ok_or_else(|| Error::Internal(format!("α-sequence not increasing: {v:?}")))
        })
        .collect::<Result<_>>()?;
    Ok(BetaSequence { beta0: v[0], betas })
}

/// Least `d` with more degree-`d` monomials than conditions for `mZ` on `s`
/// points; `α(mZ)` never exceeds it.
fn count_bound(s: usize, m: usize) -> usize {
    let conditions = s * binomial(m + 1, 2);
    (0..)
        .find(|&d| binomial(d + 2, 2) > conditions)
        .expect("unbounded search")
}

/// Least degree in `lo..=cap` with a nonzero form, probing `guess` first.
///
/// Full rank at a prime is exact, and a nonzero form of degree `d` gives one
/// of degree `d + 1`, so a modular zero at `d` rules out every degree up to
/// `d`. From a positive guess the scan walks down; from a zero it walks up.
/// Under the certified policy the modular candidate must lift to a rational
/// witness; otherwise the scan resumes above it.
fn search<T: Scalar>(
    engine: &Engine,
    scheme: &FatPointScheme<T>,
    lo: usize,
    cap: usize,
    guess: usize,
) -> Result<AlphaValue> {
    let guess = guess.clamp(lo, cap.max(lo));
    let mut start = lo;
    if guess > lo && guess <= cap {
        if engine.modular_positive(scheme, guess)? {
            let mut d = guess;
            while d > lo && engine.modular_positive(scheme, d - 1)? {
                d -= 1;
            }
            if let Some(found) = confirm(engine, scheme, d)? {
                return Ok(found);
            }
            start = d + 1;
        } else {
            start = guess + 1;
        }
    }
    for d in start..=cap {
        if !engine.modular_positive(scheme, d)? {
            continue;
        }
        if let Some(found) = confirm(engine, scheme, d)? {
            return Ok(found);
        }
    }
    Err(Error::Internal(format!(
        "no form of degree ≤ {cap} with multiplicity {} found",
        scheme.multiplicity()
    )))
}

/// Accepts a modular candidate: at once under the fast policy, through a
/// lifted witness under the certified one.
fn confirm<T: Scalar>(engine: &Engine, scheme: &FatPointScheme<T>, d: usize) -> Result<Option<AlphaValue>> {
    Ok(match engine.policy() {
        CertaintyPolicy::Fast => Some(AlphaValue {
            value: d,
            certified: false,
        }),
        CertaintyPolicy::Certified => engine.witness(scheme, d)?.map(|_| AlphaValue {
            value: d,
            certified: true,
        }),
    })
}

/// `α(mZ)`, searched between `m` and the monomial-count bound.
pub fn alpha<T: Scalar>(engine: &Engine, scheme: &FatPointScheme<T>) -> Result<AlphaValue> {
    let m = scheme.multiplicity();
    search(engine, scheme, m, count_bound(scheme.config().len(), m), m)
}

/// `α(mZ)` for `m = 1..=m_max`. Each search starts at the largest lower bound
/// implied by earlier entries and stops at the smallest upper bound
/// (`m·α(Z)`, `α(aZ) + α((m-a)Z)`, the monomial count). The finished
/// sequence is audited; an inequality failure is an internal error.
pub fn alpha_sequence<T: Scalar>(engine: &Engine, cfg: &PointConfiguration<T>, m_max: usize) -> Result<AlphaSequence> {
    if m_max == 0 {
        return Err(Error::Precondition("m_max must be at least 1".into()));
    }
    let s = cfg.len();
    let mut values: Vec<usize> = Vec::with_capacity(m_max);
    let mut certified = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let lo = values
            .iter()
            .enumerate()
            .map(|(i, &a)| ev_lower(i + 1, a, m))
            .chain([m, values.last().map_or(0, |&a| a + 1)])
            .max()
            .expect("nonempty");
        let cap = (1..m)
            .map(|a| values[a - 1] + values[m - a - 1])
            .chain([count_bound(s, m)])
            .min()
            .expect("nonempty");
        if lo > cap {
            return Err(Error::Internal(format!(
                "empty search window [{lo}, {cap}] for m = {m}"
            )));
        }
        // guess that the last increment repeats
        let guess = match values.as_slice() {
            [.., a, b] => b + (b - a),
            [a] => 2 * a,
            [] => lo,
        };
        let scheme = FatPointScheme::new(cfg.clone(), m)?;
        let found = search(engine, &scheme, lo, cap, guess)?;
        values.push(found.value);
        certified.push(found.certified);
    }
    if let Some(v) = sequence_violation(&values) {
        return Err(Error::Internal(format!("computed α-sequence {values:?} violates {v}")));
    }
    Ok(AlphaSequence { values, certified })
}
