//! Bezout decomposition of numerical divisor classes.
//!
//! A divisor `D = (d; m_1, ..., m_s)` is reduced against curve classes
//! `C_i = (c_i; m^i_1, ..., m^i_s)`: whenever `e_i = Σ_j m_j m^i_j` exceeds
//! `d_i = d·c_i`, the curve must be a component of `D` and is subtracted.
//! Everything here is numerical; irreducibility of the curves is the
//! caller's assumption.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ConfigurationFile;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    pub degree: i64,
    pub mults: Vec<i64>,
}

impl DivisorClass {
    pub fn new(degree: i64, mults: Vec<i64>) -> Self {
        Self { degree, mults }
    }

    /// Whether degree and every multiplicity are nonnegative.
    pub fn is_effective(&self) -> bool {
        self.degree >= 0 && self.mults.iter().all(|&m| m >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.degree == 0 && self.mults.iter().all(|&m| m == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveClass {
    pub degree: i64,
    pub mults: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
}

impl CurveClass {
    pub fn new(degree: i64, mults: Vec<i64>, tag: Option<String>) -> Result<Self> {
        let curve = Self { degree, mults, tag };
        curve.validate()?;
        Ok(curve)
    }

    fn validate(&self) -> Result<()> {
        if self.degree < 1 {
            return Err(Error::Precondition(format!("curve degree {} < 1", self.degree)));
        }
        if self.mults.iter().any(|&m| m < 0) {
            return Err(Error::Precondition("curve multiplicities must be nonnegative".into()));
        }
        Ok(())
    }

    fn same_class(&self, other: &CurveClass) -> bool {
        self.degree == other.degree && self.mults == other.mults
    }
}

/// Which violating curves a round subtracts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionOrder {
    /// Every violating curve once per round.
    Simultaneous,
    /// One violating curve (class) per round, chosen by a seeded generator.
    Single { seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    /// Curve indices subtracted in this round.
    pub subtracted: Vec<usize>,
    pub degree_after: i64,
    /// The divisor left after the round has a negative degree or multiplicity.
    pub non_effective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutDecomposition {
    pub divisor: DivisorClass,
    pub coeffs: Vec<i64>,
    pub residual: DivisorClass,
    pub trace: Vec<Round>,
    pub notes: Vec<String>,
}

fn check_lengths(d: &DivisorClass, curves: &[CurveClass]) -> Result<()> {
    for c in curves {
        if c.mults.len() != d.mults.len() {
            return Err(Error::LengthMismatch {
                expected: d.mults.len(),
                found: c.mults.len(),
            });
        }
    }
    Ok(())
}

fn score(d: &DivisorClass, c: &CurveClass) -> (i64, i64) {
    let e = d.mults.iter().zip(&c.mults).map(|(a, b)| a * b).sum();
    (d.degree * c.degree, e)
}

/// `(d_i, e_i) = (d·c_i, Σ_j m_j m^i_j)` for each curve.
pub fn bezout_step_scores(d: &DivisorClass, curves: &[CurveClass]) -> Result<Vec<(i64, i64)>> {
    check_lengths(d, curves)?;
    Ok(curves.iter().map(|c| score(d, c)).collect())
}

/// Groups of indices of numerically identical curves, in order of first
/// appearance.
fn class_groups(curves: &[CurveClass]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, c) in curves.iter().enumerate() {
        match groups.iter_mut().find(|g| curves[g[0]].same_class(c)) {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    groups
}

fn subtract(d: &mut DivisorClass, c: &CurveClass) {
    d.degree -= c.degree;
    for (m, cm) in d.mults.iter_mut().zip(&c.mults) {
        *m -= cm;
    }
}

/// Repeatedly subtracts curves with `e_i > d_i` until none is left.
///
/// Numerically identical curves are merged and always subtracted together.
/// Residuals that turn non-effective are flagged in the trace, not clamped.
/// Fails with [`Error::RoundCapExceeded`] after `max(d, 0)·r + 1` rounds.
pub fn bezout_decompose(d: &DivisorClass, curves: &[CurveClass], order: ReductionOrder) -> Result<BezoutDecomposition> {
    check_lengths(d, curves)?;
    for c in curves {
        c.validate()?;
    }
    let groups = class_groups(curves);
    let mut notes = Vec::new();
    for g in groups.iter().filter(|g| g.len() > 1) {
        notes.push(format!(
            "curves {g:?} are numerically identical and share one coefficient"
        ));
    }
    if !d.is_effective() {
        notes.push("input divisor is numerically non-effective".into());
    }
    let cap = (d.degree.max(0) as usize) * curves.len() + 1;
    let mut rng = match order {
        ReductionOrder::Single { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        ReductionOrder::Simultaneous => None,
    };
    let mut current = d.clone();
    let mut coeffs = vec![0i64; curves.len()];
    let mut trace = Vec::new();
    loop {
        let violating: Vec<&Vec<usize>> = groups
            .iter()
            .filter(|g| {
                let (di, ei) = score(&current, &curves[g[0]]);
                ei > di
            })
            .collect();
        if violating.is_empty() {
            break;
        }
        if trace.len() == cap {
            return Err(Error::RoundCapExceeded(cap));
        }
        let chosen: Vec<&Vec<usize>> = match rng.as_mut() {
            Some(r) => vec![violating[r.gen_range(0..violating.len())]],
            None => violating,
        };
        let mut subtracted: Vec<usize> = Vec::new();
        for g in chosen {
            for &i in g {
                subtract(&mut current, &curves[i]);
                coeffs[i] += 1;
                subtracted.push(i);
            }
        }
        subtracted.sort_unstable();
        trace.push(Round {
            subtracted,
            degree_after: current.degree,
            non_effective: !current.is_effective(),
        });
    }
    Ok(BezoutDecomposition {
        divisor: d.clone(),
        coeffs,
        residual: current,
        trace,
        notes,
    })
}

fn recomputed_residual(dec: &BezoutDecomposition, curves: &[CurveClass]) -> Option<DivisorClass> {
    if dec.coeffs.len() != curves.len() || check_lengths(&dec.divisor, curves).is_err() {
        return None;
    }
    let mut b = dec.divisor.clone();
    for (a, c) in dec.coeffs.iter().zip(curves) {
        b.degree -= a * c.degree;
        for (m, cm) in b.mults.iter_mut().zip(&c.mults) {
            *m -= a * cm;
        }
    }
    Some(b)
}

/// `D = Σ a_i C_i + B` in degree and in every multiplicity.
pub fn reconstruction_holds(dec: &BezoutDecomposition, curves: &[CurveClass]) -> bool {
    recomputed_residual(dec, curves).is_some_and(|b| b == dec.residual)
}

/// `B·C_i ≥ Σ_j (m_j - Σ_k a_k m^k_j) m^i_j` for every curve, with `B`
/// recomputed from the divisor and the coefficients.
pub fn check_residual_inequality(dec: &BezoutDecomposition, curves: &[CurveClass]) -> bool {
    let Some(b) = recomputed_residual(dec, curves) else {
        return false;
    };
    curves.iter().all(|c| {
        let (di, ei) = score(&b, c);
        di >= ei
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: usize,
    pub seed: u64,
    pub coeffs: Vec<i64>,
    pub residual: DivisorClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfluenceReport {
    pub trials: usize,
    pub identical: bool,
    pub reference: BezoutDecomposition,
    pub counterexamples: Vec<Counterexample>,
}

/// Compares the simultaneous decomposition with `trials` single-step runs
/// whose seeds derive from `seed`.
pub fn confluence_test(d: &DivisorClass, curves: &[CurveClass], trials: usize, seed: u64) -> Result<ConfluenceReport> {
    if trials == 0 {
        return Err(Error::Precondition("confluence test needs at least one trial".into()));
    }
    let reference = bezout_decompose(d, curves, ReductionOrder::Simultaneous)?;
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexamples = Vec::new();
    for trial in 0..trials {
        let s: u64 = seeds.gen();
        let dec = bezout_decompose(d, curves, ReductionOrder::Single { seed: s })?;
        if dec.coeffs != reference.coeffs || dec.residual != reference.residual {
            counterexamples.push(Counterexample {
                trial,
                seed: s,
                coeffs: dec.coeffs,
                residual: dec.residual,
            });
        }
    }
    Ok(ConfluenceReport {
        trials,
        identical: counterexamples.is_empty(),
        reference,
        counterexamples,
    })
}

/// Divisor and curve input: `{"config": ..., "divisor": ..., "curves": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutInput {
    pub config: ConfigurationFile,
    pub divisor: DivisorClass,
    pub curves: Vec<CurveClass>,
}

impl BezoutInput {
    pub fn from_json(text: &str) -> Result<Self> {
        let input: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let s = input.config.points.len();
        if input.divisor.mults.len() != s {
            return Err(Error::LengthMismatch {
                expected: s,
                found: input.divisor.mults.len(),
            });
        }
        check_lengths(&input.divisor, &input.curves)?;
        for c in &input.curves {
            c.validate()?;
        }
        Ok(input)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}
