use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::sequence::{alpha_sequence, beta_sequence, AlphaSequence, BetaSequence};
use super::waldschmidt::{waldschmidt_interval, WaldschmidtInterval};
use crate::error::{Error, Result};
use crate::geometry::{
    collinear, collinear_plus_one, collinear_subsets, is_quasi_star, is_star, line_through, PointConfiguration,
};
use crate::interpolation::{Engine, FatPointScheme};
use crate::scalar::{format_rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum ClassTag {
    Line,
    Conic,
    FourStar,
    ThreeQuasiStar,
    CollinearPlusOne { k: usize },
    Unclassified,
}

impl ClassTag {
    /// The Waldschmidt constant the class is known to have, and whether it is
    /// only an upper bound.
    pub fn known_value(&self) -> Option<(BigRational, bool)> {
        let r = |n: usize, d: usize| BigRational::new(BigInt::from(n), BigInt::from(d));
        match self {
            Self::Line => Some((r(1, 1), false)),
            Self::Conic => Some((r(2, 1), true)),
            Self::FourStar => Some((r(2, 1), false)),
            Self::ThreeQuasiStar => Some((r(9, 4), false)),
            Self::CollinearPlusOne { k } => Some((r(2 * k - 1, *k), false)),
            Self::Unclassified => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    #[serde(flatten)]
    pub tag: ClassTag,
    pub evidence: Vec<String>,
}

/// Everything computed for one configuration up to `m_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub alpha: Vec<usize>,
    pub certified: Vec<bool>,
    pub beta0: usize,
    pub beta: Vec<usize>,
    pub waldschmidt: WaldschmidtInterval,
    pub classification: Option<Classification>,
}

impl Analysis {
    pub fn from_sequence(seq: &AlphaSequence) -> Result<Self> {
        let beta = if seq.len() >= 2 {
            beta_sequence(seq)?
        } else {
            BetaSequence {
                beta0: seq.values().first().copied().unwrap_or(0),
                betas: Vec::new(),
            }
        };
        Ok(Self {
            alpha: seq.values().to_vec(),
            certified: seq.certified().to_vec(),
            beta0: beta.beta0,
            beta: beta.betas,
            waldschmidt: waldschmidt_interval(seq)?,
            classification: None,
        })
    }
}

fn nine_quarters() -> BigRational {
    BigRational::new(9.into(), 4.into())
}

fn rich_lines<T: Scalar>(cfg: &PointConfiguration<T>, size: usize) -> String {
    let lines: Vec<String> = collinear_subsets(cfg.points(), size)
        .into_iter()
        .filter(|s| s.indices.len() == size)
        .map(|s| format!("{} through {:?}", s.line, s.indices))
        .collect();
    lines.join("; ")
}

fn detect<T: Scalar>(engine: &Engine, cfg: &PointConfiguration<T>) -> Result<Classification> {
    let pts = cfg.points();
    let (tag, evidence) = if collinear(pts) {
        let line = match pts {
            [p, q, ..] => format!("all points on {}", line_through(p, q)?),
            _ => "a single point".to_string(),
        };
        (ClassTag::Line, line)
    } else if let Some(k) = collinear_plus_one(pts) {
        // such sets always lie on a reducible conic, so they are tested first
        let sub = collinear_subsets(pts, 2)
            .into_iter()
            .find(|s| s.indices.len() == k)
            .expect("detector found the line");
        let off = (0..pts.len())
            .find(|i| !sub.indices.contains(i))
            .expect("one point off the line");
        (
            ClassTag::CollinearPlusOne { k },
            format!("points {:?} on {}, point {off} off it", sub.indices, sub.line),
        )
    } else if let Some(conic) = conic_witness(engine, cfg)? {
        (ClassTag::Conic, format!("conic {conic} through all points"))
    } else if is_star(pts, 4) {
        (ClassTag::FourStar, format!("star lines: {}", rich_lines(cfg, 3)))
    } else if is_quasi_star(pts, 3) {
        (
            ClassTag::ThreeQuasiStar,
            format!("lines with three points: {}", rich_lines(cfg, 3)),
        )
    } else {
        (ClassTag::Unclassified, String::new())
    };
    Ok(Classification {
        tag,
        evidence: if evidence.is_empty() {
            Vec::new()
        } else {
            vec![evidence]
        },
    })
}

fn conic_witness<T: Scalar>(engine: &Engine, cfg: &PointConfiguration<T>) -> Result<Option<String>> {
    if !crate::geometry::on_common_conic(cfg.points()) {
        return Ok(None);
    }
    let scheme = FatPointScheme::new(cfg.clone(), 1)?;
    let form = engine
        .witness(&scheme, 2)?
        .ok_or_else(|| Error::Internal("points on a conic but no conic found".into()))?;
    Ok(Some(form.to_string()))
}

/// Geometric detectors first (line, one point off a line, conic, 4-star,
/// 3-quasi-star), then the Waldschmidt interval up to `m_max`. The interval
/// must contain the known constant of a detected class, and an unclassified
/// configuration must not have `α(mZ)/m ≤ 9/4` for any computed `m`; either
/// failure is reported as an internal error.
pub fn classify<T: Scalar>(engine: &Engine, cfg: &PointConfiguration<T>, m_max: usize) -> Result<Analysis> {
    if m_max < 2 {
        return Err(Error::Precondition("classification needs m_max ≥ 2".into()));
    }
    let mut class = detect(engine, cfg)?;
    let mut analysis = Analysis::from_sequence(&alpha_sequence(engine, cfg, m_max)?)?;
    let w = &analysis.waldschmidt;
    match class.tag.known_value() {
        Some((value, upper_only)) => {
            let consistent = if upper_only {
                w.lower <= value
            } else {
                w.contains(&value)
            };
            if !consistent {
                return Err(Error::Internal(format!(
                    "{:?} should have Waldschmidt constant {}{}, interval is [{}, {}]",
                    class.tag,
                    if upper_only { "≤ " } else { "" },
                    format_rational(&value),
                    format_rational(&w.lower),
                    format_rational(&w.upper)
                )));
            }
            class.evidence.push(format!(
                "interval [{}, {}] {} {}",
                format_rational(&w.lower),
                format_rational(&w.upper),
                if upper_only { "starts at or below" } else { "contains" },
                format_rational(&value)
            ));
            if class.tag == ClassTag::ThreeQuasiStar {
                class
                    .evidence
                    .push("whether 9/4 characterizes the 3-quasi-star is open; no verdict".into());
            }
        }
        None => {
            if w.upper <= nine_quarters() {
                return Err(Error::Internal(format!(
                    "α({}Z)/{} = {} ≤ 9/4 but no low class was detected",
                    w.upper_at,
                    w.upper_at,
                    format_rational(&w.upper)
                )));
            }
            if w.lower > nine_quarters() {
                class.evidence.push(format!(
                    "lower bound {} > 9/4 at m = {}",
                    format_rational(&w.lower),
                    w.lower_at
                ));
            } else {
                class.evidence.push(format!(
                    "lower bound {} at m = {} does not yet exceed 9/4",
                    format_rational(&w.lower),
                    w.lower_at
                ));
            }
        }
    }
    analysis.classification = Some(class);
    Ok(analysis)
}
