use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::point::ProjectivePoint;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Scalar};

/// An ordered, nonempty set of pairwise distinct points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfiguration<T> {
    points: Vec<ProjectivePoint<T>>,
    label: Option<String>,
}

impl<T: Scalar> PointConfiguration<T> {
    pub fn new(points: Vec<ProjectivePoint<T>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyConfiguration);
        }
        let mut seen = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if let Some(&first) = seen.get(p) {
                return Err(Error::DuplicatePoint { first, second: i });
            }
            seen.insert(p, i);
        }
        Ok(Self { points, label: None })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn points(&self) -> &[ProjectivePoint<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// The configuration with its points reordered by `order`, a permutation of `0..len`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let points = order
            .iter()
            .map(|&i| {
                self.points
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::Precondition(format!("index {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        if points.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: points.len(),
            });
        }
        let mut cfg = Self::new(points)?;
        cfg.label = self.label.clone();
        Ok(cfg)
    }

    pub fn to_file(&self) -> ConfigurationFile {
        ConfigurationFile {
            label: self.label.clone(),
            points: self
                .points
                .iter()
                .map(|p| {
                    let [x, y, z] = p.coords();
                    [x, y, z].map(|c| format_rational(&c.to_rational()))
                })
                .collect(),
        }
    }

    pub fn from_file(file: &ConfigurationFile) -> Result<Self> {
        let points = file
            .points
            .iter()
            .enumerate()
            .map(|(i, triple)| {
                let parse = |s: &String| {
                    let q = parse_rational(s).ok_or_else(|| Error::Parse(format!("point {i}: bad rational {s:?}")))?;
                    T::try_from_rational(&q).ok_or_else(|| Error::Parse(format!("point {i}: {s} not representable")))
                };
                let [x, y, z] = triple;
                ProjectivePoint::new(parse(x)?, parse(y)?, parse(z)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut cfg = Self::new(points)?;
        cfg.label = file.label.clone();
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ConfigurationFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

/// On-disk form: `{"label": ..., "points": [["num/den", "num/den", "num/den"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub points: Vec<[String; 3]>,
}
