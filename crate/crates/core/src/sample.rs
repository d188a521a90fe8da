//! Observed samples and plain-text ingestion.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Failures while reading or validating observations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DataError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("line {line}: cannot parse {content:?} as a number")]
    Parse { line: usize, content: String },

    #[error("line {line}: observation {value} is not strictly positive")]
    NonPositive { line: usize, value: f64 },

    #[error("line {line}: expected a single column, found {content:?}")]
    MultiColumn { line: usize, content: String },

    #[error("no observations found")]
    Empty,
}

/// Strictly positive observations, sorted ascending, with a note on where
/// they came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    values: Vec<f64>,
    source: String,
}

impl Sample {
    /// Sorts `values` and checks that each one is finite and positive.
    pub fn new(values: Vec<f64>, source: impl Into<String>) -> Result<Self, DataError> {
        if values.is_empty() {
            return Err(DataError::Empty);
        }
        for (i, &v) in values.iter().enumerate() {
            if !(v > 0.0 && v.is_finite()) {
                return Err(DataError::NonPositive { line: i + 1, value: v });
            }
        }
        Ok(Self::from_positive(values, source.into()))
    }

    pub(crate) fn from_positive(mut values: Vec<f64>, source: String) -> Self {
        values.sort_by(f64::total_cmp);
        Self { values, source }
    }

    /// Parses newline-delimited decimals. Blank lines are skipped and a
    /// non-numeric first line is taken as a column header.
    pub fn parse(text: &str, source: impl Into<String>) -> Result<Self, DataError> {
        let mut values = Vec::new();
        let mut seen_first = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let field = raw.trim().trim_start_matches('\u{feff}');
            if field.is_empty() {
                continue;
            }
            let first = !seen_first;
            seen_first = true;
            let field = field.strip_suffix(',').unwrap_or(field).trim();
            if field.contains(',') || field.contains('\t') || field.contains(';') {
                return Err(DataError::MultiColumn { line, content: raw.to_string() });
            }
            let field = field.trim_matches('"');
            match field.parse::<f64>() {
                Ok(v) if v > 0.0 && v.is_finite() => values.push(v),
                Ok(v) => return Err(DataError::NonPositive { line, value: v }),
                Err(_) if first && looks_like_header(field) => continue,
                Err(_) => return Err(DataError::Parse { line, content: raw.to_string() }),
            }
        }
        if values.is_empty() {
            return Err(DataError::Empty);
        }
        Ok(Self::from_positive(values, source.into()))
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, DataError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| DataError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text, path.display().to_string())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.n() as f64
    }

    /// Middle order statistic (average of the two middle ones for even n).
    pub fn median(&self) -> f64 {
        let n = self.n();
        if n % 2 == 1 {
            self.values[n / 2]
        } else {
            0.5 * (self.values[n / 2 - 1] + self.values[n / 2])
        }
    }
}

impl fmt::Display for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} observations from {}", self.n(), self.source)
    }
}

/// A header has at least one letter; anything else that fails to parse is
/// a data error.
fn looks_like_header(field: &str) -> bool {
    field.chars().any(|c| c.is_alphabetic())
}

const GASTRIC_CANCER: &str = include_str!("../data/gastric_cancer.txt");

/// Survival times in days of 45 gastric-cancer patients treated with
/// chemotherapy alone (Gastrointestinal Tumor Study Group, as tabulated by
/// Stablein and Koutrouvelis, 1985).
pub fn gastric_cancer() -> Sample {
    Sample::parse(GASTRIC_CANCER, "bundled gastric-cancer survival times")
        .expect("bundled dataset is valid")
}
