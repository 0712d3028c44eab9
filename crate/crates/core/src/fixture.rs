//! Reference coefficient tables.
//!
//! One row per line: `knot-id, color, top-q-degree, c0, c1, ...`, with the
//! coefficients in descending powers of `q` starting at `top-q-degree`.
//! Blank lines and anything after `#` are ignored.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use thiserror::Error;

use crate::stability::ColoredSeries;

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: duplicate row for {knot} at color {color}")]
    Duplicate { line: usize, knot: String, color: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FixtureKey {
    pub knot: String,
    pub color: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureRow {
    pub top_q_degree: i64,
    pub coeffs: Vec<BigInt>,
}

impl FixtureRow {
    pub fn to_colored_series(&self, color: i64) -> ColoredSeries {
        ColoredSeries::from_coeffs(color, self.coeffs.clone())
    }
}

pub type FixtureTable = BTreeMap<FixtureKey, FixtureRow>;

pub fn parse_fixture(text: &str) -> Result<FixtureTable, FixtureError> {
    let mut out = FixtureTable::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split(',').map(str::trim).collect();
        let malformed = |message: String| FixtureError::Malformed { line, message };
        if fields.len() < 4 {
            return Err(malformed(format!("expected at least 4 fields, found {}", fields.len())));
        }
        if fields[0].is_empty() {
            return Err(malformed("empty knot id".into()));
        }
        let color: i64 = fields[1].parse().map_err(|e| malformed(format!("color {:?}: {e}", fields[1])))?;
        let top_q_degree: i64 =
            fields[2].parse().map_err(|e| malformed(format!("top degree {:?}: {e}", fields[2])))?;
        let coeffs = fields[3..]
            .iter()
            .map(|f| f.parse::<BigInt>().map_err(|e| malformed(format!("coefficient {f:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let key = FixtureKey { knot: fields[0].to_string(), color };
        if out.contains_key(&key) {
            return Err(FixtureError::Duplicate { line, knot: key.knot, color });
        }
        out.insert(key, FixtureRow { top_q_degree, coeffs });
    }
    Ok(out)
}

pub fn load_fixture(path: impl AsRef<Path>) -> Result<FixtureTable, FixtureError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| FixtureError::Io { path: path.display().to_string(), source })?;
    parse_fixture(&text)
}

/// Rows for `knot`, ordered by color.
pub fn rows_for<'a>(table: &'a FixtureTable, knot: &str) -> Vec<(i64, &'a FixtureRow)> {
    table.iter().filter(|(k, _)| k.knot == knot).map(|(k, row)| (k.color, row)).collect()
}

/// Serializes rows back into the line format.
pub fn format_row(knot: &str, color: i64, row: &FixtureRow) -> String {
    let mut s = format!("{knot}, {color}, {}", row.top_q_degree);
    for c in &row.coeffs {
        s.push_str(", ");
        s.push_str(&c.to_string());
    }
    s
}
