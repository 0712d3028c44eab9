//! Serializable reports and their text, CSV and JSON renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// One truncated colored Jones polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub knot: String,
    pub color: i64,
    pub depth: usize,
    pub normalized: bool,
    /// Degree of the first coefficient, e.g. `"6"` or `"-3/2"`.
    pub top_q_degree: String,
    /// Descending powers of `q`, as decimal strings.
    pub coefficients: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeReport {
    pub pretzel: String,
    pub rows: Vec<CoefficientRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableRow {
    pub order: usize,
    /// Terms read off the data.
    pub observed: Vec<String>,
    /// Closed form the observed terms were checked against, if any.
    pub closed_form: Option<String>,
    /// Observed terms continued by the closed form; empty when none applies.
    pub extended: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizeReport {
    pub knot: String,
    pub colors: Vec<i64>,
    pub neck_multiplicity: Option<usize>,
    /// `"pretzel"`, `"inferred"` or `"none"`.
    pub neck_multiplicity_source: String,
    pub sequences: Vec<StableRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    /// Soft checks are reported but do not affect the exit code.
    pub hard: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suites: Vec<String>,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn hard_failures(&self) -> usize {
        self.checks.iter().filter(|c| c.hard && !c.passed).count()
    }

    pub fn passed(&self) -> bool {
        self.hard_failures() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareReport {
    pub graph_a: String,
    pub graph_b: String,
    pub m: u32,
    pub reduced_a: String,
    pub reduced_b: String,
    pub same_higher_stability: bool,
}

/// Pretty JSON with keys in sorted order and a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("reports serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

pub fn compute_text(r: &ComputeReport) -> String {
    let mut s = format!("pretzel P(-{})\n", r.pretzel.replace(',', ",-"));
    for row in &r.rows {
        let _ = writeln!(
            s,
            "color {} ({} terms{}, top q^{}): {}",
            row.color,
            row.depth,
            if row.normalized { ", normalized" } else { "" },
            row.top_q_degree,
            row.coefficients.join(" ")
        );
    }
    s
}

pub fn compute_csv(r: &ComputeReport) -> String {
    let mut s = String::from("# knot-id, color, top-q-degree, c0, c1, ...\n");
    for row in &r.rows {
        let _ = writeln!(s, "{}, {}, {}, {}", row.knot, row.color, row.top_q_degree, row.coefficients.join(", "));
    }
    s
}

pub fn stabilize_text(r: &StabilizeReport) -> String {
    let colors: Vec<String> = r.colors.iter().map(i64::to_string).collect();
    let mut s = format!("{} colors {}\n", r.knot, colors.join(","));
    if let Some(m) = r.neck_multiplicity {
        let _ = writeln!(s, "neck multiplicity m = {m} ({})", r.neck_multiplicity_source);
    }
    for row in &r.sequences {
        let _ = write!(s, "T{} [{} observed]: {}", row.order, row.observed.len(), row.observed.join(" "));
        if !row.extended.is_empty() {
            let _ = write!(s, "\n   extended by {}: {}", row.closed_form.as_deref().unwrap_or("?"), row.extended.join(" "));
        }
        s.push('\n');
    }
    s
}

pub fn stabilize_csv(r: &StabilizeReport) -> String {
    let mut s = String::from("# order, kind, c0, c1, ...\n");
    for row in &r.sequences {
        let _ = writeln!(s, "T{}, observed, {}", row.order, row.observed.join(", "));
        if !row.extended.is_empty() {
            let _ = writeln!(s, "T{}, extended, {}", row.order, row.extended.join(", "));
        }
    }
    s
}

pub fn verify_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let status = match (c.passed, c.hard) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "NOTE",
        };
        let _ = writeln!(s, "{status} [{}] {}: {}", c.suite, c.name, c.detail);
    }
    let total = r.checks.len();
    let _ = writeln!(s, "{} of {total} checks passed, {} hard failures", total - r.checks.iter().filter(|c| !c.passed).count(), r.hard_failures());
    s
}

pub fn verify_csv(r: &VerifyReport) -> String {
    let mut s = String::from("# suite, name, passed, hard, detail\n");
    for c in &r.checks {
        let _ = writeln!(s, "{}, {}, {}, {}, {}", c.suite, c.name.replace(',', ";"), c.passed, c.hard, c.detail.replace(',', ";"));
    }
    s
}

pub fn compare_text(r: &CompareReport) -> String {
    format!(
        "{}-reduced: {} | {}\nsame higher stability at m={}: {}\n",
        r.m + 1,
        r.reduced_a,
        r.reduced_b,
        r.m,
        r.same_higher_stability
    )
}
