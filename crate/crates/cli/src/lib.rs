//! Library side of the `cjones` command: configuration, the compute,
//! stabilize and compare commands, and the verification suites.

pub mod report;
pub mod verify;

use std::env;
use std::path::PathBuf;

use colored_jones::fixture::{load_fixture, rows_for, FixtureError};
use colored_jones::graphs::{m_reduce, same_higher_stability, GraphError, Multigraph};
use colored_jones::jones::{max_depth, JonesError};
use colored_jones::series::QDegree;
use colored_jones::stability::{
    closed_form_head, closed_form_neck, extract_next_stable, ColoredSeries, StabilityError, StableSequence,
};
use colored_jones::{truncated_colored_jones, PretzelSpec};
use num_bigint_string::to_strings;
use rayon::prelude::*;
use thiserror::Error;

use report::{CoefficientRow, CompareReport, ComputeReport, StabilizeReport, StableRow};

/// Environment variable naming the directory that holds `colored_jones.txt`.
pub const FIXTURE_DIR_ENV: &str = "CJONES_FIXTURE_DIR";
pub const FIXTURE_FILE: &str = "colored_jones.txt";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Jones(#[from] JonesError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    /// `2` for bad invocations, `1` for everything the data disagreed with.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Graph(_) => 2,
            CliError::Jones(JonesError::DepthOutOfRange { .. } | JonesError::InvalidSpec(_) | JonesError::ColorTooSmall(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Text,
}

impl std::str::FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(CliError::Usage(format!("unknown format {other:?} (json, csv, text)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Depth {
    #[default]
    Max,
    Fixed(usize),
}

impl std::str::FromStr for Depth {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "max" {
            return Ok(Depth::Max);
        }
        s.parse().map(Depth::Fixed).map_err(|_| CliError::Usage(format!("depth must be a positive integer or \"max\", got {s:?}")))
    }
}

impl Depth {
    fn resolve(self, n: i64) -> usize {
        match self {
            Depth::Max => max_depth(n),
            Depth::Fixed(d) => d,
        }
    }
}

/// Where stabilize reads its colored series from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Source {
    #[default]
    Fixture,
    Compute,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub pretzel: Option<PretzelSpec>,
    /// Absolute colors; `J_c` is computed from the multi-sum at `N = c - 1`.
    pub colors: Vec<i64>,
    pub depth: Depth,
    pub normalized: bool,
    pub format: OutputFormat,
    pub fixture_path: PathBuf,
    pub knot: String,
    pub source: Source,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            pretzel: None,
            colors: Vec::new(),
            depth: Depth::Max,
            normalized: false,
            format: OutputFormat::Text,
            fixture_path: default_fixture_path(),
            knot: "8_5bar".into(),
            source: Source::Fixture,
        }
    }
}

/// `$CJONES_FIXTURE_DIR/colored_jones.txt`, else the repository's fixtures.
pub fn default_fixture_path() -> PathBuf {
    let dir = env::var_os(FIXTURE_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures")));
    dir.join(FIXTURE_FILE)
}

/// Parses `"4..6"`, `"4..=6"`, `"2"` or `"4,5,6"`.
pub fn parse_colors(s: &str) -> Result<Vec<i64>, CliError> {
    let bad = || CliError::Usage(format!("cannot parse colors {s:?}"));
    let num = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
    let colors: Vec<i64> = if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        (num(a)?..=num(b)?).collect()
    } else {
        s.split(',').map(num).collect::<Result<_, _>>()?
    };
    if colors.is_empty() {
        return Err(CliError::Usage(format!("empty color range {s:?}")));
    }
    if let Some(&c) = colors.iter().find(|&&c| c < 2) {
        return Err(CliError::Usage(format!("colors start at 2, got {c}")));
    }
    Ok(colors)
}

mod num_bigint_string {
    use num_bigint::BigInt;

    pub fn to_strings<'a>(v: impl IntoIterator<Item = &'a BigInt>) -> Vec<String> {
        v.into_iter().map(BigInt::to_string).collect()
    }
}

fn require_pretzel(config: &RunConfig) -> Result<PretzelSpec, CliError> {
    config.pretzel.ok_or_else(|| CliError::Usage("--pretzel is required".into()))
}

pub fn cmd_compute(config: &RunConfig) -> Result<ComputeReport, CliError> {
    let spec = require_pretzel(config)?;
    if config.colors.is_empty() {
        return Err(CliError::Usage("--colors is required".into()));
    }
    let rows = config
        .colors
        .par_iter()
        .map(|&color| {
            let n = color - 1;
            let depth = config.depth.resolve(n);
            let r = truncated_colored_jones(n, &spec, depth, config.normalized)?;
            Ok(CoefficientRow {
                knot: format!("P(-{},-{},-{})", spec.twists()[0], spec.twists()[1], spec.twists()[2]),
                color,
                depth: r.depth,
                normalized: r.normalized,
                top_q_degree: QDegree::from_a_degree(r.series.anchor()).to_string(),
                coefficients: to_strings(r.series.coeffs()),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(ComputeReport { pretzel: spec.to_string(), rows })
}

/// Hat-normalized series for the configured source, ordered by color.
pub fn load_series(config: &RunConfig) -> Result<(String, Vec<ColoredSeries>), CliError> {
    match config.source {
        Source::Fixture => {
            let table = load_fixture(&config.fixture_path)?;
            let mut rows: Vec<ColoredSeries> = rows_for(&table, &config.knot)
                .into_iter()
                .filter(|(c, _)| config.colors.is_empty() || config.colors.contains(c))
                .map(|(c, row)| row.to_colored_series(c))
                .collect();
            rows.sort_by_key(|s| s.color);
            if rows.is_empty() {
                return Err(CliError::Usage(format!("no fixture rows for {:?} in {}", config.knot, config.fixture_path.display())));
            }
            Ok((config.knot.clone(), rows))
        }
        Source::Compute => {
            let spec = require_pretzel(config)?;
            if config.colors.is_empty() {
                return Err(CliError::Usage("--colors is required with --source compute".into()));
            }
            let rows = config
                .colors
                .par_iter()
                .map(|&c| {
                    let n = c - 1;
                    Ok(truncated_colored_jones(n, &spec, max_depth(n), true)?.colored_series()?)
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok((format!("P(-{})", spec.to_string().replace(',', ",-")), rows))
        }
    }
}

fn stable_row(order: usize, observed: &StableSequence, closed: Option<(String, &StableSequence)>) -> StableRow {
    let (closed_form, extended) = match closed {
        Some((name, seq)) => (Some(name), to_strings(&seq.coeffs)),
        None => (None, Vec::new()),
    };
    StableRow { order, observed: to_strings(&observed.coeffs), closed_form, extended }
}

/// Extracts `T₀`, `T₁`, `T₂` in turn. Each observed head and neck is checked
/// against its closed form, which then continues it far enough to expose the
/// next order.
pub fn cmd_stabilize(config: &RunConfig) -> Result<StabilizeReport, CliError> {
    let (knot, rows) = load_series(config)?;
    let colors: Vec<i64> = rows.iter().map(|r| r.color).collect();
    let span = rows.iter().map(|r| r.series.depth() + (r.series.anchor() / 4).max(0) as usize).max().unwrap_or(0);
    let mut sequences = Vec::new();

    let t0 = extract_next_stable(&rows, &[])?;
    let head = closed_form_head(span);
    if !t0.agrees_with(&head) {
        return Err(CliError::Mismatch("observed head is not the pentagonal sequence".into()));
    }
    sequences.push(stable_row(0, &t0, Some(("pentagonal".into(), &head))));
    let mut report = StabilizeReport { knot, colors, neck_multiplicity: None, neck_multiplicity_source: "none".into(), sequences };
    if rows.len() < 2 {
        return Ok(report);
    }

    let t1 = extract_next_stable(&rows, std::slice::from_ref(&head))?;
    let (m, source) = match (config.pretzel, t1.coeffs.first()) {
        (Some(spec), _) => (Some(spec.neck_multiplicity()), "pretzel"),
        (None, Some(lead)) => {
            // The neck starts with 1 + m.
            let m = i64::try_from(lead).ok().map(|v| v - 1).filter(|m| (0..=3).contains(m));
            (m.map(|m| m as usize), if m.is_some() { "inferred" } else { "none" })
        }
        (None, None) => (None, "none"),
    };
    report.neck_multiplicity = m;
    report.neck_multiplicity_source = source.into();
    let neck = match m {
        Some(m) => {
            let neck = closed_form_neck(m, span)?;
            if !t1.agrees_with(&neck) {
                return Err(CliError::Mismatch(format!("observed neck disagrees with the closed form for m = {m}")));
            }
            report.sequences.push(stable_row(1, &t1, Some((format!("neck m={m}"), &neck))));
            neck
        }
        None => {
            report.sequences.push(stable_row(1, &t1, None));
            t1
        }
    };

    let t2 = extract_next_stable(&rows, &[head, neck])?;
    report.sequences.push(stable_row(2, &t2, None));
    Ok(report)
}

pub fn cmd_compare(a: &Multigraph, b: &Multigraph, m: u32) -> Result<CompareReport, CliError> {
    Ok(CompareReport {
        graph_a: a.to_string(),
        graph_b: b.to_string(),
        m,
        reduced_a: m_reduce(a, m + 1)?.to_string(),
        reduced_b: m_reduce(b, m + 1)?.to_string(),
        same_higher_stability: same_higher_stability(a, b, m)?,
    })
}
