//! Top coefficients of colored Jones polynomials of negative three-pretzel
//! knots `P(-m1, -m2, -m3)`.
//!
//! Fusing each twist region leaves a sum over edge labelings `(j1, j2, j3)`
//! of products of half-twist coefficients, `Δ_{2j}/θ(N,N,2j)` factors and a
//! planar trivalent graph evaluation. Only the labelings that reach the top
//! `3N+1` coefficients are evaluated.

use std::fmt;
use std::str::FromStr;

use log::debug;
use rayon::prelude::*;
use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPolynomial};
use crate::series::{TruncatedSeries, Q_STEP};
use crate::skein::{delta_expr, gamma_twist, gamma_xyz, theta_expr, AdmissibleTriple, QFactorialExpression, SkeinError};
use crate::stability::ColoredSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JonesError {
    #[error("invalid pretzel parameters: {0}")]
    InvalidSpec(String),
    #[error("N must be at least 1, got {0}")]
    ColorTooSmall(i64),
    #[error("depth {depth} outside 1..={max}")]
    DepthOutOfRange { depth: usize, max: usize },
    #[error("{labels} is not a contributing labeling for N = {n}")]
    NonContributing { n: i64, labels: LabelTuple },
    #[error("{labels} has a negative label for N = {n}")]
    NegativeLabel { n: i64, labels: LabelTuple },
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Negative twist counts `(m1, m2, m3)`, all at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PretzelSpec {
    twists: [u32; 3],
}

impl PretzelSpec {
    pub fn new(m1: u32, m2: u32, m3: u32) -> Result<Self, JonesError> {
        if m1 == 0 || m2 == 0 || m3 == 0 {
            return Err(JonesError::InvalidSpec(format!("{m1},{m2},{m3}: twist counts must be positive")));
        }
        Ok(Self { twists: [m1, m2, m3] })
    }

    pub fn twists(&self) -> [u32; 3] {
        self.twists
    }

    /// Number of regions with at least `k` crossings.
    pub fn count_at_least(&self, k: u32) -> usize {
        self.twists.iter().filter(|&&m| m >= k).count()
    }

    /// Number of regions with two or more crossings.
    pub fn neck_multiplicity(&self) -> usize {
        self.count_at_least(2)
    }
}

impl FromStr for PretzelSpec {
    type Err = JonesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = trimmed
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| JonesError::InvalidSpec(format!("{s:?}: {e}")))?;
        match parts[..] {
            [a, b, c] => Self::new(a, b, c),
            _ => Err(JonesError::InvalidSpec(format!("{s:?}: expected three comma-separated integers"))),
        }
    }
}

impl fmt::Display for PretzelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.twists;
        write!(f, "{a},{b},{c}")
    }
}

/// Half-labels `(j1, j2, j3)`; the fused edges carry colors `2 j_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelTuple(pub [i64; 3]);

impl fmt::Display for LabelTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "({a},{b},{c})")
    }
}

/// The labeling families that reach the top `3N+1` coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabelingKind {
    /// `(N, N, N)`.
    Top,
    /// `(N, N, N-i)` up to position, `i = 1, 2, 3`.
    SingleDrop(i64),
    /// `(N, N-1, N-1)` up to position.
    DoubleDrop,
}

impl LabelingKind {
    /// Lower bound on how many `q`-degrees the summand's top sits below the
    /// `(N, N, N)` summand.
    pub fn min_degree_drop(self, n: i64) -> i64 {
        match self {
            LabelingKind::Top => 0,
            LabelingKind::SingleDrop(1) => n + 1,
            LabelingKind::SingleDrop(2) => 2 * n + 1,
            LabelingKind::SingleDrop(_) => 3 * n - 1,
            LabelingKind::DoubleDrop => 2 * n + 2,
        }
    }
}

pub fn classify_labeling(n: i64, labels: LabelTuple) -> Option<LabelingKind> {
    let mut sorted = labels.0;
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    match sorted {
        [a, b, c] if a == n && b == n && c == n => Some(LabelingKind::Top),
        [a, b, c] if a == n && b == n && (1..=3).contains(&(n - c)) => Some(LabelingKind::SingleDrop(n - c)),
        [a, b, c] if a == n && b == n - 1 && c == n - 1 => Some(LabelingKind::DoubleDrop),
        _ => None,
    }
}

/// Every contributing labeling with all labels nonnegative, one entry per
/// position.
pub fn contributing_labelings(n: i64) -> Vec<LabelTuple> {
    let mut out = vec![LabelTuple([n; 3])];
    for i in 1..=3 {
        for pos in 0..3 {
            let mut l = [n; 3];
            l[pos] = n - i;
            out.push(LabelTuple(l));
        }
    }
    for pos in 0..3 {
        let mut l = [n - 1; 3];
        l[pos] = n;
        out.push(LabelTuple(l));
    }
    out.retain(|l| l.0.iter().all(|&j| j >= 0));
    out
}

/// Evaluation of the planar trivalent graph left after fusing with labels
/// `labels`.
pub fn graph_evaluation(n: i64, labels: LabelTuple) -> Result<QFactorialExpression, JonesError> {
    if labels.0.iter().any(|&j| j < 0) {
        return Err(JonesError::NegativeLabel { n, labels });
    }
    match classify_labeling(n, labels) {
        Some(LabelingKind::Top) => Ok(gamma_xyz(n, n, n)?),
        Some(LabelingKind::SingleDrop(i)) => Ok(gamma_xyz(n + i, n - i, n - i)?),
        Some(LabelingKind::DoubleDrop) => {
            // Each of the two resolutions contributes -Δ_{N-2}/Δ_{N-1}.
            let ratio = delta_expr(n - 2)? * delta_expr(n - 1)?.inverse()?;
            if ratio.is_zero() {
                // N = 1: Δ_{-1} = 0 and Γ(1,1,-1) is undefined.
                return Ok(ratio);
            }
            Ok(ratio.pow(2) * gamma_xyz(n, n, n - 2)?)
        }
        None => Err(JonesError::NonContributing { n, labels }),
    }
}

/// The full summand for one labeling as a factorial expression, including
/// the half-twist monomials, optionally divided by `Δ_N`.
pub fn summand_expression(
    n: i64,
    labels: LabelTuple,
    spec: &PretzelSpec,
    normalized: bool,
) -> Result<QFactorialExpression, JonesError> {
    let mut e = graph_evaluation(n, labels)?;
    for (&j, &m) in labels.0.iter().zip(spec.twists.iter()) {
        let twist = gamma_twist(n, n, 2 * j)?.pow(m);
        let fusion = delta_expr(2 * j)? * theta_expr(AdmissibleTriple::new(n, n, 2 * j)?).inverse()?;
        e = e * twist.to_expr() * fusion;
    }
    if normalized {
        e = e * delta_expr(n)?.inverse()?;
    }
    Ok(e)
}

/// The lowest `depth` coefficients of one summand, anchored at its own
/// lowest `A`-degree.
pub fn summand(n: i64, labels: LabelTuple, spec: &PretzelSpec, depth: usize) -> Result<TruncatedSeries, JonesError> {
    check_depth(n, depth)?;
    Ok(summand_expression(n, labels, spec, false)?.expand_to_depth(depth)?)
}

fn check_depth(n: i64, depth: usize) -> Result<(), JonesError> {
    if n < 1 {
        return Err(JonesError::ColorTooSmall(n));
    }
    let max = max_depth(n);
    if depth == 0 || depth > max {
        return Err(JonesError::DepthOutOfRange { depth, max });
    }
    Ok(())
}

/// Number of top coefficients the contributing labelings determine.
pub fn max_depth(n: i64) -> usize {
    (3 * n + 1).max(0) as usize
}

/// A truncated colored Jones polynomial `J_{N+1}` in the variable `A`,
/// holding the `depth` coefficients at the low-`A` (high-`q`) end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredJonesResult {
    pub n: i64,
    pub depth: usize,
    pub series: TruncatedSeries,
    pub normalized: bool,
}

impl ColoredJonesResult {
    /// The color `N + 1`.
    pub fn color(&self) -> i64 {
        self.n + 1
    }

    /// Coefficients shifted to start at degree 0 and signed so the leading
    /// one is positive.
    pub fn hat(&self) -> Result<TruncatedSeries, JonesError> {
        Ok(self.series.hat()?.0)
    }

    pub fn colored_series(&self) -> Result<ColoredSeries, JonesError> {
        Ok(ColoredSeries { color: self.color(), series: self.hat()? })
    }
}

/// The top `depth` coefficients of `J_{N+1}` for the pretzel `spec`,
/// divided by `Δ_N` when `normalized`.
pub fn truncated_colored_jones(
    n: i64,
    spec: &PretzelSpec,
    depth: usize,
    normalized: bool,
) -> Result<ColoredJonesResult, JonesError> {
    check_depth(n, depth)?;
    let mut exprs = Vec::new();
    for labels in contributing_labelings(n) {
        let e = summand_expression(n, labels, spec, normalized)?;
        if e.is_zero() {
            debug!("N={n}: labeling {labels} evaluates to zero, skipped");
            continue;
        }
        exprs.push(e);
    }
    let base = exprs
        .iter()
        .filter_map(QFactorialExpression::lowest_degree)
        .min()
        .expect("the (N,N,N) summand never vanishes");
    let cutoff = base + Q_STEP * depth as i64;
    let parts = exprs
        .par_iter()
        .map(|e| e.expand_below(cutoff))
        .collect::<Result<Vec<_>, _>>()?;
    let mut total = TruncatedSeries::zero(base, depth);
    for part in parts.into_iter().flatten() {
        total = total.add(&part)?;
    }
    let kept = ((cutoff - total.anchor()).max(0) / Q_STEP) as usize;
    let series = total.truncate(kept);
    Ok(ColoredJonesResult { n, depth: series.depth(), series, normalized })
}

/// Normalized colored Jones polynomial of the figure-eight knot at color
/// `N + 1`: `Σ_{k=0}^{N} ∏_{j=1}^{k} {N+1-j}{N+1+j}`.
pub fn oracle_fig8(n: i64) -> LaurentPolynomial {
    let mut total = LaurentPolynomial::zero();
    let mut term = LaurentPolynomial::one();
    for k in 0..=n.max(0) {
        if k > 0 {
            term = &term * &(&crate::skein::qbrace(n + 1 - k) * &crate::skein::qbrace(n + 1 + k));
        }
        total = &total + &term;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(a: u32, b: u32, c: u32) -> PretzelSpec {
        PretzelSpec::new(a, b, c).unwrap()
    }

    #[test]
    fn pretzel_spec_parsing() {
        assert_eq!("3,3,2".parse::<PretzelSpec>().unwrap(), spec(3, 3, 2));
        assert_eq!(" (1, 2, 4) ".parse::<PretzelSpec>().unwrap(), spec(1, 2, 4));
        assert!("1,0,1".parse::<PretzelSpec>().is_err());
        assert!("1,2".parse::<PretzelSpec>().is_err());
        assert!("a,b,c".parse::<PretzelSpec>().is_err());
        assert_eq!(spec(3, 3, 2).to_string(), "3,3,2");
        assert_eq!(spec(3, 1, 2).neck_multiplicity(), 2);
    }

    #[test]
    fn labelings_by_size() {
        assert_eq!(contributing_labelings(1).len(), 1 + 3 + 3);
        assert_eq!(contributing_labelings(2).len(), 1 + 6 + 3);
        assert_eq!(contributing_labelings(5).len(), 13);
        for l in contributing_labelings(5) {
            assert!(classify_labeling(5, l).is_some());
        }
        assert_eq!(classify_labeling(4, LabelTuple([4, 4, 1])), Some(LabelingKind::SingleDrop(3)));
        assert_eq!(classify_labeling(4, LabelTuple([4, 4, 0])), None);
        assert_eq!(classify_labeling(4, LabelTuple([4, 3, 2])), None);
        assert_eq!(classify_labeling(4, LabelTuple([3, 4, 3])), Some(LabelingKind::DoubleDrop));
    }

    #[test]
    fn non_contributing_labeling_is_rejected() {
        let err = summand(4, LabelTuple([4, 4, 0]), &spec(1, 1, 1), 5).unwrap_err();
        assert!(matches!(err, JonesError::NonContributing { .. }));
        let err = summand(2, LabelTuple([2, 2, -1]), &spec(1, 1, 1), 5).unwrap_err();
        assert!(matches!(err, JonesError::NegativeLabel { .. }));
    }

    #[test]
    fn depth_guard() {
        assert!(matches!(
            truncated_colored_jones(3, &spec(1, 1, 1), 11, true),
            Err(JonesError::DepthOutOfRange { depth: 11, max: 10 })
        ));
        assert!(truncated_colored_jones(3, &spec(1, 1, 1), 0, true).is_err());
        assert!(matches!(truncated_colored_jones(0, &spec(1, 1, 1), 1, true), Err(JonesError::ColorTooSmall(0))));
    }

    #[test]
    fn top_summand_is_gamma_nnn_up_to_shift() {
        for n in 1..=5 {
            let s = summand_expression(n, LabelTuple([n; 3]), &spec(2, 1, 3), false).unwrap();
            let g = gamma_xyz(n, n, n).unwrap();
            let d = (2 * n + 1) as usize;
            let (a, ..) = s.expand_to_depth(d).unwrap().hat().unwrap();
            let (b, ..) = g.expand_to_depth(d).unwrap().hat().unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn eight_five_color_five() {
        let r = truncated_colored_jones(4, &spec(3, 3, 2), 13, true).unwrap();
        assert_eq!(r.color(), 5);
        assert_eq!(
            r.hat().unwrap(),
            TruncatedSeries::from_i64(0, &[1, -1, -1, 0, 0, 5, -1, -3, -3, -5, 11, 4, 1])
        );
    }

    #[test]
    fn fig8_oracle_small() {
        assert_eq!(oracle_fig8(0), LaurentPolynomial::one());
        let j = oracle_fig8(1);
        let coeffs: Vec<i64> = (-8..=8).step_by(4).map(|e| i64::try_from(j.coeff(e)).unwrap()).collect();
        assert_eq!(coeffs, vec![1, -1, 1, -1, 1]);
    }
}
