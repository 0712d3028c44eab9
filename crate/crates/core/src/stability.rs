//! Stable coefficient sequences of colored Jones polynomials.
//!
//! For a knot whose reduced B-graph is a triangle, the top coefficients of
//! `J_c` settle into the pentagonal sequence `P = ∏(1 - q^{-i})` (the head
//! `T₀`). Subtracting it exposes the neck `T₁` starting `c` places down, then
//! `T₂` a further `c - 1` places down. Sequences here are coefficient lists
//! in descending powers of `q`, starting at the top degree.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::jones::PretzelSpec;
use crate::laurent::LaurentError;
use crate::series::{euler_product, partial_sums, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error("no colored series supplied")]
    NoInput,
    #[error("colors {a} and {b} disagree at position {index} of the order-{order} window")]
    ColorsDisagree { order: usize, a: i64, b: i64, index: usize },
    #[error("color {color}: coefficient {index} should vanish after subtracting known sequences")]
    NonzeroPrefix { color: i64, index: usize },
    #[error("need {needed} coefficients, only {available} available")]
    InsufficientDepth { needed: usize, available: usize },
    #[error("colors must be consecutive, got {0:?}")]
    NotConsecutive(Vec<i64>),
    #[error("neck multiplicity must be in 0..=3, got {0}")]
    BadMultiplicity(usize),
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// A hat-normalized truncated colored Jones polynomial at absolute color
/// `color` (the top coefficient sits at index 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredSeries {
    pub color: i64,
    pub series: TruncatedSeries,
}

impl ColoredSeries {
    pub fn from_coeffs(color: i64, coeffs: Vec<BigInt>) -> Self {
        Self { color, series: TruncatedSeries::new(0, coeffs) }
    }

    /// Coefficients from the top, with stripped leading zeros restored.
    fn dense(&self) -> Vec<BigInt> {
        let lead = (self.series.anchor() / 4).max(0) as usize;
        let mut v = vec![BigInt::zero(); lead];
        v.extend(self.series.coeffs().iter().cloned());
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Extracted,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableSequence {
    pub order: usize,
    pub coeffs: Vec<BigInt>,
    pub provenance: Provenance,
}

impl StableSequence {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| i64::try_from(c).ok()).collect()
    }

    /// True when `self` and `other` agree on their common length.
    pub fn agrees_with(&self, other: &StableSequence) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b)
    }
}

/// Position of the order-`k` sequence inside a color-`c` polynomial.
pub fn stable_offset(order: usize, color: i64) -> usize {
    let c = color.max(0) as usize;
    match order {
        0 => 0,
        k => c + (k - 1) * c.saturating_sub(1),
    }
}

/// Number of order-`k` terms a color-`c` polynomial exposes.
pub fn stable_window(order: usize, color: i64) -> usize {
    let c = color.max(0) as usize;
    if order == 0 {
        c
    } else {
        c.saturating_sub(1)
    }
}

/// Subtracts `known` (orders `0..known.len()`) at their offsets and reads the
/// next stable sequence off each color's window. Colors must agree on their
/// overlap; the longest window is returned.
pub fn extract_next_stable(
    sequences: &[ColoredSeries],
    known: &[StableSequence],
) -> Result<StableSequence, StabilityError> {
    if sequences.is_empty() {
        return Err(StabilityError::NoInput);
    }
    let order = known.len();
    let mut candidates: Vec<(i64, Vec<BigInt>)> = Vec::with_capacity(sequences.len());
    for s in sequences {
        let c = s.color;
        let mut residual = s.dense();
        // Indices past the end of any subtracted sequence are unknown.
        let mut valid = residual.len();
        for seq in known {
            let off = stable_offset(seq.order, c);
            valid = valid.min(off + seq.len());
            for (i, v) in seq.coeffs.iter().enumerate() {
                if let Some(slot) = residual.get_mut(off + i) {
                    *slot -= v;
                }
            }
        }
        let start = stable_offset(order, c);
        for (index, v) in residual.iter().enumerate().take(start.min(valid)) {
            if !v.is_zero() {
                return Err(StabilityError::NonzeroPrefix { color: c, index });
            }
        }
        let end = (start + stable_window(order, c)).min(valid);
        let window = if end > start { residual[start..end].to_vec() } else { Vec::new() };
        candidates.push((c, window));
    }
    let (best_color, best) = candidates
        .iter()
        .max_by_key(|(c, w)| (w.len(), *c))
        .cloned()
        .expect("nonempty");
    for (c, w) in &candidates {
        if let Some(index) = w.iter().zip(&best).position(|(a, b)| a != b) {
            return Err(StabilityError::ColorsDisagree { order, a: *c, b: best_color, index });
        }
    }
    Ok(StableSequence { order, coeffs: best, provenance: Provenance::Extracted })
}

/// The head: the pentagonal sequence `∏(1 - q^{-i})`.
pub fn closed_form_head(depth: usize) -> StableSequence {
    StableSequence { order: 0, coeffs: euler_product(depth).padded_coeffs(depth), provenance: Provenance::ClosedForm }
}

/// The neck: `P + m · P/(1 - q^{-1})`, `m` = number of twist regions with at
/// least two crossings.
pub fn closed_form_neck(m: usize, depth: usize) -> Result<StableSequence, StabilityError> {
    if m > 3 {
        return Err(StabilityError::BadMultiplicity(m));
    }
    let p = euler_product(depth);
    let s = partial_sums(&p).scale(&BigInt::from(m));
    let neck = p.add(&s)?;
    Ok(StableSequence { order: 1, coeffs: neck.padded_coeffs(depth), provenance: Provenance::ClosedForm })
}

/// Outcome of comparing `Ĵ_c - Ĵ_{c+1}` against `(1 + m - q^{-1}) P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceReport {
    pub color: i64,
    pub m: usize,
    pub depth: usize,
    /// First nonzero index among the top `c` coefficients of the difference.
    pub top_nonzero_at: Option<usize>,
    pub expected: Vec<BigInt>,
    pub observed: Vec<BigInt>,
}

impl DifferenceReport {
    pub fn top_vanishes(&self) -> bool {
        self.top_nonzero_at.is_none()
    }

    pub fn tail_matches(&self) -> bool {
        self.expected == self.observed
    }

    pub fn passed(&self) -> bool {
        self.top_vanishes() && self.tail_matches()
    }
}

/// `(1 + m - q^{-1}) P` to `depth` terms.
pub fn difference_closed_form(m: usize, depth: usize) -> Vec<BigInt> {
    let p = euler_product(depth).padded_coeffs(depth);
    let lead = BigInt::from(1 + m);
    (0..depth)
        .map(|i| &lead * &p[i] - if i > 0 { p[i - 1].clone() } else { BigInt::zero() })
        .collect()
}

/// Checks that the top `c` coefficients of `Ĵ_c - Ĵ_{c+1}` vanish and the
/// next `depth` equal `(1 + m - q^{-1}) P`.
pub fn difference_neck(
    j_n: &ColoredSeries,
    j_n1: &ColoredSeries,
    m: usize,
    depth: usize,
) -> Result<DifferenceReport, StabilityError> {
    if m > 3 {
        return Err(StabilityError::BadMultiplicity(m));
    }
    if j_n1.color != j_n.color + 1 {
        return Err(StabilityError::NotConsecutive(vec![j_n.color, j_n1.color]));
    }
    let c = j_n.color.max(0) as usize;
    let (a, b) = (j_n.dense(), j_n1.dense());
    let needed = c + depth;
    let available = a.len().min(b.len());
    if available < needed {
        return Err(StabilityError::InsufficientDepth { needed, available });
    }
    let diff: Vec<BigInt> = (0..needed).map(|i| &a[i] - &b[i]).collect();
    Ok(DifferenceReport {
        color: j_n.color,
        m,
        depth,
        top_nonzero_at: diff[..c].iter().position(|v| !v.is_zero()),
        expected: difference_closed_form(m, depth),
        observed: diff[c..].to_vec(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwistCategory {
    One,
    Two,
    ThreePlus,
}

impl TwistCategory {
    pub fn of(m: u32) -> Self {
        match m {
            0 | 1 => TwistCategory::One,
            2 => TwistCategory::Two,
            _ => TwistCategory::ThreePlus,
        }
    }
}

impl fmt::Display for TwistCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwistCategory::One => "1",
            TwistCategory::Two => "2",
            TwistCategory::ThreePlus => "3+",
        })
    }
}

/// A pretzel spec up to permutation, with every count of three or more
/// collapsed together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistClass([TwistCategory; 3]);

impl TwistClass {
    pub fn new(mut cats: [TwistCategory; 3]) -> Self {
        cats.sort();
        Self(cats)
    }

    pub fn of_spec(spec: &PretzelSpec) -> Self {
        Self::new(spec.twists().map(TwistCategory::of))
    }

    pub fn categories(&self) -> [TwistCategory; 3] {
        self.0
    }

    /// The ten classes in table order.
    pub fn all() -> Vec<TwistClass> {
        use TwistCategory::*;
        let cats = [One, Two, ThreePlus];
        let mut out = Vec::new();
        for a in 0..3 {
            for b in a..3 {
                for c in b..3 {
                    out.push(Self([cats[a], cats[b], cats[c]]));
                }
            }
        }
        out
    }

    /// A spec in this class, using `three_plus` for every `3+` entry.
    pub fn representative(&self, three_plus: u32) -> PretzelSpec {
        let m = self.0.map(|c| match c {
            TwistCategory::One => 1,
            TwistCategory::Two => 2,
            TwistCategory::ThreePlus => three_plus.max(3),
        });
        PretzelSpec::new(m[0], m[1], m[2]).expect("positive twists")
    }
}

impl fmt::Display for TwistClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "({a},{b},{c})")
    }
}

/// Conjectured first five coefficients (`q^0 .. q^{-4}`) of `T₂ / P`.
pub fn t2_predicted(class: TwistClass) -> [i64; 5] {
    use TwistCategory::*;
    match class.0 {
        [One, One, One] => [0, 1, -1, -1, 1],
        [One, One, Two] => [0, 4, -1, -3, 1],
        [One, One, ThreePlus] => [-1, 4, 0, -3, 1],
        [One, Two, Two] => [0, 7, 0, -4, 1],
        [One, Two, ThreePlus] => [-1, 7, 1, -4, 1],
        [One, ThreePlus, ThreePlus] => [-2, 7, 2, -4, 1],
        [Two, Two, Two] => [0, 10, 2, -4, 1],
        [Two, Two, ThreePlus] => [-1, 10, 3, -4, 1],
        [Two, ThreePlus, ThreePlus] => [-2, 10, 4, -4, 1],
        [ThreePlus, ThreePlus, ThreePlus] => [-3, 10, 5, -4, 1],
        _ => unreachable!("classes are stored sorted"),
    }
}

/// `q^{2c}(q^{-1}(Ĵ_c - Ĵ_{c+1}) - (Ĵ_{c+1} - Ĵ_{c+2})) / P` for three
/// consecutive colors `c, c+1, c+2`, to `depth` terms.
pub fn t2_observed(series: [&ColoredSeries; 3], depth: usize) -> Result<Vec<BigInt>, StabilityError> {
    let colors: Vec<i64> = series.iter().map(|s| s.color).collect();
    if colors[1] != colors[0] + 1 || colors[2] != colors[1] + 1 {
        return Err(StabilityError::NotConsecutive(colors));
    }
    if series.iter().any(|s| s.series.is_zero()) {
        return Err(StabilityError::Degenerate("zero input series"));
    }
    let c = colors[0].max(0) as usize;
    let [a, b, d] = series.map(ColoredSeries::dense);
    // q^{-1} shifts the first difference down by one place.
    let len = (a.len() + 1).min(b.len()).min(d.len());
    let e: Vec<BigInt> = (0..len)
        .map(|i| {
            let first = if i > 0 { &a[i - 1] - &b[i - 1] } else { BigInt::zero() };
            first - (&b[i] - &d[i])
        })
        .collect();
    let shift = 2 * c;
    let needed = shift + depth;
    if len < needed {
        return Err(StabilityError::InsufficientDepth { needed, available: len });
    }
    if let Some(index) = e[..shift].iter().position(|v| !v.is_zero()) {
        return Err(StabilityError::NonzeroPrefix { color: colors[0], index });
    }
    let body = &e[shift..needed];
    if body.iter().all(Zero::is_zero) {
        return Err(StabilityError::Degenerate("difference vanishes on the window"));
    }
    // Dividing by P: each term cancels against the earlier quotient terms.
    let p = euler_product(depth).padded_coeffs(depth);
    let mut out: Vec<BigInt> = Vec::with_capacity(depth);
    for i in 0..depth {
        let mut acc = body[i].clone();
        for j in 1..=i {
            if !p[j].is_zero() {
                acc -= &p[j] * &out[i - j];
            }
        }
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn cs(color: i64, v: &[i64]) -> ColoredSeries {
        ColoredSeries::from_coeffs(color, big(v))
    }

    #[test]
    fn head_closed_form() {
        assert_eq!(closed_form_head(13).to_i64_vec().unwrap(), vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);
        assert_eq!(closed_form_head(1).to_i64_vec().unwrap(), vec![1]);
    }

    #[test]
    fn neck_closed_form() {
        assert_eq!(closed_form_neck(3, 10).unwrap().to_i64_vec().unwrap(), vec![4, -1, -4, -3, -3, 1, 0, 4, 3, 3]);
        assert_eq!(closed_form_neck(1, 8).unwrap().to_i64_vec().unwrap(), vec![2, -1, -2, -1, -1, 1, 0, 2]);
        assert_eq!(closed_form_neck(0, 20).unwrap().coeffs, closed_form_head(20).coeffs);
        assert!(closed_form_neck(4, 5).is_err());
    }

    #[test]
    fn extraction_of_constant_input() {
        let input = [cs(3, &[1, 2, 3]), cs(4, &[1, 2, 3])];
        let t = extract_next_stable(&input, &[]).unwrap();
        assert_eq!(t.to_i64_vec().unwrap(), vec![1, 2, 3]);
        assert_eq!(t.provenance, Provenance::Extracted);
    }

    #[test]
    fn extraction_detects_disagreement() {
        let input = [cs(3, &[1, 2, 3]), cs(4, &[1, 2, 4, 4])];
        assert!(matches!(extract_next_stable(&input, &[]), Err(StabilityError::ColorsDisagree { .. })));
        assert_eq!(extract_next_stable(&[], &[]), Err(StabilityError::NoInput));
    }

    #[test]
    fn extraction_detects_nonzero_prefix() {
        let head = closed_form_head(10);
        let input = [cs(3, &[1, -1, 0, 5, 5])];
        assert!(matches!(
            extract_next_stable(&input, &[head]),
            Err(StabilityError::NonzeroPrefix { color: 3, index: 2 })
        ));
    }

    #[test]
    fn offsets_and_windows() {
        assert_eq!((stable_offset(0, 7), stable_window(0, 7)), (0, 7));
        assert_eq!((stable_offset(1, 7), stable_window(1, 7)), (7, 6));
        assert_eq!((stable_offset(2, 7), stable_window(2, 7)), (13, 6));
    }

    #[test]
    fn difference_of_identical_inputs_fails_tail() {
        let s = cs(4, &[1, -1, -1, 0, 0, 1, 0, 1, 0, 0]);
        let next = ColoredSeries { color: 5, ..s.clone() };
        let r = difference_neck(&s, &next, 1, 3).unwrap();
        assert!(r.top_vanishes());
        assert!(!r.tail_matches());
        assert!(matches!(difference_neck(&s, &next, 1, 9), Err(StabilityError::InsufficientDepth { .. })));
        assert!(matches!(difference_neck(&s, &s, 1, 3), Err(StabilityError::NotConsecutive(_))));
    }

    #[test]
    fn twist_classes() {
        let all = TwistClass::all();
        assert_eq!(all.len(), 10);
        let spec = PretzelSpec::new(4, 1, 2).unwrap();
        assert_eq!(TwistClass::of_spec(&spec).to_string(), "(1,2,3+)");
        assert_eq!(t2_predicted(TwistClass::of_spec(&spec)), [-1, 7, 1, -4, 1]);
        for class in all {
            assert_eq!(TwistClass::of_spec(&class.representative(4)), class);
            let p = t2_predicted(class);
            let three_plus = class.categories().iter().filter(|&&c| c == TwistCategory::ThreePlus).count();
            assert_eq!(p[0], -(three_plus as i64));
        }
    }

    #[test]
    fn t2_degenerate_input() {
        let z = ColoredSeries::from_coeffs(6, vec![]);
        let z1 = ColoredSeries { color: 7, ..z.clone() };
        let z2 = ColoredSeries { color: 8, ..z.clone() };
        assert!(matches!(t2_observed([&z, &z1, &z2], 5), Err(StabilityError::Degenerate(_))));
        let s = cs(6, &[1, 0, 0]);
        assert!(matches!(t2_observed([&s, &z1, &z2], 5), Err(StabilityError::Degenerate(_))));
        assert!(matches!(t2_observed([&s, &s, &s], 5), Err(StabilityError::NotConsecutive(_))));
    }
}
