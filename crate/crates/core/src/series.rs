//! Truncated q-series windows anchored at the lowest `A`-degree.
//!
//! A [`TruncatedSeries`] with anchor `a` and coefficients `c_0, c_1, ...`
//! stands for `sum c_i A^(a + 4i) + O(A^cutoff)`, i.e. a power series in
//! `q^-1 = A^4` whose first `depth` coefficients are known exactly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::laurent::{LaurentError, LaurentPolynomial, Sign};

/// `A`-degree distance between consecutive powers of `q`.
pub const Q_STEP: i64 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    anchor: i64,
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Builds a window, advancing the anchor past leading zeros. The end of
    /// the window (the cutoff) is preserved.
    pub fn new(anchor: i64, mut coeffs: Vec<BigInt>) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) | None => Self { anchor, coeffs },
            Some(k) => {
                coeffs.drain(..k);
                Self { anchor: anchor + Q_STEP * k as i64, coeffs }
            }
        }
    }

    pub fn from_i64(anchor: i64, coeffs: &[i64]) -> Self {
        Self::new(anchor, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The zero series known to `depth` terms past `anchor`.
    pub fn zero(anchor: i64, depth: usize) -> Self {
        Self { anchor, coeffs: vec![BigInt::zero(); depth] }
    }

    /// The constant 1 to `depth` terms.
    pub fn one(depth: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); depth];
        if let Some(c) = coeffs.first_mut() {
            *c = BigInt::one();
        }
        Self { anchor: 0, coeffs }
    }

    pub fn anchor(&self) -> i64 {
        self.anchor
    }

    pub fn depth(&self) -> usize {
        self.coeffs.len()
    }

    /// First `A`-degree that is not covered by the window.
    pub fn cutoff(&self) -> i64 {
        self.anchor + Q_STEP * self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.first().filter(|c| !c.is_zero())
    }

    /// Coefficient of `A^degree`: `Some(0)` below the anchor or off the
    /// `A^4` lattice, `None` once past the cutoff.
    pub fn coeff_at_degree(&self, degree: i64) -> Option<BigInt> {
        if degree >= self.cutoff() {
            return None;
        }
        let offset = degree - self.anchor;
        if offset < 0 || offset % Q_STEP != 0 {
            return Some(BigInt::zero());
        }
        Some(self.coeffs[(offset / Q_STEP) as usize].clone())
    }

    /// Keeps at most the first `n` coefficients.
    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.coeffs.len());
        Self::new(self.anchor, self.coeffs[..n].to_vec())
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { anchor: self.anchor + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::new(self.anchor, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn neg(&self) -> Self {
        Self { anchor: self.anchor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Sum over the common window `[min anchor, min cutoff)`.
    pub fn add(&self, other: &Self) -> Result<Self, LaurentError> {
        if !self.is_zero() && !other.is_zero() && (self.anchor - other.anchor) % Q_STEP != 0 {
            return Err(LaurentError::MixedResidue(self.anchor, other.anchor));
        }
        // A zero operand may sit on another residue class; only its cutoff matters.
        let start = match (self.is_zero(), other.is_zero()) {
            (false, true) => self.anchor,
            (true, false) => other.anchor,
            _ => self.anchor.min(other.anchor),
        };
        let end = self.cutoff().min(other.cutoff());
        let depth = if end > start { ((end - start) + Q_STEP - 1) / Q_STEP } else { 0 } as usize;
        let mut coeffs = vec![BigInt::zero(); depth];
        for s in [self, other] {
            if s.is_zero() {
                continue;
            }
            let base = (s.anchor - start) / Q_STEP;
            for (i, c) in s.coeffs.iter().enumerate() {
                let idx = base + i as i64;
                if idx >= 0 && (idx as usize) < depth {
                    coeffs[idx as usize] += c;
                }
            }
        }
        Ok(Self::new(start, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.add(&other.neg())
    }

    /// Product, known to `min(depth)` terms.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.depth().min(other.depth());
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(self.anchor + other.anchor, coeffs)
    }

    /// Divides by `±` the leading monomial: anchor 0, leading coefficient +1.
    /// Returns the normalized window, the removed `A`-degree and the sign.
    pub fn hat(&self) -> Result<(Self, i64, Sign), LaurentError> {
        let lead = self.leading_coeff().ok_or(LaurentError::ZeroPolynomial)?;
        let sign = Sign::of(lead);
        let shift = self.anchor;
        let coeffs = match sign {
            Sign::Plus => self.coeffs.clone(),
            Sign::Minus => self.coeffs.iter().map(|c| -c).collect(),
        };
        Ok((Self { anchor: 0, coeffs }, shift, sign))
    }

    /// The known terms as a Laurent polynomial.
    pub fn to_polynomial(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            self.coeffs.iter().enumerate().map(|(i, c)| (self.anchor + Q_STEP * i as i64, c.clone())),
        )
    }

    pub fn q_view(&self, q_offset: i64) -> QSeriesView {
        QSeriesView::new(self.clone(), q_offset)
    }

    /// Coefficients of the degrees `0, 4, 8, ...`, restoring zeros stripped
    /// before a nonnegative anchor and padding (or cutting) to `len`.
    pub fn padded_coeffs(&self, len: usize) -> Vec<BigInt> {
        let lead = (self.anchor / Q_STEP).max(0) as usize;
        let mut v = vec![BigInt::zero(); lead];
        v.extend(self.coeffs.iter().cloned());
        v.resize(len, BigInt::zero());
        v
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

/// Long division from the low-`A` end: the unique `f` with `f * h` agreeing
/// with `g` on the first `n` terms.
pub fn series_div(g: &TruncatedSeries, h: &TruncatedSeries, n: usize) -> Result<TruncatedSeries, LaurentError> {
    for available in [g.depth(), h.depth()] {
        if available < n {
            return Err(LaurentError::InsufficientDepth { needed: n, available });
        }
    }
    if h.is_zero() {
        return Err(LaurentError::DivisionByZero);
    }
    let lead = &h.coeffs[0];
    if !lead.abs().is_one() {
        return Err(LaurentError::NonUnitDivisor(lead.clone()));
    }
    let mut out: Vec<BigInt> = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = g.coeffs[i].clone();
        for j in 1..=i {
            let hj = &h.coeffs[j];
            if !hj.is_zero() {
                acc -= hj * &out[i - j];
            }
        }
        out.push(acc * lead);
    }
    Ok(TruncatedSeries::new(g.anchor - h.anchor, out))
}

/// Multiplies a dense `x`-series in place by `(1 - x^k)`, `x = q^-1`.
pub(crate) fn mul_one_minus_x_pow(coeffs: &mut [BigInt], k: usize) {
    for i in (k..coeffs.len()).rev() {
        let (lo, hi) = coeffs.split_at_mut(i);
        hi[0] -= &lo[i - k];
    }
}

/// Divides a dense `x`-series in place by `(1 - x^k)`.
pub(crate) fn div_one_minus_x_pow(coeffs: &mut [BigInt], k: usize) {
    for i in k..coeffs.len() {
        let (lo, hi) = coeffs.split_at_mut(i);
        hi[0] += &lo[i - k];
    }
}

/// `prod_{n>=1} (1 - q^-n)` by truncated product.
pub fn euler_product_by_product(depth: usize) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::zero(); depth];
    if depth == 0 {
        return coeffs;
    }
    coeffs[0] = BigInt::one();
    for n in 1..depth {
        mul_one_minus_x_pow(&mut coeffs, n);
    }
    coeffs
}

/// `sum_k (-1)^k q^(-k(3k-1)/2)` over all pentagonal exponents below `depth`.
pub fn euler_product_by_pentagonal(depth: usize) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::zero(); depth];
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = kk * (3 * kk - 1) / 2;
            if (e as usize) < depth {
                coeffs[e as usize] += Sign::power_of_minus_one(kk).to_bigint();
                any = true;
            }
        }
        if !any && k > 0 {
            break;
        }
        k += 1;
    }
    coeffs
}

/// Euler's product to `depth` terms. Both the truncated product and the
/// pentagonal sum are evaluated and must agree.
pub fn euler_product(depth: usize) -> TruncatedSeries {
    let by_product = euler_product_by_product(depth);
    let by_pentagonal = euler_product_by_pentagonal(depth);
    assert_eq!(by_product, by_pentagonal, "pentagonal number theorem violated at depth {depth}");
    TruncatedSeries::new(0, by_pentagonal)
}

/// Cumulative sums, i.e. multiplication by `1 / (1 - q^-1)`.
pub fn partial_sums(s: &TruncatedSeries) -> TruncatedSeries {
    let mut coeffs = s.coeffs().to_vec();
    div_one_minus_x_pow(&mut coeffs, 1);
    TruncatedSeries::new(s.anchor(), coeffs)
}

/// A `q`-degree, stored as four times its value so the quarter- and
/// half-integer powers coming from odd `A`-degrees stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QDegree {
    quarters: i64,
}

impl QDegree {
    pub fn integer(q: i64) -> Self {
        Self { quarters: 4 * q }
    }

    /// The `q`-degree of `A^a`.
    pub fn from_a_degree(a: i64) -> Self {
        Self { quarters: -a }
    }

    pub fn quarters(self) -> i64 {
        self.quarters
    }

    pub fn as_integer(self) -> Option<i64> {
        (self.quarters % 4 == 0).then_some(self.quarters / 4)
    }

    pub fn is_integral(self) -> bool {
        self.quarters % 4 == 0
    }

    pub fn offset(self, q_steps: i64) -> Self {
        Self { quarters: self.quarters + 4 * q_steps }
    }
}

impl fmt::Display for QDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.quarters;
        if q % 4 == 0 {
            write!(f, "{}", q / 4)
        } else if q % 2 == 0 {
            write!(f, "{}/2", q / 2)
        } else {
            write!(f, "{q}/4")
        }
    }
}

impl FromStr for QDegree {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || format!("invalid q-degree `{s}`");
        match s.split_once('/') {
            None => s.parse::<i64>().map(Self::integer).map_err(|_| bad()),
            Some((num, den)) => {
                let num: i64 = num.trim().parse().map_err(|_| bad())?;
                match den.trim() {
                    "1" => Ok(Self { quarters: 4 * num }),
                    "2" => Ok(Self { quarters: 2 * num }),
                    "4" => Ok(Self { quarters: num }),
                    _ => Err(bad()),
                }
            }
        }
    }
}

/// A truncated series read in descending powers of `q`, with an optional
/// integral `q`-offset applied on top of the `A`-anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeriesView {
    series: TruncatedSeries,
    q_offset: i64,
}

impl QSeriesView {
    pub fn new(series: TruncatedSeries, q_offset: i64) -> Self {
        Self { series, q_offset }
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    /// The `q`-degree of the first coefficient. Non-integral when the anchor
    /// is not a multiple of 4.
    pub fn top_degree(&self) -> QDegree {
        QDegree::from_a_degree(self.series.anchor()).offset(self.q_offset)
    }

    pub fn is_integral(&self) -> bool {
        self.top_degree().is_integral()
    }

    /// Coefficient of `q^degree`; `None` outside the known window or off the
    /// lattice of this view.
    pub fn coefficient(&self, degree: QDegree) -> Option<&BigInt> {
        let diff = self.top_degree().quarters() - degree.quarters();
        if diff < 0 || diff % 4 != 0 {
            return None;
        }
        self.series.coeffs().get((diff / 4) as usize)
    }

    /// `(q-degree, coefficient)` pairs in descending degree.
    pub fn iter(&self) -> impl Iterator<Item = (QDegree, &BigInt)> + '_ {
        let top = self.top_degree();
        self.series.coeffs().iter().enumerate().map(move |(i, c)| (top.offset(-(i as i64)), c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(anchor: i64, c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_i64(anchor, c)
    }

    #[test]
    fn new_strips_leading_zeros_and_keeps_cutoff() {
        let s = ts(-8, &[0, 0, 3, 1]);
        assert_eq!(s.anchor(), 0);
        assert_eq!(s.depth(), 2);
        assert_eq!(s.cutoff(), 8);
        let z = ts(0, &[0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.depth(), 2);
    }

    #[test]
    fn geometric_series() {
        let one_minus = ts(0, &[1, -1, 0, 0, 0]);
        let q = series_div(&TruncatedSeries::one(5), &one_minus, 5).unwrap();
        assert_eq!(q, ts(0, &[1, 1, 1, 1, 1]));
    }

    #[test]
    fn self_division() {
        let g = ts(-12, &[-1, 3, 0, 7, 2, -2]);
        assert_eq!(series_div(&g, &g, 6).unwrap(), TruncatedSeries::one(6));
    }

    #[test]
    fn euler_partial_sums_by_division() {
        let q = series_div(&euler_product(12), &ts(0, &[1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]), 12).unwrap();
        assert_eq!(q, ts(0, &[1, 0, -1, -1, -1, 0, 0, 1, 1, 1, 1, 1]));
        assert_eq!(partial_sums(&euler_product(12)), q);
    }

    #[test]
    fn series_div_errors() {
        let g = ts(0, &[1, 2, 3]);
        assert_eq!(
            series_div(&g, &ts(0, &[2, 1, 0]), 3),
            Err(LaurentError::NonUnitDivisor(BigInt::from(2)))
        );
        assert_eq!(
            series_div(&g, &ts(0, &[1, 1]), 3),
            Err(LaurentError::InsufficientDepth { needed: 3, available: 2 })
        );
        assert_eq!(series_div(&g, &ts(0, &[0, 0, 0]), 3), Err(LaurentError::DivisionByZero));
    }

    #[test]
    fn euler_product_table_row() {
        assert_eq!(euler_product(13), ts(0, &[1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]));
        assert_eq!(euler_product(1), ts(0, &[1]));
        assert_eq!(euler_product(27).coeffs()[26], BigInt::from(1));
    }

    #[test]
    fn add_aligns_windows() {
        let a = ts(0, &[1, 1, 1, 1]);
        let b = ts(8, &[5, 5]);
        let s = a.add(&b).unwrap();
        assert_eq!(s, ts(0, &[1, 1, 6, 6]));
        let c = ts(8, &[5]);
        assert_eq!(a.add(&c).unwrap().depth(), 3);
        assert!(matches!(a.add(&ts(2, &[1])), Err(LaurentError::MixedResidue(..))));
        // zero operands never trigger the residue check
        assert_eq!(a.add(&TruncatedSeries::zero(2, 2)).unwrap(), ts(0, &[1, 1, 1]));
        assert_eq!(a.add(&TruncatedSeries::zero(2, 10)).unwrap(), a);
    }

    #[test]
    fn coeff_at_degree_window() {
        let s = ts(-4, &[2, 3]);
        assert_eq!(s.coeff_at_degree(-8), Some(BigInt::zero()));
        assert_eq!(s.coeff_at_degree(0), Some(BigInt::from(3)));
        assert_eq!(s.coeff_at_degree(-2), Some(BigInt::zero()));
        assert_eq!(s.coeff_at_degree(4), None);
    }

    #[test]
    fn hat_normalization() {
        let (h, shift, sign) = ts(10, &[-1, 2, 0]).hat().unwrap();
        assert_eq!((h, shift, sign), (ts(0, &[1, -2, 0]), 10, Sign::Minus));
        assert!(TruncatedSeries::zero(0, 3).hat().is_err());
    }

    #[test]
    fn q_view_degrees() {
        let v = ts(-8, &[1, -1, 1]).q_view(0);
        assert_eq!(v.top_degree(), QDegree::integer(2));
        assert_eq!(v.coefficient(QDegree::integer(1)), Some(&BigInt::from(-1)));
        assert_eq!(v.coefficient(QDegree::integer(3)), None);

        let half = ts(-6, &[1]).q_view(0);
        assert!(!half.is_integral());
        assert_eq!(half.top_degree().to_string(), "3/2");
        assert_eq!("3/2".parse::<QDegree>().unwrap(), half.top_degree());
        assert_eq!(ts(-8, &[1]).q_view(-2).top_degree(), QDegree::integer(0));
        let degs: Vec<String> = v.iter().map(|(d, _)| d.to_string()).collect();
        assert_eq!(degs, ["2", "1", "0"]);
    }
}
