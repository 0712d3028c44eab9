//! Exact Laurent polynomials in the skein variable `A`.
//!
//! Everything in this crate is written in `A` with `q = A^-4`, so every
//! half-integer power of `q` becomes an integral power of `A`. The highest
//! powers of `q` are the lowest powers of `A`; the "head" end of a
//! polynomial is its minimum `A`-degree.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::series::{TruncatedSeries, Q_STEP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("A-degrees {0} and {1} differ by a non-multiple of 4; not a series in q = A^-4")]
    MixedResidue(i64, i64),
    #[error("leading divisor coefficient {0} is not a unit")]
    NonUnitDivisor(BigInt),
    #[error("insufficient depth: need {needed}, have {available}")]
    InsufficientDepth { needed: usize, available: usize },
    #[error("polynomial division leaves a nonzero remainder")]
    InexactDivision,
    #[error("division by zero")]
    DivisionByZero,
}

/// A sign `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^e`.
    pub fn power_of_minus_one(e: i64) -> Sign {
        if e.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Sign of a nonzero integer; zero maps to `Plus`.
    pub fn of(value: &BigInt) -> Sign {
        if value.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.to_i64())
    }

    pub fn pow(self, e: i64) -> Sign {
        match self {
            Sign::Plus => Sign::Plus,
            Sign::Minus => Sign::power_of_minus_one(e),
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// Sparse Laurent polynomial in `A` with arbitrary-precision integer
/// coefficients. No stored coefficient is ever zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * A^exp`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (exp, c) in terms {
            out.add_term(exp, c.into());
        }
        out
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `A`-degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * s)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The `n` lowest-`A` coefficients (highest in `q`), spaced by `A^4`.
    ///
    /// Fails on the zero polynomial and on polynomials whose exponents are
    /// not all congruent mod 4.
    pub fn truncate_low(&self, n: usize) -> Result<TruncatedSeries, LaurentError> {
        let anchor = self.min_degree().ok_or(LaurentError::ZeroPolynomial)?;
        self.check_single_residue()?;
        let mut coeffs = vec![BigInt::zero(); n];
        for (e, c) in self.terms() {
            let idx = ((e - anchor) / Q_STEP) as usize;
            if idx >= n {
                break;
            }
            coeffs[idx] = c.clone();
        }
        Ok(TruncatedSeries::new(anchor, coeffs))
    }

    fn check_single_residue(&self) -> Result<(), LaurentError> {
        if let Some(anchor) = self.min_degree() {
            if let Some((e, _)) = self.terms().find(|(e, _)| (e - anchor) % Q_STEP != 0) {
                return Err(LaurentError::MixedResidue(anchor, e));
            }
        }
        Ok(())
    }

    /// Divides by `±` the lowest-`A` monomial so the result starts with `+1`
    /// at degree 0. Returns the quotient, the removed degree and the sign.
    pub fn normalize_hat(&self) -> Result<(Self, i64, Sign), LaurentError> {
        let (&shift, lead) = self.terms.iter().next().ok_or(LaurentError::ZeroPolynomial)?;
        let sign = Sign::of(lead);
        let normalized = self.shift(-shift).scale(&sign.to_bigint());
        Ok((normalized, shift, sign))
    }

    /// Exact quotient `self / divisor`, or `InexactDivision` when the
    /// remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, LaurentError> {
        let (d_min, d_lead) = match divisor.terms.iter().next() {
            Some((&e, c)) => (e, c.clone()),
            None => return Err(LaurentError::DivisionByZero),
        };
        let d_max = divisor.max_degree().unwrap_or(d_min);
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let top = self.max_degree().unwrap_or_default() - d_max;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((e, c)) = rem.terms.iter().next().map(|(&e, c)| (e, c.clone())) {
            let q_exp = e - d_min;
            if q_exp > top {
                return Err(LaurentError::InexactDivision);
            }
            let (q, r) = c.div_rem(&d_lead);
            if !r.is_zero() {
                return Err(LaurentError::InexactDivision);
            }
            for (de, dc) in divisor.terms() {
                rem.add_term(de + q_exp, -(dc * &q));
            }
            quot.add_term(q_exp, q);
        }
        Ok(quot)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = abs.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "A")?,
                (1, false) => write!(f, "{abs}A")?,
                (_, true) => write!(f, "A^{e}")?,
                (_, false) => write!(f, "{abs}A^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;

            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(&rhs)
            }
        }

        impl $tr<&LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;

            fn $method(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl std::iter::Sum for LaurentPolynomial {
    fn sum<I: Iterator<Item = LaurentPolynomial>>(iter: I) -> Self {
        iter.fold(LaurentPolynomial::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for LaurentPolynomial {
    fn product<I: Iterator<Item = LaurentPolynomial>>(iter: I) -> Self {
        iter.fold(LaurentPolynomial::one(), |acc, p| acc * p)
    }
}
