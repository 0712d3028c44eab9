//! Skein-theoretic building blocks: quantum integers and factorials, the
//! unknot values `Δ_n`, trihedron coefficients `θ(a,b,c)`, half-twist
//! coefficients `γ(a,b,c)` and Lickorish's three-circle evaluation
//! `Γ(x,y,z)`.
//!
//! Ratios of factorials are kept as [`QFactorialExpression`] values and
//! cancelled on exponent maps before anything is expanded. Every brace
//! `{k} = A^{2k} - A^{-2k}` equals `-A^{-2k} (1 - q^{-k})`, so an expression
//! has an exactly known lowest `A`-degree and a leading coefficient of `±1`,
//! which makes low-end series division always applicable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPolynomial, Sign};
use crate::series::{mul_one_minus_x_pow, series_div, TruncatedSeries, Q_STEP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeinError {
    #[error("({0}, {1}, {2}) is not an admissible triple")]
    Inadmissible(i64, i64, i64),
    #[error("{what} needs an argument >= {min}, got {got}")]
    OutOfRange { what: &'static str, min: i64, got: i64 },
    #[error("expression is not a Laurent polynomial")]
    NotPolynomial,
    #[error("expression divides by {{0}} = 0")]
    DivisionByZero,
    #[error("expansion depth must be positive")]
    ZeroDepth,
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

fn require(what: &'static str, min: i64, got: i64) -> Result<(), SkeinError> {
    if got < min {
        Err(SkeinError::OutOfRange { what, min, got })
    } else {
        Ok(())
    }
}

/// `{n} = A^{2n} - A^{-2n}`; `{-n} = -{n}`.
pub fn qbrace(n: i64) -> LaurentPolynomial {
    LaurentPolynomial::from_terms([(2 * n, 1), (-2 * n, -1)])
}

/// `[n] = {n}/{1} = A^{2(n-1)} + A^{2(n-3)} + ... + A^{-2(n-1)}`.
pub fn qint(n: u32) -> LaurentPolynomial {
    let n = i64::from(n);
    LaurentPolynomial::from_terms((0..n).map(|i| (2 * (n - 1) - 4 * i, 1)))
}

/// `{n}! = {1}{2}...{n}`.
pub fn qbrace_fact(n: u32) -> LaurentPolynomial {
    (1..=i64::from(n)).map(qbrace).product()
}

/// `Δ_n = (-1)^n [n+1]`, defined for `n >= -1` (`Δ_{-1} = 0`).
pub fn delta(n: i64) -> Result<LaurentPolynomial, SkeinError> {
    require("delta", -1, n)?;
    Ok(qint((n + 1) as u32).scale(&Sign::power_of_minus_one(n).to_bigint()))
}

/// `Δ_n` as a factorial expression, `(-1)^n {n+1}/{1}`.
pub fn delta_expr(n: i64) -> Result<QFactorialExpression, SkeinError> {
    require("delta", -1, n)?;
    Ok(QFactorialExpression::monomial(Sign::power_of_minus_one(n), 0).with_qint(n + 1, 1))
}

/// `Δ_n! = Δ_n Δ_{n-1} ... Δ_1 = (-1)^{n(n+1)/2} {n+1}! / {1}^{n+1}`,
/// with `Δ_{-1}! = Δ_0! = 1`.
pub fn delta_fact(n: i64) -> Result<QFactorialExpression, SkeinError> {
    require("delta factorial", -1, n)?;
    let sign = Sign::power_of_minus_one(n * (n + 1) / 2);
    Ok(QFactorialExpression::monomial(sign, 0)
        .with_brace_factorial((n + 1) as u32, 1)
        .with_brace(1, -(n + 1)))
}

/// A triple `(a, b, c)` with even sum and nonnegative internal colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdmissibleTriple {
    a: i64,
    b: i64,
    c: i64,
}

impl AdmissibleTriple {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self, SkeinError> {
        let t = Self { a, b, c };
        let (i, j, k) = t.internal();
        if (a + b + c) % 2 != 0 || i < 0 || j < 0 || k < 0 || a < 0 || b < 0 || c < 0 {
            return Err(SkeinError::Inadmissible(a, b, c));
        }
        Ok(t)
    }

    pub fn colors(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }

    /// `(i, j, k) = ((b+c-a)/2, (a+c-b)/2, (a+b-c)/2)`.
    pub fn internal(&self) -> (i64, i64, i64) {
        let (a, b, c) = (self.a, self.b, self.c);
        ((b + c - a) / 2, (a + c - b) / 2, (a + b - c) / 2)
    }
}

/// `θ(a,b,c) = (-1)^{i+j+k} [i+j+k+1]![i]![j]![k]! / ([i+j]![j+k]![i+k]!)`
/// as a factorial expression.
pub fn theta_expr(t: AdmissibleTriple) -> QFactorialExpression {
    let (i, j, k) = t.internal();
    QFactorialExpression::monomial(Sign::power_of_minus_one(i + j + k), 0)
        .with_qint_factorial(i + j + k + 1, 1)
        .with_qint_factorial(i, 1)
        .with_qint_factorial(j, 1)
        .with_qint_factorial(k, 1)
        .with_qint_factorial(i + j, -1)
        .with_qint_factorial(j + k, -1)
        .with_qint_factorial(i + k, -1)
}

/// The trihedron coefficient, expanded exactly. Only some triples give a
/// Laurent polynomial (`θ(2,2,2) = [4][3]/[2]²` does not); the rest fail
/// with `NotPolynomial` and should go through [`theta_expr`].
pub fn theta(a: i64, b: i64, c: i64) -> Result<LaurentPolynomial, SkeinError> {
    theta_expr(AdmissibleTriple::new(a, b, c)?).expand()
}

/// A signed monomial `±A^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwistMonomial {
    pub sign: Sign,
    pub exponent: i64,
}

impl TwistMonomial {
    pub fn pow(self, e: u32) -> Self {
        Self { sign: self.sign.pow(i64::from(e)), exponent: self.exponent * i64::from(e) }
    }

    pub fn to_polynomial(self) -> LaurentPolynomial {
        LaurentPolynomial::monomial(self.sign.to_bigint(), self.exponent)
    }

    pub fn to_expr(self) -> QFactorialExpression {
        QFactorialExpression::monomial(self.sign, self.exponent)
    }
}

/// Negative half-twist coefficient
/// `γ(a,b,c) = (-1)^{(a+b-c)/2} A^{a+b-c+(a²+b²-c²)/2}`.
pub fn gamma_twist(a: i64, b: i64, c: i64) -> Result<TwistMonomial, SkeinError> {
    AdmissibleTriple::new(a, b, c)?;
    // a+b-c even and a²+b²-c² ≡ a+b-c (mod 2), so both halves are exact.
    let exponent = a + b - c + (a * a + b * b - c * c) / 2;
    Ok(TwistMonomial { sign: Sign::power_of_minus_one((a + b - c) / 2), exponent })
}

/// Lickorish's evaluation of three circle bundles of sizes `x, y, z` joined
/// by the `x+y`, `y+z`, `z+x` idempotents:
/// `Δ_{x+y+z}! Δ_{x-1}! Δ_{y-1}! Δ_{z-1}! / (Δ_{y+z-1}! Δ_{z+x-1}! Δ_{x+y-1}!)`.
pub fn gamma_xyz(x: i64, y: i64, z: i64) -> Result<QFactorialExpression, SkeinError> {
    for v in [x, y, z] {
        require("gamma_xyz", 0, v)?;
    }
    let mut e = delta_fact(x + y + z)?;
    for n in [x - 1, y - 1, z - 1] {
        e = e * delta_fact(n)?;
    }
    for n in [y + z - 1, z + x - 1, x + y - 1] {
        e = e * delta_fact(n)?.inverse()?;
    }
    Ok(e)
}

/// `sign · A^a_shift · ∏ {n}!^{e_n} · ∏ {n}^{f_n}` with integer exponents.
///
/// Factorial and single exponents are kept apart as built and merged by
/// [`canonical_braces`](Self::canonical_braces); equality and every
/// expansion go through the merged form. A positive exponent on `{0}`
/// makes the expression vanish, a negative one makes it undefined.
#[derive(Debug, Clone)]
pub struct QFactorialExpression {
    sign: Sign,
    a_shift: i64,
    brace_factorials: BTreeMap<u32, i64>,
    brace_singles: BTreeMap<u32, i64>,
}

impl Default for QFactorialExpression {
    fn default() -> Self {
        Self::one()
    }
}

impl QFactorialExpression {
    pub fn one() -> Self {
        Self::monomial(Sign::Plus, 0)
    }

    pub fn monomial(sign: Sign, a_shift: i64) -> Self {
        Self { sign, a_shift, brace_factorials: BTreeMap::new(), brace_singles: BTreeMap::new() }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn a_shift(&self) -> i64 {
        self.a_shift
    }

    pub fn brace_factorials(&self) -> &BTreeMap<u32, i64> {
        &self.brace_factorials
    }

    pub fn brace_singles(&self) -> &BTreeMap<u32, i64> {
        &self.brace_singles
    }

    /// Multiplies by `{n}^e`, folding `{-n} = -{n}` into the sign.
    pub fn with_brace(mut self, n: i64, e: i64) -> Self {
        if e == 0 {
            return self;
        }
        if n < 0 {
            self.sign = self.sign * Sign::power_of_minus_one(e);
        }
        bump(&mut self.brace_singles, n.unsigned_abs() as u32, e);
        self
    }

    /// Multiplies by `({n}!)^e`, `n >= 0`.
    pub fn with_brace_factorial(mut self, n: u32, e: i64) -> Self {
        if n > 0 && e != 0 {
            bump(&mut self.brace_factorials, n, e);
        }
        self
    }

    /// Multiplies by `[n]^e = {n}^e / {1}^e`, `n >= 0`.
    pub fn with_qint(self, n: i64, e: i64) -> Self {
        debug_assert!(n >= 0);
        self.with_brace(n, e).with_brace(1, -e)
    }

    /// Multiplies by `([n]!)^e = {n}!^e / {1}^{ne}`, `n >= 0`.
    pub fn with_qint_factorial(self, n: i64, e: i64) -> Self {
        debug_assert!(n >= 0);
        self.with_brace_factorial(n as u32, e).with_brace(1, -n * e)
    }

    /// Multiplies by `A^k`.
    pub fn with_shift(mut self, k: i64) -> Self {
        self.a_shift += k;
        self
    }

    pub fn inverse(&self) -> Result<Self, SkeinError> {
        if self.is_zero() {
            return Err(SkeinError::DivisionByZero);
        }
        Ok(Self {
            sign: self.sign,
            a_shift: -self.a_shift,
            brace_factorials: self.brace_factorials.iter().map(|(&k, &e)| (k, -e)).collect(),
            brace_singles: self.brace_singles.iter().map(|(&k, &e)| (k, -e)).collect(),
        })
    }

    pub fn pow(&self, e: i64) -> Self {
        Self {
            sign: self.sign.pow(e),
            a_shift: self.a_shift * e,
            brace_factorials: self.brace_factorials.iter().map(|(&k, &v)| (k, v * e)).collect(),
            brace_singles: self.brace_singles.iter().map(|(&k, &v)| (k, v * e)).collect(),
        }
    }

    /// Net exponent of every `{k}` once factorials are written as products.
    pub fn canonical_braces(&self) -> BTreeMap<u32, i64> {
        let mut out = self.brace_singles.clone();
        let mut running = 0i64;
        // {n}! contributes to every {k} with k <= n; sweep from the top down.
        let top = self.brace_factorials.keys().next_back().copied().unwrap_or(0);
        for k in (1..=top).rev() {
            running += self.brace_factorials.get(&k).copied().unwrap_or(0);
            if running != 0 {
                bump(&mut out, k, running);
            }
        }
        out.retain(|_, e| *e != 0);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.canonical_braces().get(&0).is_some_and(|&e| e > 0)
    }

    fn check_defined(braces: &BTreeMap<u32, i64>) -> Result<(), SkeinError> {
        if braces.get(&0).is_some_and(|&e| e < 0) {
            return Err(SkeinError::DivisionByZero);
        }
        Ok(())
    }

    /// Exact lowest `A`-degree of the expansion; `None` for zero.
    pub fn lowest_degree(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let braces = self.canonical_braces();
        Some(self.a_shift - 2 * braces.iter().map(|(&k, &e)| i64::from(k) * e).sum::<i64>())
    }

    /// Sign of the lowest-`A` coefficient.
    pub fn leading_sign(&self) -> Sign {
        let total: i64 = self.canonical_braces().values().sum();
        self.sign * Sign::power_of_minus_one(total)
    }

    /// Numerator and denominator as separate Laurent polynomials, after
    /// cancellation but without any division.
    pub fn expand_fraction(&self) -> Result<(LaurentPolynomial, LaurentPolynomial), SkeinError> {
        let braces = self.canonical_braces();
        Self::check_defined(&braces)?;
        if self.is_zero() {
            return Ok((LaurentPolynomial::zero(), LaurentPolynomial::one()));
        }
        let mut num = LaurentPolynomial::monomial(self.sign.to_bigint(), self.a_shift);
        let mut den = LaurentPolynomial::one();
        for (&k, &e) in &braces {
            let b = qbrace(i64::from(k)).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num = &num * &b;
            } else {
                den = &den * &b;
            }
        }
        Ok((num, den))
    }

    /// Rational equality up to a signed monomial factor, decided by
    /// cross-multiplying the exact numerator and denominator polynomials.
    pub fn same_up_to_monomial(&self, other: &Self) -> Result<bool, SkeinError> {
        let (na, da) = self.expand_fraction()?;
        let (nb, db) = other.expand_fraction()?;
        let (lhs, rhs) = (&na * &db, &nb * &da);
        if lhs.is_zero() || rhs.is_zero() {
            return Ok(lhs.is_zero() && rhs.is_zero());
        }
        Ok(lhs.normalize_hat()?.0 == rhs.normalize_hat()?.0)
    }

    /// Full expansion; fails with `NotPolynomial` when the ratio is a
    /// genuine rational function.
    pub fn expand(&self) -> Result<LaurentPolynomial, SkeinError> {
        let (num, den) = self.expand_fraction()?;
        num.div_exact(&den).map_err(|err| match err {
            LaurentError::InexactDivision => SkeinError::NotPolynomial,
            other => other.into(),
        })
    }

    /// The first `n` terms from the low-`A` end: numerator and denominator
    /// products of `(1 - q^{-k})` are formed to depth `n` and divided.
    pub fn expand_to_depth(&self, n: usize) -> Result<TruncatedSeries, SkeinError> {
        if n == 0 {
            return Err(SkeinError::ZeroDepth);
        }
        let braces = self.canonical_braces();
        Self::check_defined(&braces)?;
        let Some(anchor) = self.lowest_degree() else {
            return Ok(TruncatedSeries::zero(self.a_shift, n));
        };
        let mut num = TruncatedSeries::one(n).into_coeffs();
        let mut den = TruncatedSeries::one(n).into_coeffs();
        for (&k, &e) in &braces {
            let target = if e > 0 { &mut num } else { &mut den };
            for _ in 0..e.unsigned_abs() {
                mul_one_minus_x_pow(target, k as usize);
            }
        }
        let hat = series_div(&TruncatedSeries::new(0, num), &TruncatedSeries::new(0, den), n)?;
        let sign = self.leading_sign().to_bigint();
        Ok(TruncatedSeries::new(anchor, hat.into_coeffs().into_iter().map(|c| c * &sign).collect()))
    }

    /// Expansion covering every `A`-degree below `cutoff`; `None` when the
    /// expression vanishes or starts at or past the cutoff.
    pub fn expand_below(&self, cutoff: i64) -> Result<Option<TruncatedSeries>, SkeinError> {
        let Some(anchor) = self.lowest_degree() else {
            return Ok(None);
        };
        if anchor >= cutoff {
            return Ok(None);
        }
        let depth = (cutoff - anchor + Q_STEP - 1) / Q_STEP;
        self.expand_to_depth(depth as usize).map(Some)
    }
}

fn bump(map: &mut BTreeMap<u32, i64>, k: u32, e: i64) {
    let slot = map.entry(k).or_insert(0);
    *slot += e;
    if *slot == 0 {
        map.remove(&k);
    }
}

impl PartialEq for QFactorialExpression {
    fn eq(&self, other: &Self) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (false, false) => {
                self.sign == other.sign
                    && self.a_shift == other.a_shift
                    && self.canonical_braces() == other.canonical_braces()
            }
            _ => false,
        }
    }
}

impl Mul for QFactorialExpression {
    type Output = QFactorialExpression;

    fn mul(self, rhs: QFactorialExpression) -> QFactorialExpression {
        &self * &rhs
    }
}

impl Mul for &QFactorialExpression {
    type Output = QFactorialExpression;

    fn mul(self, rhs: &QFactorialExpression) -> QFactorialExpression {
        let mut out = self.clone();
        out.sign = out.sign * rhs.sign;
        out.a_shift += rhs.a_shift;
        for (&k, &e) in &rhs.brace_factorials {
            bump(&mut out.brace_factorials, k, e);
        }
        for (&k, &e) in &rhs.brace_singles {
            bump(&mut out.brace_singles, k, e);
        }
        out
    }
}

impl fmt::Display for QFactorialExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}A^{}", if self.sign == Sign::Plus { "" } else { "-" }, self.a_shift)?;
        for (k, e) in &self.brace_factorials {
            write!(f, " {{{k}}}!^{e}")?;
        }
        for (k, e) in &self.brace_singles {
            write!(f, " {{{k}}}^{e}")?;
        }
        Ok(())
    }
}

/// Minimum `A`-degree of `Δ_{2j} / θ(n, n, 2j)`, read off the exact
/// expansions of the numerator and denominator polynomials.
pub fn delta_over_theta_min_degree(n: i64, j: i64) -> Result<i64, SkeinError> {
    let ratio = delta_expr(2 * j)? * theta_expr(AdmissibleTriple::new(n, n, 2 * j)?).inverse()?;
    let (num, den) = ratio.expand_fraction()?;
    match (num.min_degree(), den.min_degree()) {
        (Some(a), Some(b)) => Ok(a - b),
        _ => Err(LaurentError::ZeroPolynomial.into()),
    }
}
