//! Verification suites. Each returns one [`CheckResult`] per claim checked.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use colored_jones::graphs::{same_higher_stability, Multigraph};
use colored_jones::jones::{classify_labeling, contributing_labelings, max_depth, oracle_fig8, summand_expression, LabelTuple};
use colored_jones::laurent::{LaurentPolynomial, Sign};
use colored_jones::series::TruncatedSeries;
use colored_jones::skein::{delta, delta_over_theta_min_degree, gamma_twist, gamma_xyz, qbrace_fact, theta, QFactorialExpression};
use colored_jones::stability::{
    closed_form_head, closed_form_neck, difference_neck, extract_next_stable, t2_observed, t2_predicted, ColoredSeries,
    TwistClass,
};
use colored_jones::{truncated_colored_jones, PretzelSpec};
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::report::{CheckResult, VerifyReport};
use crate::{cmd_stabilize, default_fixture_path, CliError, RunConfig, Source};

/// Published stable sequences of the mirrored `8_5`.
pub const REFERENCE_T0: [i64; 13] = [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1];
pub const REFERENCE_T1: [i64; 10] = [4, -1, -4, -3, -3, 1, 0, 4, 3, 3];
pub const REFERENCE_T2: [i64; 6] = [-2, 10, 4, -2, -7, -12];

/// Highest `N` at which a second-order table mismatch is a hard failure.
pub const T2_HARD_LIMIT: i64 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Tables,
    Neck,
    Difference,
    T2,
    Lemmas,
    Degrees,
    Agreement,
    Oracle,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Tables,
        Suite::Neck,
        Suite::Difference,
        Suite::T2,
        Suite::Lemmas,
        Suite::Degrees,
        Suite::Agreement,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tables => "tables",
            Suite::Neck => "neck",
            Suite::Difference => "difference",
            Suite::T2 => "t2",
            Suite::Lemmas => "lemmas",
            Suite::Degrees => "degrees",
            Suite::Agreement => "agreement",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown suite {s:?}")))
    }
}

/// Size bounds; `None` picks each suite's own default.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Highest color any suite may compute.
    pub max_color: Option<i64>,
    /// Upper bound on `N` for the identity and degree suites.
    pub max_n: Option<i64>,
    pub fixture_path: PathBuf,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { max_color: None, max_n: None, fixture_path: default_fixture_path() }
    }
}

pub fn cmd_verify(suites: &[Suite], opts: &VerifyOptions) -> VerifyReport {
    let expanded: Vec<Suite> = if suites.contains(&Suite::All) { Suite::EACH.to_vec() } else { suites.to_vec() };
    let checks = expanded.iter().flat_map(|&s| run_suite(s, opts)).collect();
    VerifyReport { suites: expanded.iter().map(|s| s.name().to_string()).collect(), checks }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Vec<CheckResult> {
    match suite {
        Suite::Tables => tables(opts),
        Suite::Neck => neck(opts.max_color.unwrap_or(8)),
        Suite::Difference => difference(opts.max_color.unwrap_or(7)),
        Suite::T2 => t2(opts.max_color.unwrap_or(T2_HARD_LIMIT + 3)),
        Suite::Lemmas => lemmas(opts.max_n.unwrap_or(25)),
        Suite::Degrees => degrees(opts.max_n.unwrap_or(10)),
        Suite::Agreement => agreement(opts.max_color.map_or(6, |c| c - 1)),
        Suite::Oracle => oracle(opts.max_color.map_or(8, |c| c - 1), opts.max_n.unwrap_or(10)),
        Suite::All => Suite::EACH.iter().flat_map(|&s| run_suite(s, opts)).collect(),
    }
}

fn check(suite: Suite, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult { suite: suite.name().into(), name: name.into(), passed, hard: true, detail: detail.into() }
}

fn ints(v: &[BigInt]) -> String {
    v.iter().map(BigInt::to_string).collect::<Vec<_>>().join(" ")
}

fn strs_are(v: &[String], expected: &[i64]) -> bool {
    v.len() == expected.len() && v.iter().zip(expected).all(|(a, b)| *a == b.to_string())
}

fn is_prefix(prefix: &[String], of: &[i64]) -> bool {
    prefix.len() <= of.len() && strs_are(prefix, &of[..prefix.len()])
}

fn spec(t: [u32; 3]) -> PretzelSpec {
    PretzelSpec::new(t[0], t[1], t[2]).expect("positive twists")
}

/// Hat-normalized `J_c` to its full `3(c-1)+1` guaranteed terms.
fn colored(spec: &PretzelSpec, color: i64) -> Result<ColoredSeries, CliError> {
    let n = color - 1;
    Ok(truncated_colored_jones(n, spec, max_depth(n), true)?.colored_series()?)
}

/// Every `(spec, color)` pair computed in parallel.
fn colored_table(specs: &[PretzelSpec], colors: &[i64]) -> Result<HashMap<(PretzelSpec, i64), ColoredSeries>, CliError> {
    let jobs: Vec<(PretzelSpec, i64)> = specs.iter().flat_map(|&s| colors.iter().map(move |&c| (s, c))).collect();
    jobs.par_iter().map(|&(s, c)| Ok(((s, c), colored(&s, c)?))).collect()
}

fn grid() -> Vec<PretzelSpec> {
    let mut out = Vec::new();
    for a in 1..=4 {
        for b in 1..=4 {
            for c in 1..=4 {
                out.push(spec([a, b, c]));
            }
        }
    }
    out
}

fn tables(opts: &VerifyOptions) -> Vec<CheckResult> {
    let s = Suite::Tables;
    let config = RunConfig {
        fixture_path: opts.fixture_path.clone(),
        knot: "8_5bar".into(),
        colors: vec![5, 6, 7],
        source: Source::Fixture,
        ..RunConfig::default()
    };
    let mut out = Vec::new();
    match cmd_stabilize(&config) {
        Err(e) => out.push(check(s, "stabilize reference rows", false, e.to_string())),
        Ok(r) => {
            let seq = |k: usize| r.sequences.get(k);
            let t0 = seq(0).map(|t| is_prefix(&t.observed, &REFERENCE_T0) && t.extended.len() >= 13 && strs_are(&t.extended[..13], &REFERENCE_T0));
            out.push(check(s, "T0 row", t0 == Some(true), seq(0).map_or("missing".into(), |t| t.extended.join(" "))));
            let t1 = seq(1).map(|t| is_prefix(&t.observed, &REFERENCE_T1) && t.extended.len() >= 10 && strs_are(&t.extended[..10], &REFERENCE_T1));
            out.push(check(
                s,
                "T1 row",
                t1 == Some(true),
                seq(1).map_or("missing".into(), |t| format!("observed {} | extended {}", t.observed.join(" "), t.extended.join(" "))),
            ));
            let t2 = seq(2).map(|t| strs_are(&t.observed, &REFERENCE_T2));
            out.push(check(s, "T2 row", t2 == Some(true), seq(2).map_or("missing".into(), |t| t.observed.join(" "))));
        }
    }
    // The multi-sum reproduces the reference rows themselves.
    let (_, rows) = match crate::load_series(&config) {
        Ok(v) => v,
        Err(e) => {
            out.push(check(s, "reference rows load", false, e.to_string()));
            return out;
        }
    };
    for row in rows {
        let got = colored(&spec([3, 3, 2]), row.color);
        let passed = got.as_ref().is_ok_and(|g| {
            let k = g.series.depth().min(row.series.depth());
            g.series.coeffs()[..k] == row.series.coeffs()[..k]
        });
        let detail = got.map_or_else(|e| e.to_string(), |g| format!("{} computed terms", g.series.depth()));
        out.push(check(s, format!("P(-3,-3,-2) color {} matches reference", row.color), passed, detail));
    }
    out
}

fn neck(max_color: i64) -> Vec<CheckResult> {
    let s = Suite::Neck;
    let specs = grid();
    let colors: Vec<i64> = (4..=max_color).collect();
    let table = match colored_table(&specs, &colors) {
        Ok(t) => t,
        Err(e) => return vec![check(s, "compute", false, e.to_string())],
    };
    let head = closed_form_head(3 * max_color as usize + 1);
    let mut out = Vec::new();
    for n in 4..=max_color - 2 {
        let mut failures = Vec::new();
        let window = n as usize + 1;
        for sp in &specs {
            let rows: Vec<ColoredSeries> = (n..=n + 2).map(|c| table[&(*sp, c)].clone()).collect();
            let expected = closed_form_neck(sp.neck_multiplicity(), window).expect("m <= 3");
            match extract_next_stable(&rows, std::slice::from_ref(&head)) {
                Ok(t1) if t1.len() == window && t1.coeffs == expected.coeffs => {}
                Ok(t1) => failures.push(format!("({sp}): {} vs {}", ints(&t1.coeffs), ints(&expected.coeffs))),
                Err(e) => failures.push(format!("({sp}): {e}")),
            }
        }
        let detail = if failures.is_empty() {
            format!("{} specs, window {window}", specs.len())
        } else {
            failures.join("; ")
        };
        out.push(check(s, format!("colors {}-{}", n, n + 2), failures.is_empty(), detail));
    }
    out
}

fn difference(max_color: i64) -> Vec<CheckResult> {
    let s = Suite::Difference;
    let specs = grid();
    let colors: Vec<i64> = (4..=max_color).collect();
    let table = match colored_table(&specs, &colors) {
        Ok(t) => t,
        Err(e) => return vec![check(s, "compute", false, e.to_string())],
    };
    let mut out = Vec::new();
    for n in 4..=max_color - 1 {
        let mut failures = Vec::new();
        for sp in &specs {
            let r = difference_neck(&table[&(*sp, n)], &table[&(*sp, n + 1)], sp.neck_multiplicity(), n as usize - 1);
            match r {
                Ok(r) if r.passed() => {}
                Ok(r) => failures.push(format!("({sp}): top zero {} tail {} vs {}", r.top_vanishes(), ints(&r.observed), ints(&r.expected))),
                Err(e) => failures.push(format!("({sp}): {e}")),
            }
        }
        let detail = if failures.is_empty() { format!("{} specs, depth {}", specs.len(), n - 1) } else { failures.join("; ") };
        out.push(check(s, format!("colors {}-{}", n, n + 1), failures.is_empty(), detail));
    }
    out
}

fn t2(max_color: i64) -> Vec<CheckResult> {
    let s = Suite::T2;
    let ns: Vec<i64> = (5..).take_while(|n| n + 3 <= max_color).collect();
    let mut specs: Vec<(TwistClass, PretzelSpec)> = Vec::new();
    for class in TwistClass::all() {
        for three_plus in [3, 4] {
            let rep = class.representative(three_plus);
            if !specs.contains(&(class, rep)) {
                specs.push((class, rep));
            }
        }
    }
    let all_specs: Vec<PretzelSpec> = specs.iter().map(|(_, sp)| *sp).collect();
    let colors: Vec<i64> = ns.iter().flat_map(|&n| n + 1..=n + 3).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let table = match colored_table(&all_specs, &colors) {
        Ok(t) => t,
        Err(e) => return vec![check(s, "compute", false, e.to_string())],
    };
    let mut out = Vec::new();
    for (class, sp) in specs {
        let predicted = t2_predicted(class);
        for &n in &ns {
            let c = n + 1;
            let rows = [&table[&(sp, c)], &table[&(sp, c + 1)], &table[&(sp, c + 2)]];
            let (passed, detail) = match t2_observed(rows, 5) {
                Ok(v) => (v.iter().zip(predicted).all(|(a, b)| *a == BigInt::from(b)), ints(&v)),
                Err(e) => (false, e.to_string()),
            };
            let mut r = check(s, format!("{class} via ({sp}) N={n}"), passed, detail);
            r.hard = n <= T2_HARD_LIMIT;
            out.push(r);
        }
    }
    out
}

/// `1 - k x^{n+1}/(1 - x)` to `depth` terms.
fn geometric_tail(k: i64, n: usize, depth: usize) -> TruncatedSeries {
    let v: Vec<i64> = (0..depth).map(|i| if i == 0 { 1 } else if i > n { -k } else { 0 }).collect();
    TruncatedSeries::from_i64(0, &v)
}

fn lemmas(max_n: i64) -> Vec<CheckResult> {
    let s = Suite::Lemmas;
    let mut out = Vec::new();

    let results: Vec<(i64, bool, bool)> = (1..=max_n)
        .into_par_iter()
        .map(|n| {
            let nu = n as usize;
            let depth = 2 * nu + 1;
            let shift = -(3 * n * n + n);
            let big = qbrace_fact(2 * n as u32);
            let small = qbrace_fact(n as u32);
            let sign = Sign::power_of_minus_one(n).to_bigint();
            let single = big.truncate_low(depth).ok()
                == small.shift(shift).scale(&sign).truncate_low(depth).ok().map(|b| b.mul(&geometric_tail(1, nu, depth)));
            let squared = (&big * &big).truncate_low(depth).ok()
                == (&small * &small).shift(2 * shift).truncate_low(depth).ok().map(|b| b.mul(&geometric_tail(2, nu, depth)));
            (n, single, squared)
        })
        .collect();
    let bad1: Vec<String> = results.iter().filter(|r| !r.1).map(|r| r.0.to_string()).collect();
    let bad2: Vec<String> = results.iter().filter(|r| !r.2).map(|r| r.0.to_string()).collect();
    out.push(check(s, format!("top 2N+1 terms of {{2N}}!, N <= {max_n}"), bad1.is_empty(), failing_ns(&bad1)));
    out.push(check(s, format!("top 2N+1 terms of {{2N}}!^2, N <= {max_n}"), bad2.is_empty(), failing_ns(&bad2)));

    let bad: Vec<String> = (1..=8)
        .filter(|&n| {
            let d = delta(2 * n).ok();
            !(theta(n, n, 2 * n).ok() == d && gamma_xyz(n, n, 0).ok().and_then(|g| g.expand().ok()) == d)
        })
        .map(|n| n.to_string())
        .collect();
    out.push(check(s, "theta(N,N,2N) = Delta_2N, N <= 8", bad.is_empty(), failing_ns(&bad)));

    let bad: Vec<String> = (1..=8)
        .filter(|&n| {
            let closed = QFactorialExpression::monomial(Sign::power_of_minus_one(n), 0)
                .with_brace_factorial((3 * n + 1) as u32, 1)
                .with_brace_factorial(n as u32, 3)
                .with_brace_factorial((2 * n) as u32, -3)
                .with_brace(1, -1);
            !gamma_xyz(n, n, n).is_ok_and(|g| g.same_up_to_monomial(&closed).unwrap_or(false))
        })
        .map(|n| n.to_string())
        .collect();
    out.push(check(s, "Gamma(N,N,N) closed form, N <= 8", bad.is_empty(), failing_ns(&bad)));

    let bad: Vec<String> = (1..=20)
        .filter(|&n| {
            let exp = |j: i64| gamma_twist(n, n, 2 * j).map(|g| g.exponent).unwrap_or(i64::MIN);
            exp(n - 1) != exp(n) + 4 * n || (1..=n).any(|j| exp(j - 1) < exp(j))
        })
        .map(|n| n.to_string())
        .collect();
    out.push(check(s, "half-twist degree steps, N <= 20", bad.is_empty(), failing_ns(&bad)));

    let bad: Vec<String> = (1..=12)
        .filter(|&n| {
            (1..=n).any(|j| {
                match (delta_over_theta_min_degree(n, j - 1), delta_over_theta_min_degree(n, j)) {
                    (Ok(lo), Ok(hi)) => lo != hi + 2,
                    _ => true,
                }
            })
        })
        .map(|n| n.to_string())
        .collect();
    out.push(check(s, "fusion ratio degree steps, N <= 12", bad.is_empty(), failing_ns(&bad)));
    out
}

fn failing_ns(bad: &[String]) -> String {
    if bad.is_empty() {
        "all N".into()
    } else {
        format!("fails at N = {}", bad.join(","))
    }
}

fn degrees(max_n: i64) -> Vec<CheckResult> {
    let s = Suite::Degrees;
    let sp = spec([1, 1, 1]);
    (1..=max_n)
        .map(|n| {
            let top = summand_expression(n, LabelTuple([n; 3]), &sp, true).ok().and_then(|e| e.lowest_degree());
            let mut parts = Vec::new();
            let mut passed = top.is_some();
            for labels in contributing_labelings(n) {
                let kind = classify_labeling(n, labels).expect("contributing");
                let Ok(e) = summand_expression(n, labels, &sp, true) else {
                    passed = false;
                    continue;
                };
                let (Some(d), Some(t)) = (e.lowest_degree(), top) else { continue };
                let drop = (d - t) / 4;
                let bound = kind.min_degree_drop(n);
                passed &= (d - t) % 4 == 0 && drop >= bound;
                parts.push(format!("{labels}:{drop}>={bound}"));
            }
            check(s, format!("N={n}"), passed, parts.join(" "))
        })
        .collect()
}

fn hat_coeffs(spec: &PretzelSpec, n: i64) -> Result<Vec<BigInt>, CliError> {
    Ok(colored(spec, n + 1)?.series.padded_coeffs(max_depth(n)))
}

fn agreement(max_n: i64) -> Vec<CheckResult> {
    let s = Suite::Agreement;
    let mut out = Vec::new();
    let agreeing = [([2, 1, 1], [3, 1, 1], 1u32), ([3, 2, 1], [4, 2, 1], 2)];
    let differing = [([2, 1, 1], [3, 1, 1], 2u32), ([1, 1, 1], [2, 1, 1], 1)];
    for (a, b, m) in agreeing {
        let (sa, sb) = (spec(a), spec(b));
        let predicate = same_higher_stability(&Multigraph::of_pretzel(&sa), &Multigraph::of_pretzel(&sb), m).unwrap_or(false);
        let mut detail = Vec::new();
        let mut passed = predicate;
        for n in 1..=max_n {
            let window = ((m as i64 + 1) * n).min(3 * n + 1) as usize;
            match (hat_coeffs(&sa, n), hat_coeffs(&sb, n)) {
                (Ok(x), Ok(y)) => {
                    let ok = x[..window] == y[..window];
                    passed &= ok;
                    if !ok {
                        detail.push(format!("N={n} disagrees within {window}"));
                    }
                }
                _ => passed = false,
            }
        }
        let detail = if detail.is_empty() { format!("agree to (m+1)N for N <= {max_n}") } else { detail.join("; ") };
        out.push(check(s, format!("({}) ~ ({}) at m={m}", sa, sb), passed, detail));
    }
    for (a, b, m) in differing {
        let (sa, sb) = (spec(a), spec(b));
        let predicate = same_higher_stability(&Multigraph::of_pretzel(&sa), &Multigraph::of_pretzel(&sb), m).unwrap_or(true);
        let witness = (1..=max_n).find(|&n| {
            let window = ((m as i64 + 1) * n).min(3 * n + 1) as usize;
            match (hat_coeffs(&sa, n), hat_coeffs(&sb, n)) {
                (Ok(x), Ok(y)) => x[..window] != y[..window],
                _ => false,
            }
        });
        let detail = match witness {
            Some(n) => format!("reductions differ; disagreement within (m+1)N at N={n}"),
            None => "no disagreement found".into(),
        };
        out.push(check(s, format!("({}) vs ({}) at m={m}", sa, sb), !predicate && witness.is_some(), detail));
    }
    out
}

fn oracle(max_n: i64, max_head_n: i64) -> Vec<CheckResult> {
    let s = Suite::Oracle;
    let top_hat = |p: &LaurentPolynomial, depth: usize| -> Option<TruncatedSeries> {
        let (h, ..) = p.normalize_hat().ok()?;
        let avail = (h.max_degree()? / 4 + 1) as usize;
        h.truncate_low(depth.min(avail)).ok()
    };
    let fig8 = spec([2, 1, 1]);
    let bad: Vec<String> = (1..=max_n)
        .into_par_iter()
        .filter(|&n| {
            let depth = max_depth(n);
            let ours = truncated_colored_jones(n, &fig8, depth, true).ok().and_then(|r| r.hat().ok());
            ours.is_none() || ours != top_hat(&oracle_fig8(n), depth)
        })
        .map(|n| n.to_string())
        .collect();
    let mut out = vec![check(s, format!("P(-2,-1,-1) multi-sum vs figure-eight sum, N <= {max_n}"), bad.is_empty(), failing_ns(&bad))];
    let bad: Vec<String> = (1..=max_head_n)
        .filter(|&n| {
            let depth = n as usize + 1;
            let expected = qbrace_fact(2 * n as u32).normalize_hat().ok().and_then(|(h, ..)| h.truncate_low(depth).ok());
            expected.is_none() || top_hat(&oracle_fig8(n), depth) != expected
        })
        .map(|n| n.to_string())
        .collect();
    out.push(check(s, format!("figure-eight head is {{2N}}!, N <= {max_head_n}"), bad.is_empty(), failing_ns(&bad)));
    out
}
