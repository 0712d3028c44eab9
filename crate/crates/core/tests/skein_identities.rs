use colored_jones::laurent::{LaurentPolynomial, Sign};
use colored_jones::series::TruncatedSeries;
use colored_jones::skein::{
    delta, delta_expr, delta_over_theta_min_degree, gamma_twist, gamma_xyz, qbrace, qbrace_fact, theta, theta_expr,
    AdmissibleTriple, QFactorialExpression, SkeinError,
};
use num_bigint::BigInt;

/// `1 - k x^{n+1} / (1 - x)` to `depth` terms, `x = q^{-1}`.
fn one_minus_geometric_tail(k: i64, n: usize, depth: usize) -> TruncatedSeries {
    let coeffs: Vec<i64> = (0..depth).map(|i| if i == 0 { 1 } else if i > n { -k } else { 0 }).collect();
    TruncatedSeries::from_i64(0, &coeffs)
}

fn hat(s: &TruncatedSeries) -> TruncatedSeries {
    s.hat().unwrap().0
}

#[test]
fn top_coefficients_of_double_factorial() {
    for n in 1..=25usize {
        let depth = 2 * n + 1;
        let lhs = qbrace_fact(2 * n as u32).truncate_low(depth).unwrap();
        let shift = -((3 * n * n + n) as i64);
        let sign = Sign::power_of_minus_one(n as i64).to_bigint();
        let base = qbrace_fact(n as u32).shift(shift).scale(&sign).truncate_low(depth).unwrap();
        let rhs = base.mul(&one_minus_geometric_tail(1, n, depth));
        assert_eq!(lhs, rhs, "N = {n}");
    }
}

#[test]
fn top_coefficients_of_squared_double_factorial() {
    for n in 1..=25usize {
        let depth = 2 * n + 1;
        let f = qbrace_fact(2 * n as u32);
        let lhs = (&f * &f).truncate_low(depth).unwrap();
        let g = qbrace_fact(n as u32);
        let base = (&g * &g).shift(-2 * (3 * n * n + n) as i64).truncate_low(depth).unwrap();
        let rhs = base.mul(&one_minus_geometric_tail(2, n, depth));
        assert_eq!(lhs, rhs, "N = {n}");
    }
}

#[test]
fn theta_extreme_triple_is_delta() {
    for n in 1..=8 {
        let d = delta(2 * n).unwrap();
        assert_eq!(theta(n, n, 2 * n).unwrap(), d);
        assert_eq!(gamma_xyz(n, n, 0).unwrap().expand().unwrap(), d);
    }
    assert_eq!(theta(0, 0, 0).unwrap(), LaurentPolynomial::one());
    assert_eq!(theta(1, 1, 0).unwrap(), LaurentPolynomial::from_terms([(2, -1), (-2, -1)]));
}

#[test]
fn theta_is_symmetric() {
    for a in 0..=12i64 {
        for b in 0..=12 {
            for c in 0..=12 {
                let Ok(t) = AdmissibleTriple::new(a, b, c) else { continue };
                let reference = theta_expr(t);
                let (num, den) = reference.expand_fraction().unwrap();
                for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                    let other = theta_expr(AdmissibleTriple::new(x, y, z).unwrap());
                    let (n2, d2) = other.expand_fraction().unwrap();
                    assert_eq!(&num * &d2, &n2 * &den, "theta({a},{b},{c}) vs ({x},{y},{z})");
                }
            }
        }
    }
}

#[test]
fn theta_triples_that_are_not_polynomials() {
    assert_eq!(theta(2, 2, 2), Err(SkeinError::NotPolynomial));
    let depth = 12;
    let e = theta_expr(AdmissibleTriple::new(2, 2, 2).unwrap());
    let (num, den) = e.expand_fraction().unwrap();
    let product = e.expand_to_depth(depth).unwrap().mul(&den.truncate_low(depth).unwrap());
    assert_eq!(product, num.truncate_low(depth).unwrap());
}

#[test]
fn gamma_xyz_is_symmetric() {
    for x in 0..=8i64 {
        for y in 0..=8 {
            for z in 0..=8 {
                let reference = gamma_xyz(x, y, z).unwrap();
                for (a, b, c) in [(x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
                    let other = gamma_xyz(a, b, c).unwrap();
                    assert_eq!(reference, other, "({x},{y},{z}) vs ({a},{b},{c})");
                }
                if x + y + z <= 9 {
                    let d = 6;
                    match (reference.lowest_degree(), gamma_xyz(z, x, y).unwrap().lowest_degree()) {
                        (Some(_), Some(_)) => assert_eq!(
                            reference.expand_to_depth(d).unwrap(),
                            gamma_xyz(z, x, y).unwrap().expand_to_depth(d).unwrap()
                        ),
                        (a, b) => assert_eq!(a, b),
                    }
                }
            }
        }
    }
}

#[test]
fn gamma_nnn_closed_form() {
    for n in 1..=8i64 {
        let closed = QFactorialExpression::monomial(Sign::power_of_minus_one(n), 0)
            .with_brace_factorial((3 * n + 1) as u32, 1)
            .with_brace_factorial(n as u32, 3)
            .with_brace_factorial((2 * n) as u32, -3)
            .with_brace(1, -1);
        assert!(gamma_xyz(n, n, n).unwrap().same_up_to_monomial(&closed).unwrap(), "N = {n}");
        assert!(!gamma_xyz(n, n, n).unwrap().same_up_to_monomial(&closed.clone().with_brace(2, 1)).unwrap());
    }
}

#[test]
fn gamma_nnn_is_not_a_polynomial_for_small_n() {
    for n in 1..=4 {
        assert_eq!(gamma_xyz(n, n, n).unwrap().expand(), Err(SkeinError::NotPolynomial), "N = {n}");
    }
}

#[test]
fn double_drop_graph_is_not_a_polynomial() {
    for n in 2..=6 {
        let ratio = delta_expr(n - 2).unwrap() * delta_expr(n - 1).unwrap().inverse().unwrap();
        let e = ratio.pow(2) * gamma_xyz(n, n, n - 2).unwrap();
        assert_eq!(e.expand(), Err(SkeinError::NotPolynomial), "N = {n}");
    }
}

#[test]
fn normalized_top_summand_chain() {
    // Γ(3,3,3)/Δ_3 against (-1)^N {N}! (1 + 2x^{N+1}/(1-x) + x^{N+1}) to 2N+1 terms.
    let n = 3usize;
    let depth = 2 * n + 1;
    let expr = gamma_xyz(3, 3, 3).unwrap() * delta_expr(3).unwrap().inverse().unwrap();
    let via_series = hat(&expr.expand_to_depth(depth).unwrap());

    // Independent route: divide the exact numerator and denominator.
    let (num, den) = expr.expand_fraction().unwrap();
    let (num, den) = (num.normalize_hat().unwrap().0, den.normalize_hat().unwrap().0);
    let mut quotient: Vec<BigInt> = Vec::new();
    for i in 0..depth as i64 {
        let mut acc = num.coeff(4 * i);
        for j in 1..=i {
            acc -= den.coeff(4 * j) * &quotient[(i - j) as usize];
        }
        quotient.push(acc);
    }
    assert_eq!(via_series, TruncatedSeries::new(0, quotient));

    let tail: Vec<i64> = (0..depth).map(|i| if i == 0 { 1 } else if i == n + 1 { 3 } else if i > n + 1 { 2 } else { 0 }).collect();
    let predicted = qbrace_fact(n as u32).truncate_low(depth).unwrap().mul(&TruncatedSeries::from_i64(0, &tail));
    assert_eq!(via_series, hat(&predicted));
}

#[test]
fn half_twist_degree_steps() {
    for n in 1..=20i64 {
        let top = gamma_twist(n, n, 2 * n).unwrap().exponent;
        let next = gamma_twist(n, n, 2 * (n - 1)).unwrap().exponent;
        assert_eq!(next, top + 4 * n, "N = {n}");
        for j in 1..=n {
            assert!(gamma_twist(n, n, 2 * (j - 1)).unwrap().exponent >= gamma_twist(n, n, 2 * j).unwrap().exponent);
        }
    }
}

#[test]
fn fusion_ratio_degree_steps() {
    for n in 1..=12 {
        for j in 1..=n {
            let lower = delta_over_theta_min_degree(n, j - 1).unwrap();
            let upper = delta_over_theta_min_degree(n, j).unwrap();
            assert_eq!(lower, upper + 2, "N = {n}, j = {j}");
        }
        assert_eq!(delta_over_theta_min_degree(n, n).unwrap(), 0);
    }
}

#[test]
fn brace_sign_convention() {
    for k in 1..6 {
        let b = qbrace(k);
        assert_eq!(b.min_degree(), Some(-2 * k));
        assert_eq!(b.coeff(-2 * k), BigInt::from(-1));
    }
}
