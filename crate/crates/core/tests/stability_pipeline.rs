use std::path::PathBuf;

use colored_jones::fixture::{load_fixture, rows_for};
use colored_jones::jones::oracle_fig8;
use colored_jones::laurent::LaurentPolynomial;
use colored_jones::series::{euler_product, partial_sums};
use colored_jones::stability::{
    closed_form_head, closed_form_neck, difference_neck, extract_next_stable, t2_observed, t2_predicted,
    ColoredSeries, StableSequence, TwistClass,
};
use colored_jones::{truncated_colored_jones, PretzelSpec};
use num_bigint::BigInt;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn eight_five_rows() -> Vec<ColoredSeries> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/colored_jones.txt");
    let table = load_fixture(path).unwrap();
    rows_for(&table, "8_5bar").into_iter().map(|(c, row)| row.to_colored_series(c)).collect()
}

fn fig8_colored(color: i64) -> ColoredSeries {
    let full: LaurentPolynomial = oracle_fig8(color - 1);
    let (h, ..) = full.normalize_hat().unwrap();
    let depth = (h.max_degree().unwrap() / 4 + 1) as usize;
    ColoredSeries { color, series: h.truncate_low(depth).unwrap() }
}

fn computed(spec: &PretzelSpec, color: i64) -> ColoredSeries {
    let n = color - 1;
    truncated_colored_jones(n, spec, (3 * n + 1) as usize, true).unwrap().colored_series().unwrap()
}

#[test]
fn reference_tables_stabilize() {
    let rows = eight_five_rows();
    assert_eq!(rows.len(), 3);

    let t0 = extract_next_stable(&rows, &[]).unwrap();
    assert_eq!(t0.len(), 7);
    let head = closed_form_head(19);
    assert!(t0.agrees_with(&head));
    assert_eq!(&head.to_i64_vec().unwrap()[..13], &[1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);

    let t1 = extract_next_stable(&rows, std::slice::from_ref(&head)).unwrap();
    assert_eq!(t1.to_i64_vec().unwrap(), vec![4, -1, -4, -3, -3, 1]);
    let neck = closed_form_neck(3, 12).unwrap();
    assert!(t1.agrees_with(&neck));
    assert_eq!(&neck.to_i64_vec().unwrap()[..10], &[4, -1, -4, -3, -3, 1, 0, 4, 3, 3]);

    let t2 = extract_next_stable(&rows, &[head, neck]).unwrap();
    assert_eq!(t2.to_i64_vec().unwrap(), vec![-2, 10, 4, -2, -7, -12]);
}

#[test]
fn head_agrees_with_fig8_pipeline() {
    let rows: Vec<ColoredSeries> = (12..=14).map(fig8_colored).collect();
    let t0 = extract_next_stable(&rows, &[]).unwrap();
    assert_eq!(t0.len(), 14);
    assert!(t0.agrees_with(&closed_form_head(30)));
}

#[test]
fn necks_match_closed_form_on_small_grid() {
    for twists in [[1u32, 1, 1], [2, 1, 1], [2, 3, 1], [4, 4, 4]] {
        let spec = PretzelSpec::new(twists[0], twists[1], twists[2]).unwrap();
        let m = spec.neck_multiplicity();
        let rows: Vec<ColoredSeries> = (4..=6).map(|c| computed(&spec, c)).collect();
        let head = closed_form_head(40);
        let t1 = extract_next_stable(&rows, std::slice::from_ref(&head)).unwrap();
        assert_eq!(t1.len(), 5);
        assert!(t1.agrees_with(&closed_form_neck(m, 40).unwrap()), "{spec}");
    }
}

#[test]
fn consecutive_differences() {
    let r = difference_neck(&fig8_colored(6), &fig8_colored(7), 1, 5).unwrap();
    assert!(r.passed(), "{r:?}");
    let rows = eight_five_rows();
    let r = difference_neck(&rows[1], &rows[2], 3, 5).unwrap();
    assert!(r.passed(), "{r:?}");
    let wrong_m = difference_neck(&rows[1], &rows[2], 2, 5).unwrap();
    assert!(wrong_m.top_vanishes() && !wrong_m.tail_matches());
}

#[test]
fn neck_and_difference_forms_agree() {
    // head + x^c neck_c - (head + x^{c+1} neck_{c+1}) reproduces (1 + m - x) P.
    for m in 0..=3 {
        for c in 4..=7usize {
            let depth = c - 1;
            let neck = closed_form_neck(m, depth + 1).unwrap().coeffs;
            let diff: Vec<BigInt> = (0..depth).map(|i| &neck[i] - if i > 0 { neck[i - 1].clone() } else { BigInt::from(0) }).collect();
            assert_eq!(diff, colored_jones::stability::difference_closed_form(m, depth));
        }
    }
}

#[test]
fn neck_increments_are_partial_sums() {
    let depth = 50;
    let s = partial_sums(&euler_product(depth)).padded_coeffs(depth);
    for m in 1..=3 {
        let hi = closed_form_neck(m, depth).unwrap().coeffs;
        let lo = closed_form_neck(m - 1, depth).unwrap().coeffs;
        let d: Vec<BigInt> = hi.iter().zip(&lo).map(|(a, b)| a - b).collect();
        assert_eq!(d, s);
    }
}

#[test]
fn second_order_table_rows() {
    let fig8: Vec<ColoredSeries> = (7..=9).map(fig8_colored).collect();
    let got = t2_observed([&fig8[0], &fig8[1], &fig8[2]], 5).unwrap();
    assert_eq!(got, big(&[0, 4, -1, -3, 1]));

    let trefoil = PretzelSpec::new(1, 1, 1).unwrap();
    let rows: Vec<ColoredSeries> = (7..=9).map(|c| computed(&trefoil, c)).collect();
    let got = t2_observed([&rows[0], &rows[1], &rows[2]], 5).unwrap();
    assert_eq!(got, big(&t2_predicted(TwistClass::of_spec(&trefoil))));

    let too_deep = t2_observed([&rows[0], &rows[1], &rows[2]], 7);
    assert!(too_deep.is_err());
}

#[test]
fn closed_form_sequences_are_labelled() {
    let h: StableSequence = closed_form_head(3);
    assert_eq!(h.order, 0);
    assert_eq!(closed_form_neck(2, 3).unwrap().order, 1);
}
