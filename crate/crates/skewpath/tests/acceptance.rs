//! Acceptance suite: every release-gating property, one test per
//! criterion, each printing a PASS line with the verified bound.
//!
//! Tolerances and seeds are pinned here and nowhere else. The sampler
//! criteria use committed seeds; see the RNG note in `skewpath::sampler`.

use num_bigint::BigInt;

use skewpath::closed_form::{coefficient_asymptotic_ratio, s_coefficient, s_series};
use skewpath::height::{
    average_height_exact, average_height_ratio, height_distribution, ph_qh_closed_check,
    tail_formula_check,
};
use skewpath::level::{
    dk_closed_check, level_closed, level_dp, s_of_zsq_identity_check, three_term_check,
    truncation_consistency_check,
};
use skewpath::path::Enumerator;
use skewpath::sampler::{
    chi_square_statistic, empirical_height_histogram, empirical_height_stats, CountTable,
};

/// Committed seed for the mean-height statistical criterion.
const MEAN_SEED: u64 = 10_690;
/// Committed seed for the chi-square criterion.
const CHI_SEED: u64 = 42_424;
/// Upper 0.001 tail of chi-square with 3 degrees of freedom.
const CHI_CRIT_DF3_P999: f64 = 16.266;

fn pass(criterion: usize, what: &str) {
    println!("[acceptance] criterion {criterion:2} PASS - {what}");
}

#[test]
fn criterion_01_three_way_count_equality() {
    let series = s_series(9).unwrap();
    let enumerator = Enumerator::new();
    for n in 0..=8usize {
        let brute = BigInt::from(enumerator.count_closed(n).unwrap());
        let formula = s_coefficient(n);
        let coeff = series.coeff(n).to_integer();
        assert_eq!(brute, formula, "brute force vs formula at n={n}");
        assert_eq!(formula, coeff, "formula vs series at n={n}");
    }
    pass(1, "count_paths = trinomial formula = [z^n]S for n = 0..8");
}

#[test]
fn criterion_02_height_oracle() {
    let enumerator = Enumerator::new();
    for n in 0..=8usize {
        assert_eq!(
            enumerator.count_by_height(n).unwrap(),
            height_distribution(n),
            "distributions at n={n}"
        );
    }
    pass(2, "brute-force height counts = S_h differencing for n = 0..8");
}

#[test]
fn criterion_03_substitution_identity() {
    let report = skewpath::closed_form::substitution_identity_check(30);
    assert!(report.passed, "{}", report.detail);
    pass(3, "S(z(u)) = 1 + 2u exactly to u-order 30");
}

#[test]
fn criterion_04_level_closed_forms() {
    let order = 24;
    let table = level_dp(order, None);
    for i in 0..=8usize {
        let closed = level_closed(i, order).unwrap();
        let dp = table.row(i);
        assert_eq!(closed.f.first_difference(&dp.f, order), None, "f at level {i}");
        assert_eq!(closed.g.first_difference(&dp.g, order), None, "g at level {i}");
        assert_eq!(closed.h.first_difference(&dp.h, order), None, "h at level {i}");
    }
    let report = s_of_zsq_identity_check(40);
    assert!(report.passed, "{}", report.detail);
    pass(4, "level DP = closed forms (i <= 8, order 24); f0+g0+h0 = S(z^2) to order 40");
}

#[test]
fn criterion_05_kernel_recurrences_and_boundaries() {
    let report = three_term_check(6, 24);
    assert!(report.passed, "{}", report.detail);
    let kernel = skewpath::level::kernel_identity_check(24);
    assert!(kernel.passed, "{}", kernel.detail);
    pass(5, "three-term recurrences (i <= 6, order 24) and boundary rows (order 24 > 12)");
}

#[test]
fn criterion_06_determinants() {
    let report = dk_closed_check(12, 30);
    assert!(report.passed, "{}", report.detail);
    pass(6, "D_K recurrence = mu-closed form (K <= 12, order 30) incl. ratio recursion");
}

#[test]
fn criterion_07_truncated_systems() {
    let report = truncation_consistency_check(8, 24);
    assert!(report.passed, "{}", report.detail);
    pass(7, "Cramer = capped DP = continued fraction for K <= 8, order 24");
}

#[test]
fn criterion_08_coefficient_asymptotics() {
    let at_100 = (coefficient_asymptotic_ratio(100) - 1.0).abs();
    let at_1000 = (coefficient_asymptotic_ratio(1000) - 1.0).abs();
    assert!(at_100 <= 0.05, "|ratio-1| = {at_100} at n=100");
    assert!(at_1000 <= 0.01, "|ratio-1| = {at_1000} at n=1000");
    assert!(at_1000 < at_100, "deviation must shrink: {at_1000} vs {at_100}");
    pass(8, "exact/asymptotic coefficient ratio within 5% at n=100, 1% at n=1000, shrinking");
}

#[test]
fn criterion_09_average_height() {
    let ratio_400 = average_height_ratio(400);
    let at_100 = (average_height_ratio(100) - 1.0).abs();
    let at_400 = (ratio_400 - 1.0).abs();
    assert!(
        (0.85..=1.15).contains(&ratio_400),
        "ratio at n=400 out of [0.85, 1.15]: {ratio_400}"
    );
    assert!(at_400 < at_100, "deviation must shrink: {at_400} vs {at_100}");
    pass(9, "average height within 15% of (2*sqrt(2)/3)sqrt(pi n) at n=400, closer than at n=100");
}

#[test]
fn criterion_10_tail_and_ph_qh_closed_forms() {
    for h in [0usize, 2, 5] {
        let report = tail_formula_check(h, 20);
        assert!(report.passed, "tail h={h}: {}", report.detail);
    }
    for h in [0usize, 1, 3] {
        let report = ph_qh_closed_check(h, 20);
        assert!(report.passed, "ph-qh h={h}: {}", report.detail);
    }
    pass(10, "tail formula (h in {0,2,5}) and p_h/q_h closed forms (h in {0,1,3}) to u-order 20");
}

#[test]
fn criterion_11_sampler_statistics() {
    // mean height at n=6 over 50000 samples vs the exact average
    let table = CountTable::build(6);
    let stats = empirical_height_stats(&table, 50_000, MEAN_SEED);
    let exact = skewpath::closed_form::rational_to_f64(&average_height_exact(6));
    let deviation = (stats.mean - exact).abs();
    assert!(
        deviation <= 3.0 * stats.stderr,
        "mean {} vs exact {exact}, stderr {}",
        stats.mean,
        stats.stderr
    );

    // chi-square of the n=4 histogram against the exact distribution
    let table4 = CountTable::build(4);
    let hist = empirical_height_histogram(&table4, 20_000, CHI_SEED);
    let exact4 = height_distribution(4);
    let (stat, dof) = chi_square_statistic(&hist, &exact4, 20_000);
    assert_eq!(dof, 3);
    assert!(
        stat < CHI_CRIT_DF3_P999,
        "chi-square {stat} exceeds the 0.001 critical value"
    );
    pass(11, "sampled mean within 3 sigma at n=6; chi-square at n=4 below the 0.001 cut");
}

#[test]
fn criterion_12_figure_path_regression() {
    let p = skewpath::parse_path("UUgbUUUUUUbrrgUUUUUggUbbgggr").unwrap();
    assert_eq!(p.len(), 28);
    assert_eq!(p.semilength(), 14);
    assert_eq!(p.height(), 7);
    assert_eq!(p.end_level(), 0);
    pass(12, "the 28-step reference path: length 28, semilength 14, height 7");
}
