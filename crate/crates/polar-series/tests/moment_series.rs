//! The moment series against frozen references and its Monte-Carlo confirmation.
//!
//! The base state here is the two-atom check-domain density of a half-block size
//! Q = 2 construction at p = 0.1 (the exact reference values for its evolution were
//! computed independently in exact arithmetic):
//!
//! ```text
//! atoms: (0.2952 at 0.975609756097561), (0.6562 at 0.9996952148735142)
//! mass at z = 0: 0.0486,   mass at z = 1: 0
//! exact B: L = 1 -> 0.1296, L = 2 -> 0.22214793530259166, L = 4 -> 0.3621504350730323
//! ```

use polar_ce::CheckState;
use polar_density::Atom;
use polar_series::{ba_series, mc_product_estimate, MomentProvider};

fn q2_base() -> CheckState<f64> {
    CheckState::from_parts(
        0.0486,
        0.0,
        vec![
            Atom::new(0.975609756097561, 0.2952),
            Atom::new(0.9996952148735142, 0.6562),
        ],
    )
}

const EXACT: [(u64, f64); 3] = [
    (1, 0.1296),
    (2, 0.22214793530259166),
    (4, 0.3621504350730323),
];

#[test]
fn truncated_values_match_the_frozen_references() {
    // Frozen (value, truncation_bound) pairs at K = 300 from an independent
    // implementation of the same series.
    let provider = MomentProvider::from_check_state(&q2_base()).unwrap();
    let frozen = [
        (1u64, 0.13855794563523005, 0.030501351514698842),
        (2, 0.22597219783374523, 0.028572924022838737),
        (4, 0.36298142581015347, 0.025074131109663285),
    ];
    for (pow, value, bound) in frozen {
        let out = ba_series(&provider, pow, 300);
        assert!(
            (out.value - value).abs() < 1e-12,
            "L = {pow}: {} vs {value}",
            out.value
        );
        assert!(
            (out.truncation_bound - bound).abs() < 1e-12,
            "L = {pow}: {} vs {bound}",
            out.truncation_bound
        );
    }
}

#[test]
fn values_bound_the_exact_parameter_from_above() {
    let provider = MomentProvider::from_check_state(&q2_base()).unwrap();
    for (pow, exact) in EXACT {
        for terms in [50u64, 300, 1000] {
            let out = ba_series(&provider, pow, terms);
            assert!(out.value >= exact - 1e-12, "L = {pow}, K = {terms}");
            assert!(
                out.value - exact <= out.truncation_bound + 1e-9,
                "L = {pow}, K = {terms}: excess {} vs bound {}",
                out.value - exact,
                out.truncation_bound
            );
        }
    }
}

#[test]
fn values_are_monotone_nonincreasing_in_the_term_count() {
    let provider = MomentProvider::from_check_state(&q2_base()).unwrap();
    for pow in [1u64, 2, 4] {
        let mut previous = f64::INFINITY;
        for terms in [1u64, 5, 20, 100, 300, 1000, 3000] {
            let out = ba_series(&provider, pow, terms);
            assert!(
                out.value <= previous + 1e-15,
                "L = {pow}, K = {terms}: {} after {previous}",
                out.value
            );
            previous = out.value;
        }
    }
}

#[test]
fn six_thousand_terms_reach_the_exact_value() {
    // The slow sqrt(K) tail of the coefficient sum means K = 300 still sits a few
    // 1e-3 above the truth, but K = 6000 lands within 1e-8 for L = 4 (the frozen
    // independent run gives 0.36215043509160694, error 1.9e-11).
    let provider = MomentProvider::from_check_state(&q2_base()).unwrap();
    let out = ba_series(&provider, 4, 6000);
    assert!(
        (out.value - 0.3621504350730323).abs() < 1e-8,
        "value = {}",
        out.value
    );
}

#[test]
fn monte_carlo_confirms_the_product_form() {
    // Q = 2 blocks at p = 0.1: single block and a product of four.
    for (pow, exact) in [(1u64, 0.1296), (4, 0.3621504350730323)] {
        let (mean, stderr) = mc_product_estimate(2, pow, 0.1, 400_000, 20_260_819);
        assert!(stderr < 2e-3, "stderr = {stderr}");
        assert!(
            (mean - exact).abs() < 4.0 * stderr,
            "L = {pow}: mean = {mean}, exact = {exact}, stderr = {stderr}"
        );
    }
}
