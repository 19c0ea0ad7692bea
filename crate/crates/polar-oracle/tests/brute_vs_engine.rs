//! Agreement between the transition-table fold and the density engine.
//!
//! The two computations share nothing but the bit-pattern convention, so
//! agreement across channel families, depths, and patterns checks both
//! implementations at once.

use polar_bsc::{closed_form_k3, closed_form_k4};
use polar_ce::{polarize, BitPattern, EngineConfig};
use polar_density::{AbsDDensity, ChannelSpec, DEFAULT_MERGE_TOL};
use polar_oracle::brute_force_z;

const AGREEMENT_TOL: f64 = 1e-9;

fn gen4() -> ChannelSpec {
    ChannelSpec::General {
        rows: vec![vec![0.4, 0.3, 0.2, 0.1], vec![0.1, 0.2, 0.3, 0.4]],
        perm: vec![3, 2, 1, 0],
    }
}

fn engine_z(spec: &ChannelSpec, pattern: &BitPattern) -> f64 {
    let density = AbsDDensity::<f64>::from_spec(spec, DEFAULT_MERGE_TOL).unwrap();
    polarize(&density, pattern, &EngineConfig::default()).unwrap()
}

#[test]
fn brute_force_matches_the_engine_on_every_shallow_bit_channel() {
    let mut channels = vec![gen4()];
    for p in [0.05, 0.1, 0.2, 0.3] {
        channels.push(ChannelSpec::Bsc { p });
    }
    for eps in [0.1, 0.5] {
        channels.push(ChannelSpec::Bec { eps });
    }
    let mut worst = 0.0f64;
    for spec in &channels {
        for level in 1..=3 {
            for index in 1..=(1u64 << level) {
                let pattern = BitPattern::from_index(level, index).unwrap();
                let brute = brute_force_z::<f64>(spec, &pattern).unwrap();
                let engine = engine_z(spec, &pattern);
                let diff = (brute - engine).abs();
                worst = worst.max(diff);
                assert!(
                    diff <= AGREEMENT_TOL,
                    "{} pattern {pattern}: brute {brute} vs engine {engine}",
                    spec.describe()
                );
            }
        }
    }
    println!("worst |brute - engine| over all depth-<=3 bit-channels: {worst:.3e}");
}

#[test]
fn brute_force_matches_the_closed_forms_at_depth_three_and_four() {
    for p in [0.1, 0.3] {
        let spec = ChannelSpec::Bsc { p };
        for index in 1..=8 {
            let pattern = BitPattern::from_index(3, index as u64).unwrap();
            let brute = brute_force_z::<f64>(&spec, &pattern).unwrap();
            let closed = closed_form_k3(index, p);
            assert!(
                (brute - closed).abs() <= AGREEMENT_TOL,
                "k3 index {index} at p = {p}: {brute} vs {closed}"
            );
        }
        for index in 1..=16 {
            let pattern = BitPattern::from_index(4, index as u64).unwrap();
            let brute = brute_force_z::<f64>(&spec, &pattern).unwrap();
            let closed = closed_form_k4(index, p);
            assert!(
                (brute - closed).abs() <= AGREEMENT_TOL,
                "k4 index {index} at p = {p}: {brute} vs {closed}"
            );
        }
    }
}

#[test]
fn bit_channel_six_is_the_one_zero_one_pattern() {
    // Index 6 at depth 3 must fold as variable, check, variable: the digits
    // of 5, most significant first. All three computations agree on it.
    let pattern = BitPattern::from_index(3, 6).unwrap();
    assert_eq!(format!("{pattern}"), "101");
    let spec = ChannelSpec::Bsc { p: 0.1 };
    let brute = brute_force_z::<f64>(&spec, &pattern).unwrap();
    assert!((brute - closed_form_k3(6, 0.1)).abs() <= 1e-10);
    assert!((brute - engine_z(&spec, &pattern)).abs() <= 1e-10);
}

#[test]
fn erasure_bit_channels_follow_the_scalar_recursion() {
    // For erasure channels the whole fold lives on one scalar: a check step
    // maps eps to 2 eps - eps^2, a variable step to eps^2, and Z equals eps.
    for eps in [0.1, 0.5] {
        for level in 1..=3u32 {
            for index in 1..=(1u64 << level) {
                let pattern = BitPattern::from_index(level, index).unwrap();
                let mut folded = eps;
                for step in pattern.steps() {
                    folded = match step.bit() {
                        0 => 2.0 * folded - folded * folded,
                        _ => folded * folded,
                    };
                }
                let brute = brute_force_z::<f64>(&ChannelSpec::Bec { eps }, &pattern).unwrap();
                assert!(
                    (brute - folded).abs() <= 1e-12,
                    "eps = {eps}, pattern {pattern}: {brute} vs {folded}"
                );
            }
        }
    }
}
