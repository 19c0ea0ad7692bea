//! Bhattacharyya evaluation by peeling closed-form layers off a step pattern.
//!
//! Two structural facts let large parts of a bit-channel pattern over a BSC be
//! evaluated without evolving any density:
//!
//! * A leading check (minus) step maps a BSC to another BSC: crossover `p`
//!   becomes `2 p p̄`. Leading check steps therefore only reparameterize the
//!   problem, `Z(check : rest at p) = Z(rest at 2 p p̄)`.
//! * A trailing variable (plus) step squares the Bhattacharyya parameter of
//!   whatever channel it acts on, `Z(rest : var) = Z(rest)^2`.
//!
//! [`recursive_bhatt`] strips leading check bits into the parameter map and
//! trailing variable bits into squarings. What remains (a pattern starting with
//! a variable step and ending with a check step, or nothing at all) goes to a
//! caller-supplied base evaluator; a fully stripped pattern bottoms out at the
//! raw channel, `Z = 2 sqrt(p p̄)`. The two strip passes commute: the parameter
//! map only touches `p` while the squarings only touch the returned value, and
//! the tests compare both orders.
//!
//! Only the check step preserves the BSC family; a variable step does not, so
//! no analogous parameter map exists for prefixes starting with a variable bit.
//!
//! # Example
//!
//! ```
//! use polar_bsc::recursive_bhatt_ce;
//! use polar_ce::{BitPattern, EngineConfig};
//!
//! // check, check, var, var at p = 0.1: two parameter maps, one empty base,
//! // two squarings: (2 sqrt(p'' (1 - p'')))^4 = (1 - M(8))^2.
//! let pattern = BitPattern::from_bit_string("0011").unwrap();
//! let z = recursive_bhatt_ce(&pattern, 0.1, &EngineConfig::default()).unwrap();
//! assert!((z - (1.0 - 0.8_f64.powi(8)).powi(2)).abs() < 1e-14);
//! ```

use polar_ce::{polarize, BitPattern, EngineConfig, Step};
use polar_density::AbsDDensity;

use crate::error::Result;

/// Bhattacharyya parameter of the bit channel `pattern` over a BSC with
/// crossover probability `p`, peeling closed-form layers before delegating.
///
/// Leading check steps are folded into the crossover parameter (`p <- 2 p p̄`
/// each), trailing variable steps into squarings of the result. The remaining
/// base pattern is passed, with the mapped crossover probability, to `base`;
/// when stripping consumes the whole pattern the result is the raw-channel value
/// `2 sqrt(p p̄)` and `base` is never called.
///
/// # Errors
///
/// Whatever `base` returns, converted into [`crate::BscError::Engine`].
///
/// # Panics
///
/// If `p` is not strictly inside `(0, 1/2)`.
pub fn recursive_bhatt<F>(pattern: &BitPattern, p: f64, base: F) -> Result<f64>
where
    F: FnOnce(&BitPattern, f64) -> polar_ce::Result<f64>,
{
    assert!(p > 0.0 && p < 0.5, "crossover probability must lie strictly inside (0, 1/2), got {p}");
    let steps = pattern.steps();
    let lead = steps.iter().take_while(|s| **s == Step::Check).count();
    let trail = steps[lead..].iter().rev().take_while(|s| **s == Step::Var).count();

    let mut mapped = p;
    for _ in 0..lead {
        mapped = 2.0 * mapped * (1.0 - mapped);
    }

    let middle = &steps[lead..steps.len() - trail];
    let mut z = if middle.is_empty() {
        2.0 * (mapped * (1.0 - mapped)).sqrt()
    } else {
        base(&BitPattern::from_steps(middle.to_vec())?, mapped)?
    };
    for _ in 0..trail {
        z = z * z;
    }
    Ok(z)
}

/// [`recursive_bhatt`] with the evolution engine as the base evaluator: the base
/// pattern is run through `polarize` on a fresh BSC density at the mapped
/// crossover probability.
///
/// # Errors
///
/// Engine errors (budget, configuration) from the delegated evaluation.
///
/// # Panics
///
/// If `p` is not strictly inside `(0, 1/2)`.
pub fn recursive_bhatt_ce(pattern: &BitPattern, p: f64, cfg: &EngineConfig) -> Result<f64> {
    recursive_bhatt(pattern, p, |middle, mapped| {
        let d = AbsDDensity::<f64>::bsc(mapped)?;
        polarize(&d, middle, cfg)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::BscError;
    use polar_ce::CeError;

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    fn pat(s: &str) -> BitPattern {
        BitPattern::from_bit_string(s).unwrap()
    }

    #[test]
    fn single_steps_match_the_known_bsc_values() {
        // One check step: p' = 0.18, Z = 2 sqrt(0.18 * 0.82).
        let z_check = recursive_bhatt_ce(&pat("0"), 0.1, &cfg()).unwrap();
        assert!((z_check - 0.7683749084919419).abs() < 1e-15);
        // One variable step: (2 sqrt(0.09))^2 = 0.36.
        let z_var = recursive_bhatt_ce(&pat("1"), 0.1, &cfg()).unwrap();
        assert!((z_var - 0.36).abs() < 1e-15);
    }

    #[test]
    fn all_check_patterns_collapse_to_the_gap_power() {
        for p in [0.1, 0.3] {
            for m in 1..=5u32 {
                let pattern = BitPattern::from_steps(vec![Step::Check; m as usize]).unwrap();
                let z = recursive_bhatt_ce(&pattern, p, &cfg()).unwrap();
                let gap = 1.0 - 2.0 * p;
                let expect = (1.0 - gap.powi(1 << (m + 1))).sqrt();
                assert!((z - expect).abs() < 1e-13, "m = {m}, p = {p}");
            }
        }
    }

    #[test]
    fn all_variable_patterns_collapse_to_powers_of_four_c() {
        for p in [0.1, 0.3] {
            for m in 1..=5u32 {
                let pattern = BitPattern::from_steps(vec![Step::Var; m as usize]).unwrap();
                let z = recursive_bhatt_ce(&pattern, p, &cfg()).unwrap();
                let expect = (4.0 * p * (1.0 - p)).powi(1 << (m - 1));
                assert!((z - expect).abs() < 1e-13, "m = {m}, p = {p}");
            }
        }
    }

    #[test]
    fn base_evaluator_sees_the_mapped_parameter_and_inner_pattern() {
        let z = recursive_bhatt(&pat("0110"), 0.1, |middle, mapped| {
            assert_eq!(middle.steps(), pat("110").steps());
            assert!((mapped - 0.18).abs() < 1e-15);
            Ok(0.25)
        })
        .unwrap();
        assert_eq!(z, 0.25);
    }

    #[test]
    fn fully_stripped_patterns_never_call_the_evaluator() {
        let z = recursive_bhatt(&pat("0011"), 0.1, |_, _| {
            panic!("evaluator must not run for a fully stripped pattern")
        })
        .unwrap();
        // p maps 0.1 -> 0.18 -> 0.2952; then two squarings of 2 sqrt(p p̄).
        let p2 = 0.2952_f64;
        let expect = (2.0 * (p2 * (1.0 - p2)).sqrt()).powi(4);
        assert!((z - expect).abs() < 1e-14);
        // Equals the closed form (1 - M(8))^2 at the original p.
        assert!((z - (1.0 - 0.8_f64.powi(8)).powi(2)).abs() < 1e-14);
    }

    #[test]
    fn strip_order_is_immaterial() {
        // Suffix-first variant: count squarings, evaluate the prefix-stripped
        // remainder, then square. Must agree bit for bit with the public
        // prefix-first implementation.
        fn suffix_first(pattern: &BitPattern, p: f64, cfg: &EngineConfig) -> f64 {
            let steps = pattern.steps();
            let trail = steps.iter().rev().take_while(|s| **s == Step::Var).count();
            let kept = &steps[..steps.len() - trail];
            let lead = kept.iter().take_while(|s| **s == Step::Check).count();
            let mut mapped = p;
            for _ in 0..lead {
                mapped = 2.0 * mapped * (1.0 - mapped);
            }
            let middle = &kept[lead..];
            let mut z = if middle.is_empty() {
                2.0 * (mapped * (1.0 - mapped)).sqrt()
            } else {
                let d = AbsDDensity::<f64>::bsc(mapped).unwrap();
                polarize(&d, &BitPattern::from_steps(middle.to_vec()).unwrap(), cfg).unwrap()
            };
            for _ in 0..trail {
                z = z * z;
            }
            z
        }

        for level in 1..=4u32 {
            for index in 1..=(1u64 << level) {
                let pattern = BitPattern::from_index(level, index).unwrap();
                let ours = recursive_bhatt_ce(&pattern, 0.1, &cfg()).unwrap();
                let alt = suffix_first(&pattern, 0.1, &cfg());
                assert_eq!(ours, alt, "level {level}, index {index}");
            }
        }
    }

    #[test]
    fn evaluator_errors_propagate() {
        let err = recursive_bhatt(&pat("0110"), 0.1, |_, _| {
            Err(CeError::InvalidConfig { reason: "sentinel".into() })
        })
        .unwrap_err();
        assert_eq!(err, BscError::Engine(CeError::InvalidConfig { reason: "sentinel".into() }));
    }

    #[test]
    #[should_panic(expected = "strictly inside")]
    fn rejects_degenerate_crossover() {
        let _ = recursive_bhatt_ce(&pat("01"), 0.5, &cfg());
    }
}
