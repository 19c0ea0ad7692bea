//! Exact closed forms for every level-3 and level-4 bit channel of a BSC.
//!
//! A bit channel at level `k` is named by an index `1..=2^k`: write `index - 1`
//! in binary over `k` bits, most significant bit first; a `0` bit applies a check
//! (minus) step, a `1` bit a variable (plus) step, in reading order. Index 1 is
//! the all-check channel, index `2^k` the all-variable one.
//!
//! Each evaluator returns the Bhattacharyya parameter of its bit channel as a
//! closed-form expression in the symbol families of [`BscConstants`]: `C = p p̄`,
//! `M(i) = (1 - 2p)^i`, `S(i) = p̄^i + p^i`, `D(i) = p̄^i - p^i`. The formulas are
//! transcribed symbol for symbol rather than expanded into polynomials, so a
//! transcription slip shows up as a cross-check failure against the evolution
//! engine instead of silent drift. The two extremes have compact forms:
//!
//! ```text
//! index 1   (all check):     sqrt(1 - M(2^(k+1)))
//! index 2^k (all variable):  (4C)^(2^(k-1))            e.g. 256 C^4 at k = 3
//! ```
//!
//! Every form here agrees with the evolution engine to the last few ulps; the
//! integration tests pin all 24 values against independently frozen references
//! on a grid of crossover probabilities.
//!
//! # Example
//!
//! ```
//! use polar_bsc::{closed_form_k3, closed_form_k4};
//!
//! // All-variable towers at p = 0.1: (4 * 0.09)^4 and (4 * 0.09)^8.
//! assert!((closed_form_k3(8, 0.1) - 0.01679616).abs() < 1e-12);
//! assert!((closed_form_k4(16, 0.1) - 2.82110990745e-4).abs() < 1e-12);
//! ```

use std::f64::consts::SQRT_2;

use crate::constants::BscConstants;

/// Checks the common preconditions of the closed-form evaluators.
fn guard(index: usize, max: usize, p: f64) {
    assert!(index >= 1 && index <= max, "channel index {index} out of range 1..={max}");
    assert!(p > 0.0 && p < 0.5, "crossover probability must lie strictly inside (0, 1/2), got {p}");
}

/// Bhattacharyya parameter of level-3 bit channel `index` (1..=8) of a BSC.
///
/// # Panics
///
/// If `index` is outside `1..=8` or `p` outside `(0, 1/2)`.
pub fn closed_form_k3(index: usize, p: f64) -> f64 {
    guard(index, 8, p);
    let k = BscConstants::new(p);
    let c = k.c();
    let cb = k.cbar();
    let m = |i: usize| k.m(i);
    let s = |i: usize| k.s(i);

    match index {
        // check, check, check
        1 => (1.0 - m(16)).sqrt(),
        // check, check, var
        2 => 1.0 - m(8),
        // check, var, check
        3 => 0.25 * (1.0 - m(4)) * ((m(8) + 6.0 * m(4) + 1.0).sqrt() + m(4) + 3.0),
        // check, var, var
        4 => (1.0 - m(4)).powi(2),
        // var, check, check
        5 => (s(2).powi(8) - m(8)).sqrt() + 1.0 - s(2).powi(4),
        // var, check, var
        6 => ((s(2).powi(4) - m(4)).sqrt() + 4.0 * c * cb).powi(2),
        // var, var, check
        7 => {
            32.0 * SQRT_2 * c.powi(3) * s(4).sqrt()
                + 16.0 * c.powi(2) * s(2).sqrt() * s(6).sqrt()
                + 2.0 * SQRT_2 * c.powi(2) * s(8).sqrt()
                + 12.0 * c.powi(2)
                - 36.0 * c.powi(4)
        }
        // var, var, var
        8 => 256.0 * c.powi(4),
        _ => unreachable!(),
    }
}

/// Bhattacharyya parameter of level-4 bit channel `index` (1..=16) of a BSC.
///
/// # Panics
///
/// If `index` is outside `1..=16` or `p` outside `(0, 1/2)`.
pub fn closed_form_k4(index: usize, p: f64) -> f64 {
    guard(index, 16, p);
    let k = BscConstants::new(p);
    let c = k.c();
    let cb = k.cbar();
    let m = |i: usize| k.m(i);
    let s = |i: usize| k.s(i);
    let d = |i: usize| k.d(i);

    match index {
        // check x4
        1 => (1.0 - m(32)).sqrt(),
        // check, check, check, var
        2 => 1.0 - m(16),
        // check, check, var, check
        3 => 0.25 * (1.0 - m(8)) * ((m(16) + 6.0 * m(8) + 1.0).sqrt() + m(8) + 3.0),
        // check, check, var, var
        4 => (1.0 - m(8)).powi(2),
        // check, var, check, check
        5 => 1.0 - (1.0 + m(4)).powi(4) / 16.0 + ((1.0 + m(4)).powi(8) - 256.0 * m(16)).sqrt() / 16.0,
        // check, var, check, var
        6 => {
            (1.0 - m(4)).powi(2) / 16.0
                * ((m(8) + 6.0 * m(4) + 1.0).sqrt() + m(4) + 3.0).powi(2)
        }
        // check, var, var, check
        7 => {
            (1.0 - m(4)).powi(2) / 64.0
                * (16.0 * (1.0 - m(4)) * (1.0 + 6.0 * m(4) + m(4).powi(2)).sqrt()
                    + (1.0 + 28.0 * m(4) + 70.0 * m(4).powi(2) + 28.0 * m(4).powi(3)
                        + m(4).powi(4))
                    .sqrt()
                    + 8.0 * (1.0 + m(4)) * (1.0 + 14.0 * m(4) + m(4).powi(2)).sqrt()
                    + 39.0
                    + 18.0 * m(4)
                    - 9.0 * m(4).powi(2))
        }
        // check, var, var, var
        8 => (1.0 - m(4)).powi(4),
        // var, check, check, check
        9 => (s(2).powi(16) - m(16)).sqrt() + 1.0 - s(2).powi(8),
        // var, check, check, var
        10 => ((s(2).powi(8) - m(8)).sqrt() + 1.0 - s(2).powi(4)).powi(2),
        // var, check, var, check
        11 => {
            let corner = 32.0 * c.powi(2) * cb.powi(2) - m(4) + s(2).powi(4);
            64.0 * c.powi(2) * cb.powi(2) * (s(2).powi(8) - m(8)).sqrt()
                + 8.0 * c * cb * s(2).powi(2) * (s(2).powi(4) - m(4)).sqrt()
                    * (s(2).powi(4) + 3.0 * m(4)).sqrt()
                + 0.25 * (s(2).powi(4) - m(4))
                    * (s(2).powi(8) + 6.0 * s(2).powi(4) * m(4) + m(8)).sqrt()
                + corner
                - 0.25 * corner.powi(2)
        }
        // var, check, var, var
        12 => ((s(2).powi(4) - m(4)).sqrt() + 4.0 * c * cb).powi(4),
        // var, var, check, check
        13 => {
            256.0 * c.powi(4) * (s(2).powi(8) - d(2).powi(8)).sqrt()
                + 256.0 * c.powi(3) * (s(2).powi(6) * s(4).powi(2) - d(2).powi(6) * d(4).powi(2)).sqrt()
                + 96.0 * c.powi(2) * (s(2).powi(4) * s(4).powi(4) - d(2).powi(4) * d(4).powi(4)).sqrt()
                + 16.0 * c * (s(2).powi(2) * s(4).powi(6) - d(2).powi(2) * d(4).powi(6)).sqrt()
                + (s(4).powi(8) - d(4).powi(8)).sqrt()
                + 24.0 * c.powi(2)
                    * (1.0 - 9.0 * c.powi(2) + 36.0 * c.powi(4) - 54.0 * c.powi(6))
        }
        // var, var, check, var: a variable step squares the var-var-check value.
        14 => closed_form_k3(7, p).powi(2),
        // var, var, var, check
        15 => {
            6272.0 * SQRT_2 * c.powi(7) * s(4).sqrt()
                + c.powi(6) * (1568.0 * SQRT_2 * s(8).sqrt() + 6272.0 * s(2).sqrt() * s(6).sqrt())
                + c.powi(5)
                    * (128.0 * SQRT_2 * s(12).sqrt()
                        + 1792.0 * s(4).sqrt() * s(8).sqrt()
                        + 896.0 * s(2).sqrt() * s(10).sqrt())
                + c.powi(4)
                    * (2.0 * SQRT_2 * s(16).sqrt()
                        + 224.0 * s(6).sqrt() * s(10).sqrt()
                        + 112.0 * s(4).sqrt() * s(12).sqrt()
                        + 32.0 * s(2).sqrt() * s(14).sqrt())
                + 140.0 * c.powi(4)
                - 4900.0 * c.powi(8)
        }
        // var x4
        16 => 65536.0 * c.powi(8),
        _ => unreachable!(),
    }
}
