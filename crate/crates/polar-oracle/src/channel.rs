//! Explicit transition-table channels and the two polar combining steps.
//!
//! Where the evolution engine tracks a channel only through its reliability
//! density, this module keeps the full conditional distribution: one
//! `(W(y|0), W(y|1))` row per output symbol `y`. That makes the arithmetic
//! completely elementary, so the results serve as an independent check on the
//! density bookkeeping.
//!
//! The two combining steps act on a channel `W` with output alphabet `Y`:
//!
//! * check combining pairs two uses and marginalizes the second input,
//!   `W_check((y1, y2) | u1) = 1/2 * sum_{u2} W(y1 | u1 XOR u2) * W(y2 | u2)`,
//!   giving `|Y|^2` outputs;
//! * variable combining reveals the first input alongside both observations,
//!   `W_var((y1, y2, u1) | u2) = 1/2 * W(y1 | u1 XOR u2) * W(y2 | u2)`,
//!   giving `2 |Y|^2` outputs.
//!
//! Output counts square at every step, so [`lr_merge`] collapses outputs with
//! equal likelihood ratio between steps; the merge changes no decision-relevant
//! quantity and in particular leaves the Bhattacharyya parameter intact.
//!
//! Worked example: the binary symmetric channel with crossover `p = 0.1` has
//! rows `(0.9, 0.1)` and `(0.1, 0.9)` and `Z = 2 sqrt(p (1 - p)) = 0.6`. Check
//! combining yields four outputs with `Z = sqrt(0.5904) ~ 0.76837`, variable
//! combining eight outputs with `Z = 0.6^2 = 0.36`.

use polar_density::{Backend, ChannelSpec, NeumaierSum, Scalar};

use crate::error::{OracleError, Result};

/// Default ceiling on the number of outputs a single transform may produce.
pub const DEFAULT_OUTPUT_CAP: u64 = 10_000_000;

/// Default likelihood-ratio quantization used when merging float outputs.
pub const DEFAULT_LR_TOL: f64 = 1e-12;

/// Row-sum slack accepted by [`ExplicitChannel::new`] on the float backend.
pub const ROW_SUM_TOL: f64 = 1e-12;

/// A binary-input channel given by its full transition table.
///
/// `outputs[y] = (W(y|0), W(y|1))`. Both conditional distributions must sum to
/// one: exactly on the rational backend, within [`ROW_SUM_TOL`] on the float
/// backend. Individual outputs may carry zero probability under either input;
/// an output that is impossible under both inputs is legal and is dropped by
/// [`lr_merge`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitChannel<T: Scalar> {
    outputs: Vec<(T, T)>,
}

impl<T: Scalar> ExplicitChannel<T> {
    /// Builds a channel from its transition rows, validating nonnegativity and
    /// both column sums.
    pub fn new(outputs: Vec<(T, T)>) -> Result<Self> {
        if outputs.is_empty() {
            return Err(OracleError::InvalidChannel {
                reason: "a channel needs at least one output".into(),
            });
        }
        for (y, (q0, q1)) in outputs.iter().enumerate() {
            let finite = q0.to_f64().is_finite() && q1.to_f64().is_finite();
            if !finite || *q0 < T::zero() || *q1 < T::zero() {
                return Err(OracleError::InvalidChannel {
                    reason: format!("output {y} has a negative or non-finite probability"),
                });
            }
        }
        match T::BACKEND {
            Backend::Rational => {
                let mut s0 = T::zero();
                let mut s1 = T::zero();
                for (q0, q1) in &outputs {
                    s0 = s0 + q0.clone();
                    s1 = s1 + q1.clone();
                }
                if s0 != T::one() || s1 != T::one() {
                    return Err(OracleError::InvalidChannel {
                        reason: format!("columns sum to {s0} and {s1}, expected exactly 1"),
                    });
                }
            }
            Backend::Float => {
                let mut s0 = NeumaierSum::new();
                let mut s1 = NeumaierSum::new();
                for (q0, q1) in &outputs {
                    s0.add(q0.to_f64());
                    s1.add(q1.to_f64());
                }
                let (s0, s1) = (s0.value(), s1.value());
                if (s0 - 1.0).abs() > ROW_SUM_TOL || (s1 - 1.0).abs() > ROW_SUM_TOL {
                    return Err(OracleError::InvalidChannel {
                        reason: format!("columns sum to {s0} and {s1}, expected 1"),
                    });
                }
            }
        }
        Ok(ExplicitChannel { outputs })
    }

    /// Builds the transition table described by a [`ChannelSpec`].
    ///
    /// Float parameters convert through [`Scalar::from_f64`], so the rational
    /// backend sees the exact dyadic value of each float. The symmetric channel
    /// with crossover `p` becomes `[(1-p, p), (p, 1-p)]`; the erasure channel
    /// with erasure probability `eps` becomes `[(1-eps, 0), (eps, eps), (0, 1-eps)]`;
    /// a general channel copies its rows column by column. Note the column sums
    /// of a general description are re-checked here against the tighter
    /// [`ROW_SUM_TOL`].
    pub fn from_spec(spec: &ChannelSpec) -> Result<Self> {
        spec.validate()?;
        let rows = match spec {
            ChannelSpec::Bsc { p } => {
                let p = T::from_f64(*p);
                let pbar = T::one() - p.clone();
                vec![(pbar.clone(), p.clone()), (p, pbar)]
            }
            ChannelSpec::Bec { eps } => {
                let eps = T::from_f64(*eps);
                let keep = T::one() - eps.clone();
                vec![
                    (keep.clone(), T::zero()),
                    (eps.clone(), eps),
                    (T::zero(), keep),
                ]
            }
            ChannelSpec::General { rows, .. } => rows[0]
                .iter()
                .zip(&rows[1])
                .map(|(&a, &b)| (T::from_f64(a), T::from_f64(b)))
                .collect(),
        };
        Self::new(rows)
    }

    /// The transition rows, one `(W(y|0), W(y|1))` pair per output.
    pub fn outputs(&self) -> &[(T, T)] {
        &self.outputs
    }

    /// Number of output symbols.
    pub fn output_count(&self) -> usize {
        self.outputs.len()
    }

    /// The Bhattacharyya parameter `Z = sum_y sqrt(W(y|0) W(y|1))`.
    ///
    /// Products form in the backend arithmetic; the square roots and the sum
    /// are compensated floats.
    pub fn z(&self) -> f64 {
        let mut sum = NeumaierSum::new();
        for (q0, q1) in &self.outputs {
            sum.add((q0.clone() * q1.clone()).to_f64().sqrt());
        }
        sum.value()
    }
}

/// Applies check combining: `W_check((y1, y2) | u1) = 1/2 sum_{u2} W(y1 | u1 XOR u2) W(y2 | u2)`.
///
/// The result has `|Y|^2` outputs; the call fails with
/// [`OracleError::OutputBudget`] when that exceeds `cap`.
pub fn minus_transform<T: Scalar>(w: &ExplicitChannel<T>, cap: u64) -> Result<ExplicitChannel<T>> {
    let n = w.output_count() as u128;
    let required = n * n;
    if required > u128::from(cap) {
        return Err(OracleError::OutputBudget { required, cap });
    }
    let half = T::from_ratio(1, 2);
    let mut rows = Vec::with_capacity(required as usize);
    for (a0, a1) in w.outputs() {
        for (b0, b1) in w.outputs() {
            // u1 = 0 pairs (u2, y1-input) as (0,0) and (1,1); u1 = 1 flips y1.
            let q0 = half.clone() * (a0.clone() * b0.clone() + a1.clone() * b1.clone());
            let q1 = half.clone() * (a1.clone() * b0.clone() + a0.clone() * b1.clone());
            rows.push((q0, q1));
        }
    }
    ExplicitChannel::new(rows)
}

/// Applies variable combining: `W_var((y1, y2, u1) | u2) = 1/2 W(y1 | u1 XOR u2) W(y2 | u2)`.
///
/// The result has `2 |Y|^2` outputs; the call fails with
/// [`OracleError::OutputBudget`] when that exceeds `cap`.
pub fn plus_transform<T: Scalar>(w: &ExplicitChannel<T>, cap: u64) -> Result<ExplicitChannel<T>> {
    let n = w.output_count() as u128;
    let required = 2 * n * n;
    if required > u128::from(cap) {
        return Err(OracleError::OutputBudget { required, cap });
    }
    let half = T::from_ratio(1, 2);
    let mut rows = Vec::with_capacity(required as usize);
    for u1 in 0..2u8 {
        for (a0, a1) in w.outputs() {
            // W(y1 | u1 XOR u2): u2 = 0 reads entry u1, u2 = 1 the other one.
            let (first, second) = if u1 == 0 { (a0, a1) } else { (a1, a0) };
            for (b0, b1) in w.outputs() {
                let q0 = half.clone() * first.clone() * b0.clone();
                let q1 = half.clone() * second.clone() * b1.clone();
                rows.push((q0, q1));
            }
        }
    }
    ExplicitChannel::new(rows)
}

/// Merges outputs that carry the same likelihood ratio `W(y|1) : W(y|0)`.
///
/// Outputs impossible under both inputs are dropped; the rest are sorted by
/// likelihood ratio (ratio-`0` outputs first, ratio-`infinity` outputs last)
/// and consecutive outputs in the same ratio class are combined by summing
/// both probabilities. On the rational backend classes are exact; on the float
/// backend two outputs share a class when their cross products agree to
/// relative `tolerance`, `|W(a|1) W(b|0) - W(b|1) W(a|0)|` at most `tolerance`
/// times the larger of the two products. That is a multiplicative
/// quantization of the ratio itself, so it keeps likelihood ratios apart no
/// matter how extreme they get (1e14 and 1e16 stay distinct classes even
/// though their reciprocals differ by less than the tolerance), while rows
/// whose ratios differ only by accumulated roundoff still merge.
///
/// Merging equal-ratio outputs preserves the Bhattacharyya parameter exactly:
/// within a class `W(y|1) = r W(y|0)`, so `sum sqrt(W(y|0) W(y|1))` and
/// `sqrt(sum W(y|0) sum W(y|1))` are both `sqrt(r) sum W(y|0)`. Class masses
/// accumulate in compensated sums on the float backend, keeping the value
/// stable to about `1e-15` even across very large merges. Only genuinely
/// distinct ratios that pass within `tolerance` of each other can move the
/// value further, and no channel in this crate's fold paths produces such
/// near-collisions.
pub fn lr_merge<T: Scalar>(w: &ExplicitChannel<T>, tolerance: f64) -> ExplicitChannel<T> {
    let mut rows: Vec<(T, T)> = w
        .outputs()
        .iter()
        .filter(|(q0, q1)| !(q0.is_zero() && q1.is_zero()))
        .cloned()
        .collect();
    // Sort by likelihood ratio. The rational backend compares cross products,
    // q1a/q0a < q1b/q0b iff q1a*q0b < q1b*q0a for nonnegative entries (and
    // (0, 0) rows are gone), which is exact and therefore a total order. The
    // float backend compares rounded ratios with `total_cmp`: rounded cross
    // products are not reliably transitive at equality, and the sort is only
    // used to bring same-class rows together, so ulp-level ordering noise
    // within a class is harmless.
    rows.sort_by(|a, b| match T::BACKEND {
        Backend::Rational => {
            let left = a.1.clone() * b.0.clone();
            let right = b.1.clone() * a.0.clone();
            left.partial_cmp(&right).expect("exact products are totally ordered")
        }
        Backend::Float => {
            let left = a.1.to_f64() / a.0.to_f64();
            let right = b.1.to_f64() / b.0.to_f64();
            left.total_cmp(&right)
        }
    });

    let same_class = |a: &(T, T), b: &(T, T)| -> bool {
        match T::BACKEND {
            Backend::Rational => a.1.clone() * b.0.clone() == b.1.clone() * a.0.clone(),
            Backend::Float => {
                let left = a.1.to_f64() * b.0.to_f64();
                let right = b.1.to_f64() * a.0.to_f64();
                (left - right).abs() <= tolerance * left.max(right)
            }
        }
    };

    let mut merged: Vec<(T, T)> = Vec::new();
    let mut start = 0;
    while start < rows.len() {
        let mut end = start + 1;
        // Group against the class representative, not the previous row, so a
        // chain of barely-adjacent ratios cannot creep across distinct classes.
        while end < rows.len() && same_class(&rows[start], &rows[end]) {
            end += 1;
        }
        merged.push(sum_rows(&rows[start..end]));
        start = end;
    }
    ExplicitChannel { outputs: merged }
}

/// Component-wise sum of a run of rows, compensated on the float backend.
fn sum_rows<T: Scalar>(rows: &[(T, T)]) -> (T, T) {
    match T::BACKEND {
        Backend::Rational => rows.iter().fold((T::zero(), T::zero()), |(s0, s1), (q0, q1)| {
            (s0 + q0.clone(), s1 + q1.clone())
        }),
        Backend::Float => {
            let mut s0 = NeumaierSum::new();
            let mut s1 = NeumaierSum::new();
            for (q0, q1) in rows {
                s0.add(q0.to_f64());
                s1.add(q1.to_f64());
            }
            (T::from_f64(s0.value()), T::from_f64(s1.value()))
        }
    }
}
