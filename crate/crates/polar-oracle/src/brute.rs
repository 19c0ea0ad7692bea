//! Exact bit-channel construction by folding explicit transition tables.
//!
//! A depth-`k` bit pattern turns a base channel into a bit-channel by applying
//! one combining step per bit, first bit first: bit `0` is check combining,
//! bit `1` is variable combining, the same convention [`polar_ce::Step`]
//! encodes. Output alphabets square at every step, so the fold merges
//! equal-likelihood-ratio outputs after each one; without the merge even
//! depth 4 is out of reach, with it the table stays small for every channel
//! family this crate handles.
//!
//! The result is a Bhattacharyya parameter computed with no density machinery
//! at all, which is what makes it useful as a check on the evolution engine.

use polar_ce::{BitPattern, Step};
use polar_density::{Backend, ChannelSpec, Scalar};

use crate::channel::{lr_merge, minus_transform, plus_transform, ExplicitChannel};
use crate::channel::{DEFAULT_LR_TOL, DEFAULT_OUTPUT_CAP};
use crate::error::Result;

/// Folds `pattern` over the channel described by `spec` and returns the exact
/// Bhattacharyya parameter `Z = sum_y sqrt(W(y|0) W(y|1))` of the resulting
/// bit-channel.
///
/// Equal-ratio outputs merge after every combining step (exactly on the
/// rational backend, at the [`DEFAULT_LR_TOL`] quantization on the float
/// backend), and each step is held to the [`DEFAULT_OUTPUT_CAP`] output
/// budget. Depth is limited in practice by that budget: channels whose merged
/// tables keep growing stop with [`OracleError::OutputBudget`].
///
/// Patterns are nonempty by construction, so the depth-0 channel (which has no
/// bit-channel index to speak of) cannot be requested.
///
/// ```
/// use polar_ce::BitPattern;
/// use polar_density::ChannelSpec;
/// use polar_oracle::brute_force_z;
///
/// // Two check steps on an erasure channel: eps folds as eps' = 2 eps - eps^2
/// // twice, and Z of an erasure channel is its erasure probability.
/// let pattern = BitPattern::from_bit_string("00").unwrap();
/// let z = brute_force_z::<f64>(&ChannelSpec::Bec { eps: 0.3 }, &pattern).unwrap();
/// assert!((z - 0.7599).abs() < 1e-12);
/// ```
///
/// [`OracleError::OutputBudget`]: crate::OracleError::OutputBudget
pub fn brute_force_z<T: Scalar>(spec: &ChannelSpec, pattern: &BitPattern) -> Result<f64> {
    debug_assert!(!pattern.steps().is_empty(), "patterns are nonempty by construction");
    let tol = match T::BACKEND {
        Backend::Rational => 0.0,
        Backend::Float => DEFAULT_LR_TOL,
    };
    let mut w = lr_merge(&ExplicitChannel::<T>::from_spec(spec)?, tol);
    for step in pattern.steps() {
        w = match step {
            Step::Check => minus_transform(&w, DEFAULT_OUTPUT_CAP)?,
            Step::Var => plus_transform(&w, DEFAULT_OUTPUT_CAP)?,
        };
        w = lr_merge(&w, tol);
    }
    Ok(w.z())
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;

    #[test]
    fn three_variable_steps_on_the_symmetric_channel() {
        // Repeated variable combining squares Z each time:
        // (2 sqrt(0.09))^(2^3) = 0.6^8 = 0.01679616.
        let pattern = BitPattern::from_bit_string("111").unwrap();
        let z = brute_force_z::<f64>(&ChannelSpec::Bsc { p: 0.1 }, &pattern).unwrap();
        assert!((z - 0.01679616).abs() < 1e-12, "z = {z}");
    }

    #[test]
    fn check_then_variable_on_the_erasure_channel() {
        // eps = 0.3 folds to 2*0.3 - 0.09 = 0.51 under the check step, then
        // squares to 0.2601 under the variable step.
        let pattern = BitPattern::from_bit_string("01").unwrap();
        let z = brute_force_z::<f64>(&ChannelSpec::Bec { eps: 0.3 }, &pattern).unwrap();
        assert!((z - 0.2601).abs() < 1e-12, "z = {z}");
    }

    #[test]
    fn backends_agree_on_small_folds() {
        for bits in ["0", "1", "01", "10", "110"] {
            let pattern = BitPattern::from_bit_string(bits).unwrap();
            let spec = ChannelSpec::Bsc { p: 0.1 };
            let float = brute_force_z::<f64>(&spec, &pattern).unwrap();
            let exact = brute_force_z::<BigRational>(&spec, &pattern).unwrap();
            assert!((float - exact).abs() < 1e-13, "pattern {bits}: {float} vs {exact}");
        }
    }

    #[test]
    fn index_and_bit_string_forms_fold_identically() {
        // Bit-channel 6 of the depth-3 tree is the pattern 101: the fold reads
        // the binary digits of (index - 1), most significant first.
        let by_index = BitPattern::from_index(3, 6).unwrap();
        let by_string = BitPattern::from_bit_string("101").unwrap();
        assert_eq!(by_index.steps(), by_string.steps());
        let spec = ChannelSpec::Bsc { p: 0.2 };
        let a = brute_force_z::<f64>(&spec, &by_index).unwrap();
        let b = brute_force_z::<f64>(&spec, &by_string).unwrap();
        assert_eq!(a, b);
    }
}
