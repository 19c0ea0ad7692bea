//! Monte-Carlo estimation of bit-channel reliability through the LLR tree.
//!
//! Every bit-channel of depth `k` can be simulated without ever materializing
//! its output alphabet: draw `2^k` independent base-channel observations,
//! convert each to the log-likelihood ratio `L = ln(W(y|0) / W(y|1))` of the
//! transmitted symbol, and fold neighbors pairwise, one tree level per pattern
//! bit. Check combining multiplies reliabilities in the tanh domain,
//! `L = 2 atanh(tanh(L1/2) tanh(L2/2))`, and variable combining adds,
//! `L = L1 + L2`. All observations are drawn conditioned on the same input
//! symbol, which channel symmetry makes representative of either one.
//!
//! The Bhattacharyya parameter is the mean of `e^(-L/2)` under that
//! conditioning: each output contributes
//! `W(y|0) * sqrt(W(y|1) / W(y|0)) = sqrt(W(y|0) W(y|1))`. For an erasure
//! channel the samples are three-valued in principle but two-valued in
//! practice: an erasure has `L = 0` and contributes exactly 1, a revealed
//! symbol has `L = +inf` and contributes exactly 0, so the estimate is the
//! observed erasure fraction of the folded tree.

use polar_ce::{BitPattern, Step};
use polar_density::ChannelSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::channel::ExplicitChannel;
use crate::error::Result;

/// Largest pattern depth the simulator accepts; the per-sample working buffer
/// holds `2^depth` values, so this caps it at 128 MiB.
pub const MAX_MC_DEPTH: u32 = 24;

/// Estimates the Bhattacharyya parameter of the bit-channel `pattern` carves
/// out of `spec`, returning `(mean, standard_error)` over `samples` draws.
///
/// Each sample costs `2^k` base-channel draws for a depth-`k` pattern. The
/// stream is a counter-based generator seeded with `seed`, so results are
/// reproducible bit for bit on one platform; the standard error comes from
/// the sample variance.
///
/// # Panics
///
/// Requires `samples >= 1000` (below that the standard error is too noisy to
/// report) and `pattern.level() <= MAX_MC_DEPTH`.
///
/// ```
/// use polar_ce::BitPattern;
/// use polar_density::ChannelSpec;
/// use polar_oracle::mc_llr_z;
///
/// let pattern = BitPattern::from_bit_string("1").unwrap();
/// let (mean, stderr) = mc_llr_z(&ChannelSpec::Bsc { p: 0.1 }, &pattern, 100_000, 7).unwrap();
/// // One variable step squares Z: the true value is 0.36.
/// assert!((mean - 0.36).abs() < 4.0 * stderr);
/// ```
pub fn mc_llr_z(
    spec: &ChannelSpec,
    pattern: &BitPattern,
    samples: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    assert!(samples >= 1_000, "need at least 1000 samples, got {samples}");
    let depth = pattern.level();
    assert!(
        depth <= MAX_MC_DEPTH,
        "pattern depth {depth} exceeds the simulator cap {MAX_MC_DEPTH}"
    );

    let w = ExplicitChannel::<f64>::from_spec(spec)?;
    // Inverse-CDF table over W(.|0): cumulative probability and the LLR of
    // each output. Outputs impossible under the conditioning input are never
    // drawn and are left out; an output impossible under the other input has
    // LLR +inf and contributes e^(-inf/2) = 0.
    let mut table: Vec<(f64, f64)> = Vec::with_capacity(w.output_count());
    let mut cumulative = 0.0;
    for &(q0, q1) in w.outputs() {
        if q0 > 0.0 {
            cumulative += q0;
            table.push((cumulative, (q0 / q1).ln()));
        }
    }

    let leaves = 1usize << depth;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut buf = vec![0.0f64; leaves];
    let mut mean = 0.0f64;
    let mut m2 = 0.0f64;
    for n in 1..=samples {
        for slot in buf.iter_mut() {
            let u: f64 = rng.random();
            let idx = table.partition_point(|&(c, _)| c <= u).min(table.len() - 1);
            *slot = table[idx].1;
        }
        let mut len = leaves;
        for step in pattern.steps() {
            len /= 2;
            for j in 0..len {
                let (l1, l2) = (buf[2 * j], buf[2 * j + 1]);
                buf[j] = match step {
                    Step::Check => 2.0 * ((l1 / 2.0).tanh() * (l2 / 2.0).tanh()).atanh(),
                    Step::Var => l1 + l2,
                };
            }
        }
        let value = (-buf[0] / 2.0).exp();
        let delta = value - mean;
        mean += delta / n as f64;
        m2 += delta * (value - mean);
    }
    let stderr = if samples > 1 {
        (m2 / (samples as f64 * (samples - 1) as f64)).sqrt()
    } else {
        0.0
    };
    Ok((mean, stderr))
}
