//! Monte-Carlo confirmation of the moment-series form.
//!
//! The probabilistic reading of the series is a product of independent draws: a
//! block of `2Q` symmetric-channel observations with `K ~ Binomial(2Q, p)` errors
//! has reliability coordinate `X_Q = tanh(|Q - K| * delta)` with
//! `delta = ln((1 - p)/p)`, and `l` check steps multiply `L = 2^l` independent
//! copies together. The Bhattacharyya parameter is `E[sqrt(1 - X^2)]` of the
//! product, which this module estimates by direct simulation with a seeded
//! counter-based generator, so runs are reproducible bit for bit on one platform.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Binomial, Distribution};

/// Estimates `E[sqrt(1 - X^2)]` for the product of `pow` independent block
/// coordinates, returning `(mean, standard_error)`.
///
/// `big_q` is the half-block size `Q` (a power of two, at least 2), `p` the
/// crossover probability in `(0, 1/2)`, and `seed` fixes the random stream. The
/// standard error comes from the sample variance; with `samples = 1` it is zero.
pub fn mc_product_estimate(big_q: u64, pow: u64, p: f64, samples: u64, seed: u64) -> (f64, f64) {
    assert!(big_q >= 2 && big_q.is_power_of_two(), "Q must be a power of two >= 2, got {big_q}");
    assert!(pow >= 1, "the product length must be positive");
    assert!(p > 0.0 && p < 0.5, "p must lie in (0, 1/2), got {p}");
    assert!(samples >= 1, "at least one sample is required");

    let delta = ((1.0 - p) / p).ln();
    let binomial = Binomial::new(2 * big_q, p).expect("validated parameters");
    let mut rng = ChaCha12Rng::seed_from_u64(seed);

    let mut mean = 0.0f64;
    let mut m2 = 0.0f64;
    for n in 1..=samples {
        let mut x = 1.0f64;
        for _ in 0..pow {
            let errors = binomial.sample(&mut rng);
            let imbalance = big_q.abs_diff(errors);
            x *= (imbalance as f64 * delta).tanh();
        }
        let v = (1.0 - x * x).max(0.0).sqrt();
        let d = v - mean;
        mean += d / n as f64;
        m2 += d * (v - mean);
    }
    let stderr = if samples > 1 {
        (m2 / (samples as f64 * (samples - 1) as f64)).sqrt()
    } else {
        0.0
    };
    (mean, stderr)
}
