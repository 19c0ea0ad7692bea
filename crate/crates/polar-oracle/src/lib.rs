//! Independent cross-checks for polar bit-channel reliability.
//!
//! The evolution engine in `polar-ce` computes Bhattacharyya parameters by
//! tracking reliability densities through closed-form update rules. This crate
//! re-derives the same numbers two entirely different ways, sharing no
//! machinery with the engine beyond the bit-pattern convention itself:
//!
//! * [`brute_force_z`] folds the full transition table of the channel, one
//!   combining step per pattern bit, merging equal-likelihood-ratio outputs
//!   between steps to keep the table small. At moderate depth this is exact
//!   (literally so on the rational backend).
//! * [`mc_llr_z`] simulates the bit-channel's log-likelihood-ratio tree and
//!   estimates `Z` as the sample mean of `e^(-L/2)`, with a standard error,
//!   at depths far beyond what any exact table could reach.
//!
//! Bit conventions come from [`polar_ce::Step`]: bit `0` is the check
//! combining step, bit `1` the variable combining step, and bit-channel
//! `index` at depth `k` reads the binary digits of `index - 1`, most
//! significant first.
//!
//! ```
//! use polar_ce::{all_bhattacharyya, BitPattern, EngineConfig};
//! use polar_density::{AbsDDensity, ChannelSpec};
//! use polar_oracle::{brute_force_z, mc_llr_z};
//!
//! let spec = ChannelSpec::Bsc { p: 0.1 };
//! let pattern = BitPattern::from_bit_string("111").unwrap();
//!
//! // Three variable steps square Z three times: 0.6^8 = 0.01679616.
//! let brute = brute_force_z::<f64>(&spec, &pattern).unwrap();
//! assert!((brute - 0.01679616).abs() < 1e-12);
//!
//! // The density engine and a 10^4-sample simulation land on the same value.
//! let density = AbsDDensity::<f64>::from_spec(&spec, 1e-12).unwrap();
//! let engine = all_bhattacharyya(&density, 3, &EngineConfig::default()).unwrap()[7];
//! assert!((brute - engine).abs() < 1e-12);
//! let (mc, stderr) = mc_llr_z(&spec, &pattern, 10_000, 42).unwrap();
//! assert!((mc - brute).abs() < 4.0 * stderr + 1e-9);
//! ```

mod brute;
mod channel;
mod error;
mod mc;

pub use brute::brute_force_z;
pub use channel::{
    lr_merge, minus_transform, plus_transform, ExplicitChannel, DEFAULT_LR_TOL,
    DEFAULT_OUTPUT_CAP, ROW_SUM_TOL,
};
pub use error::{OracleError, Result};
pub use mc::{mc_llr_z, MAX_MC_DEPTH};
