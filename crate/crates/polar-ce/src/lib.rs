//! Exact evolution of channel densities under polar transforms.
//!
//! Polarizing a binary-input symmetric channel `W` over `k` levels produces `2^k`
//! bit-channels. Each is addressed by a bit pattern `b_1 ... b_k` (see [`BitPattern`]),
//! where bit 0 applies the check (minus) transform and bit 1 the variable (plus)
//! transform. This crate evolves the finitely supported absolute D-density of `W`
//! (see [`polar_density::AbsDDensity`]) through those transforms in closed form:
//! every step maps an atomic density to an atomic density, so Bhattacharyya
//! parameters come out exact up to arithmetic rounding, with no quantization and no
//! sampling.
//!
//! Two coordinate systems are used, one per transform:
//!
//! * check domain: atoms `(alpha_i, z_i)`, where the check transform multiplies
//!   independent `z` values,
//! * variable domain: atoms `(beta_i, w_i)` with `w = (1 - z) / (1 + z)` and
//!   `beta = alpha (1 + z) / 2`, where the variable transform multiplies `w` values
//!   and additionally produces ratio terms `w_i / w_j` through a cross state.
//!
//! States convert lazily: a run of check steps stays in the check domain, a run of
//! variable steps in the variable domain, and a conversion happens only when the next
//! step needs the other coordinate system.
//!
//! # Example
//!
//! ```
//! use polar_ce::{all_bhattacharyya, polarize, BitPattern, EngineConfig};
//! use polar_density::AbsDDensity;
//!
//! let d: AbsDDensity<f64> = AbsDDensity::bec(0.3).unwrap();
//! let cfg = EngineConfig::default();
//!
//! // Check then variable on an erasure channel: (2e - e^2)^2 = 0.2601.
//! let pattern = BitPattern::from_bit_string("01").unwrap();
//! let z = polarize(&d, &pattern, &cfg).unwrap();
//! assert!((z - 0.2601).abs() < 1e-15);
//!
//! // All four level-2 bit-channels at once, in index order.
//! let zs = all_bhattacharyya(&d, 2, &cfg).unwrap();
//! assert_eq!(zs.len(), 4);
//! assert!((zs[1] - 0.2601).abs() < 1e-15);
//! ```

mod config;
mod engine;
mod error;
mod pattern;
mod select;
mod state;

pub use config::EngineConfig;
pub use engine::{advance, all_bhattacharyya, check_update, cross_update, polarize, var_update};
pub use error::{CeError, Result};
pub use pattern::{BitPattern, Step, MAX_LEVEL};
pub use select::{select_info_set, SelectionCriterion};
pub use state::{CheckState, CrossState, EngineState, VarState};
