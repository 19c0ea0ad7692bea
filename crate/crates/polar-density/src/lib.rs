//! Atomic absolute-D-density representation of binary-input symmetric channels.
//!
//! A binary-input memoryless symmetric channel with output alphabet `Y` is summarized,
//! for reliability purposes, by the distribution of the per-output statistic
//!
//! ```text
//! z_y = (W(y|0) - W(y|1)) / (W(y|0) + W(y|1))
//! ```
//!
//! folded onto `[0, 1]` by symmetry. The resulting finitely supported distribution is
//! the absolute D-density of the channel: point masses on a grid
//! `0 = z_0 < z_1 < ... < z_n = 1`, where the boundary masses at `z = 0` (pure noise
//! outputs) and `z = 1` (noiseless outputs) are tracked separately from the interior
//! atoms. Masses are nonnegative and sum to one.
//!
//! Two arithmetic backends implement the same operations through the [`Scalar`] trait:
//! [`f64`] for speed and [`num_rational::BigRational`] for exact arithmetic. All
//! structural operations (construction, merging, channel conversion) stay in the
//! backend's arithmetic; only square-root reductions such as [`AbsDDensity::bhattacharyya`]
//! round to `f64`.
//!
//! # Example
//!
//! ```
//! use polar_density::AbsDDensity;
//!
//! // BSC(0.1): one interior atom of mass 1 at z = 1 - 2p = 0.8.
//! let d: AbsDDensity<f64> = AbsDDensity::bsc(0.1).unwrap();
//! assert_eq!(d.interior().len(), 1);
//! assert!((d.bhattacharyya() - 0.6).abs() < 1e-15);
//!
//! // BEC(0.3): mass eps at z = 0, mass 1 - eps at z = 1, empty interior.
//! let d: AbsDDensity<f64> = AbsDDensity::bec(0.3).unwrap();
//! assert!(d.interior().is_empty());
//! assert!((d.bhattacharyya() - 0.3).abs() < 1e-15);
//! ```

mod atom;
mod channel;
mod density;
mod error;
mod scalar;
mod sum;

pub use atom::{merge_atoms, Atom};
pub use channel::ChannelSpec;
pub use density::{route_boundaries, AbsDDensity, RoutedAtoms};
pub use error::{DensityError, Result};
pub use scalar::{Backend, Scalar};
pub use sum::NeumaierSum;

/// Default relative tolerance for treating two float positions as coincident.
///
/// The exact-rational backend ignores tolerances and merges only equal positions.
pub const DEFAULT_MERGE_TOL: f64 = 1e-12;

/// Row-sum slack accepted when validating float channel transition matrices.
pub const CHANNEL_ROW_TOL: f64 = 1e-9;

/// Relative slack accepted on the total mass of a float density.
pub const MASS_TOL: f64 = 1e-12;
