//! Analytic series companions to the evolution engine: Taylor coefficients of the
//! two domain-conversion identities, the exact moment series for check-only
//! evolutions with its truncation bound, and a Monte-Carlo estimator confirming the
//! probabilistic reading of that series.
//!
//! The three layers cross-validate each other and the engine:
//!
//! * [`coeff_a`] / [`coeff_g`] and the partial-sum evaluators
//!   [`expand_var_identity`] / [`expand_check_identity`] pin down the coefficient
//!   conventions against closed forms,
//! * [`beta_kappa`] / [`ba_series`] turn interior moments of a [`MomentProvider`]
//!   into a monotone upper bound on the Bhattacharyya parameter with an explicit
//!   truncation bound,
//! * [`mc_product_estimate`] samples the same quantity from its product-of-blocks
//!   definition.
//!
//! # Examples
//!
//! ```
//! use polar_ce::CheckState;
//! use polar_density::Atom;
//! use polar_series::{ba_series, MomentProvider};
//!
//! // One interior atom at z = 0.6 with mass 0.7, the rest at z = 0:
//! // B = 0.3 + 0.7 sqrt(1 - 0.36) = 0.86.
//! let state = CheckState::from_parts(0.3, 0.0, vec![Atom::new(0.6, 0.7)]);
//! let moments = MomentProvider::from_check_state(&state).unwrap();
//! let out = ba_series(&moments, 1, 200);
//! assert!((out.value - 0.86).abs() < 1e-12);
//! // The bound is conservative (it assumes the moments stop decaying), but the
//! // value always sits between the truth and truth + bound.
//! assert!(out.value - 0.86 <= out.truncation_bound);
//! ```

mod beta;
mod coeffs;
mod error;
mod mc;

pub use beta::{
    ba_series, beta_kappa, beta_tail, BaSeries, MomentProvider, Moments, DEFAULT_KAPPA_CAP,
};
pub use coeffs::{
    coeff_a, coeff_g, expand_check_identity, expand_var_identity, ComplexScalar,
};
pub use error::{Result, SeriesError};
pub use mc::mc_product_estimate;
