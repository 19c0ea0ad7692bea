//! Closed-form Bhattacharyya evaluators for polarized binary symmetric channels.
//!
//! For a BSC, whole families of polarized bit-channels admit exact finite
//! formulas, no density evolution required. This crate collects them:
//!
//! * [`BscConstants`]: the symbol families `C = p p̄`, `M(i) = (1 - 2p)^i`,
//!   `S(i) = p̄^i + p^i`, `D(i) = p̄^i - p^i` every formula is written in,
//!   memoized per instance and exact on the rational backend.
//! * [`closed_form_k3`] / [`closed_form_k4`]: the Bhattacharyya parameter of all
//!   8 level-3 and 16 level-4 bit-channels as literal closed forms.
//! * [`q_base_check_state`] / [`q_base_bhatt`] / [`ql_enumerate_check_state`]:
//!   explicit check-domain states for `q`-fold variable towers and their `ell`-fold
//!   check folds, built combinatorially from compositions instead of by stepping
//!   the evolution engine.
//! * [`recursive_bhatt`]: peels leading check steps into a crossover-parameter
//!   map (`p <- 2 p p̄`) and trailing variable steps into squarings, delegating
//!   only the irreducible middle of a pattern to an arbitrary evaluator such as
//!   the evolution engine.
//!
//! Everything here is redundant with [`polar_ce`] by construction, and that is
//! the point: the two paths are developed independently and cross-checked
//! against each other to the last few ulps in the integration tests.
//!
//! # Example
//!
//! ```
//! use polar_bsc::{closed_form_k3, q_base_bhatt};
//! use polar_ce::{polarize, BitPattern, EngineConfig};
//! use polar_density::AbsDDensity;
//!
//! // The all-variable level-3 channel two ways: closed form vs engine.
//! let closed = closed_form_k3(8, 0.1);
//! let d: AbsDDensity<f64> = AbsDDensity::bsc(0.1).unwrap();
//! let pattern = BitPattern::from_bit_string("111").unwrap();
//! let evolved = polarize(&d, &pattern, &EngineConfig::default()).unwrap();
//! assert!((closed - evolved).abs() < 1e-12);
//! assert!((closed - q_base_bhatt(0.1, 3).unwrap()).abs() < 1e-15);
//! ```

mod base;
mod closed_forms;
mod constants;
mod error;
mod recursion;

pub use base::{
    q_base_bhatt, q_base_check_state, ql_enumerate_check_state, COMPOSITION_CAP, MAX_FOLD_DEPTH,
    MAX_TOWER_ORDER, MIN_TOWER_ORDER,
};
pub use closed_forms::{closed_form_k3, closed_form_k4};
pub use constants::{BscConstants, DEFAULT_SYMBOL_DEPTH};
pub use error::{BscError, Result};
pub use recursion::{recursive_bhatt, recursive_bhatt_ce};
