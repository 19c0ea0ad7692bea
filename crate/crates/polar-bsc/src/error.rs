//! Error type for the closed-form helpers.

use num_bigint::BigInt;
use polar_ce::CeError;
use polar_density::DensityError;
use thiserror::Error;

/// Result alias for closed-form operations.
pub type Result<T> = std::result::Result<T, BscError>;

/// Everything that can go wrong while evaluating closed forms or enumerating
/// base-channel states.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum BscError {
    /// A variable-tower order `q` outside the supported range. Orders above the cap
    /// make the downstream composition enumeration intractable.
    #[error("tower order q = {q} out of range {min}..={max}")]
    OrderOutOfRange {
        /// Requested order.
        q: u32,
        /// Smallest supported order.
        min: u32,
        /// Largest supported order.
        max: u32,
    },

    /// A check-fold depth `ell` above the supported cap. Depths above the cap make
    /// the per-atom weight walk (one factor per unit of `L = 2^ell`) intractable.
    #[error("check-fold depth ell = {ell} exceeds the supported maximum {max}")]
    DepthOutOfRange {
        /// Requested depth.
        ell: u32,
        /// Largest supported depth.
        max: u32,
    },

    /// The composition enumeration would materialize more atoms than the budget
    /// allows. The required count is exact (computed in big-integer arithmetic).
    #[error("composition count {required} exceeds the atom budget {cap}")]
    AtomBudget {
        /// Number of atoms the enumeration would produce.
        required: BigInt,
        /// Configured cap.
        cap: u64,
    },

    /// An engine-level failure, propagated from a base-pattern evaluator.
    #[error(transparent)]
    Engine(#[from] CeError),

    /// A density-level failure (construction, merging, validation).
    #[error(transparent)]
    Density(#[from] DensityError),
}
