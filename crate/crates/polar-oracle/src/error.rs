//! Error type shared by the oracle operations.

use polar_density::DensityError;
use thiserror::Error;

/// Everything that can go wrong while building or transforming explicit channels.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum OracleError {
    /// A channel transform would materialize more output symbols than the budget
    /// allows. `required` is the exact output count the step needs.
    #[error("channel transform needs {required} outputs, over the cap of {cap}")]
    OutputBudget { required: u128, cap: u64 },

    /// An explicit transition table failed validation.
    #[error("invalid channel: {reason}")]
    InvalidChannel { reason: String },

    /// A channel description failed validation.
    #[error(transparent)]
    Density(#[from] DensityError),
}

/// Crate-local result alias.
pub type Result<T> = std::result::Result<T, OracleError>;
