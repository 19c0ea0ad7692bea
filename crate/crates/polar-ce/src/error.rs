//! Error type for the evolution engine.

use polar_density::DensityError;
use thiserror::Error;

/// Result alias for engine operations.
pub type Result<T> = std::result::Result<T, CeError>;

/// Everything that can go wrong while evolving densities.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum CeError {
    /// A transform step would materialize more candidate atoms than the configured
    /// budget allows. `site` pins down the step (and, for batch runs, the first
    /// affected bit-channel index).
    #[error("atom budget exceeded at {site}: {required} candidate atoms, cap is {cap}")]
    AtomBudget {
        /// Where in the pipeline the budget was exceeded.
        site: String,
        /// Candidate atoms the step would have produced.
        required: u128,
        /// Configured cap.
        cap: usize,
    },

    /// A bit-channel index outside `1..=2^level`.
    #[error("bit-channel index {index} out of range 1..={max}")]
    IndexOutOfRange {
        /// Requested index (1-based).
        index: u64,
        /// Largest valid index at this level.
        max: u64,
    },

    /// A textual pattern containing anything but '0' and '1', or empty.
    #[error("pattern string must be nonempty and contain only '0' and '1', got {got:?}")]
    BadPatternString {
        /// The offending string.
        got: String,
    },

    /// A polarization level too large to index with 64-bit channel indices.
    #[error("level {level} exceeds the supported maximum {max}")]
    LevelTooLarge {
        /// Requested level.
        level: u32,
        /// Largest supported level.
        max: u32,
    },

    /// Engine configuration that cannot apply to the chosen backend or values.
    #[error("invalid engine configuration: {reason}")]
    InvalidConfig {
        /// What failed.
        reason: String,
    },

    /// A selection parameter outside its domain.
    #[error("invalid selection criterion: {reason}")]
    InvalidCriterion {
        /// What failed.
        reason: String,
    },

    /// A density-level failure (construction, merging, validation).
    #[error(transparent)]
    Density(#[from] DensityError),
}

impl CeError {
    /// Rewrites the `site` of an [`CeError::AtomBudget`] error, leaving other
    /// variants untouched. Batch drivers use this to say which bit-channel failed.
    pub fn with_site(self, site: impl Into<String>) -> Self {
        match self {
            CeError::AtomBudget { required, cap, .. } => {
                CeError::AtomBudget { site: site.into(), required, cap }
            }
            other => other,
        }
    }
}
