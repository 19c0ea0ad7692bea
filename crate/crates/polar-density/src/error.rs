//! Error type shared by all density operations.

use thiserror::Error;

/// Result alias for density operations.
pub type Result<T> = std::result::Result<T, DensityError>;

/// Everything that can go wrong while building or transforming a density.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum DensityError {
    /// A merge tolerance outside its domain (negative, non-finite, or nonzero with
    /// the exact-rational backend).
    #[error("invalid merge tolerance {tol}: must be finite and nonnegative, and exactly 0 for the rational backend")]
    InvalidTolerance {
        /// The offending tolerance.
        tol: f64,
    },

    /// A position or mass was NaN or infinite.
    #[error("non-finite position or mass encountered")]
    NonFinite,

    /// An interior atom position outside the open interval (0, 1).
    #[error("interior atom position {position} outside (0, 1); boundary mass belongs in mass_at_zero / mass_at_one")]
    PositionOutOfRange {
        /// Offending position, as close as `f64` can render it.
        position: f64,
    },

    /// A negative mass.
    #[error("negative mass {mass}")]
    NegativeMass {
        /// Offending mass, as close as `f64` can render it.
        mass: f64,
    },

    /// Masses do not sum to one within the backend's slack.
    #[error("total mass {total} differs from 1 beyond the accepted slack")]
    MassNotConserved {
        /// Total mass found, as close as `f64` can render it.
        total: f64,
    },

    /// A channel parameter or transition matrix failed validation.
    #[error("invalid channel: {reason}")]
    InvalidChannel {
        /// Human-readable description of the failed check.
        reason: String,
    },
}

impl DensityError {
    /// Shorthand for [`DensityError::InvalidChannel`].
    pub fn channel(reason: impl Into<String>) -> Self {
        DensityError::InvalidChannel { reason: reason.into() }
    }
}
