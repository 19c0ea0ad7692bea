//! Error type for the series module.

use thiserror::Error;

/// Errors from series evaluation and moment extraction.
#[derive(Debug, Error)]
pub enum SeriesError {
    /// A moment-series index exceeded the configured bound.
    #[error("kappa = {kappa} exceeds the configured bound {cap}")]
    KappaOutOfRange {
        /// The requested index.
        kappa: u64,
        /// The configured bound.
        cap: u64,
    },
    /// A state does not satisfy the structural requirements of the series form.
    #[error("unsupported state: {reason}")]
    UnsupportedState {
        /// What requirement failed.
        reason: String,
    },
}

/// Convenience alias used throughout this crate.
pub type Result<T> = std::result::Result<T, SeriesError>;
