//! Error type and the exit-code contract.
//!
//! Every failure maps onto one of three process exit codes:
//!
//! * `1` for usage and input problems (bad flags, out-of-domain parameters,
//!   malformed files),
//! * `2` for resource limits and I/O (atom budgets, unwritable output),
//! * `3` for verification failures (a cross-check exceeded its tolerance).
//!
//! Success is exit `0`. The mapping lives here so every command agrees on it.

use polar_ce::CeError;
use polar_density::DensityError;
use thiserror::Error;

/// A command failure, classified by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or malformed input; exits with code 1.
    #[error("{0}")]
    Usage(String),

    /// A resource limit or I/O failure; exits with code 2.
    #[error("{0}")]
    Resource(String),

    /// A verification check failed; exits with code 3.
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    /// The process exit code this error maps to.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Resource(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl From<DensityError> for CliError {
    fn from(e: DensityError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CeError> for CliError {
    fn from(e: CeError) -> Self {
        match e {
            CeError::AtomBudget { .. } => CliError::Resource(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Resource(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Resource(e.to_string())
    }
}

/// Crate-local result alias.
pub type Result<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
        assert_eq!(CliError::Resource("x".into()).exit_code(), 2);
        assert_eq!(CliError::Verification("x".into()).exit_code(), 3);
    }

    #[test]
    fn atom_budget_is_a_resource_error() {
        let e = CeError::AtomBudget { site: "here".into(), required: 10, cap: 5 };
        assert_eq!(CliError::from(e).exit_code(), 2);
        let e = CeError::LevelTooLarge { level: 99, max: 60 };
        assert_eq!(CliError::from(e).exit_code(), 1);
    }
}
