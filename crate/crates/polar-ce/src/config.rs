//! Engine configuration.

use polar_density::DEFAULT_MERGE_TOL;

use crate::error::{CeError, Result};

/// Knobs shared by every transform step.
#[derive(Debug, Clone, PartialEq)]
pub struct EngineConfig {
    /// Largest number of candidate atoms a single step may materialize. Steps that
    /// would exceed it fail with [`CeError::AtomBudget`] before allocating.
    pub atom_cap: usize,
    /// Relative tolerance under which float positions merge. The exact-rational
    /// backend ignores this and merges equal positions only.
    pub merge_tol: f64,
    /// Whether to drop interior atoms below [`EngineConfig::prune_threshold`] after
    /// each step. Float backend only. Pruned mass moves to the zero boundary, which
    /// keeps total mass at 1 and can only increase the computed Bhattacharyya
    /// parameter (a pessimistic, never optimistic, approximation).
    pub prune: bool,
    /// Mass below which interior atoms are pruned when [`EngineConfig::prune`] is on.
    pub prune_threshold: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            atom_cap: 1_000_000,
            merge_tol: DEFAULT_MERGE_TOL,
            prune: false,
            prune_threshold: 1e-15,
        }
    }
}

impl EngineConfig {
    /// Validates value domains (cap positive, tolerances finite and nonnegative).
    pub fn validate(&self) -> Result<()> {
        if self.atom_cap == 0 {
            return Err(CeError::InvalidConfig { reason: "atom_cap must be positive".into() });
        }
        if !self.merge_tol.is_finite() || self.merge_tol < 0.0 {
            return Err(CeError::InvalidConfig {
                reason: format!("merge_tol {} must be finite and nonnegative", self.merge_tol),
            });
        }
        if !self.prune_threshold.is_finite() || self.prune_threshold < 0.0 {
            return Err(CeError::InvalidConfig {
                reason: format!(
                    "prune_threshold {} must be finite and nonnegative",
                    self.prune_threshold
                ),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_matches_documented_values() {
        let cfg = EngineConfig::default();
        assert_eq!(cfg.atom_cap, 1_000_000);
        assert_eq!(cfg.merge_tol, 1e-12);
        assert!(!cfg.prune);
        assert_eq!(cfg.prune_threshold, 1e-15);
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn validation_rejects_bad_values() {
        let cfg = EngineConfig { atom_cap: 0, ..EngineConfig::default() };
        assert!(cfg.validate().is_err());
        let cfg = EngineConfig { merge_tol: -1.0, ..EngineConfig::default() };
        assert!(cfg.validate().is_err());
        let cfg = EngineConfig { prune_threshold: f64::NAN, ..EngineConfig::default() };
        assert!(cfg.validate().is_err());
    }
}
