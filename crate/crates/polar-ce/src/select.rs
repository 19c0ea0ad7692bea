//! Information-set selection from a table of bit-channel Bhattacharyya parameters.
//!
//! Given the `N = 2^k` values `z_1, ..., z_N` in index order, a criterion picks the
//! set of indices to carry information:
//!
//! * [`SelectionCriterion::Threshold`]`(gamma)` keeps every index with `z < gamma`
//!   (strictly below, so `gamma = 0` selects nothing),
//! * [`SelectionCriterion::Rate`]`(r)` keeps the `floor(r * N)` indices with the
//!   smallest `z`, breaking ties in favor of the smaller index.
//!
//! Indices are 1-based and returned in ascending order.
//!
//! # Examples
//!
//! For the erasure channel with erasure probability one half at level 2 the four
//! parameters are `0.9375, 0.5625, 0.4375, 0.0625`:
//!
//! ```
//! use polar_ce::{select_info_set, SelectionCriterion};
//!
//! let zs = [0.9375, 0.5625, 0.4375, 0.0625];
//! let picked = select_info_set(&zs, SelectionCriterion::Threshold(0.5)).unwrap();
//! assert_eq!(picked, vec![3, 4]);
//! let picked = select_info_set(&zs, SelectionCriterion::Rate(0.25)).unwrap();
//! assert_eq!(picked, vec![4]);
//! ```

use crate::error::{CeError, Result};

/// How to choose the information set from a vector of Bhattacharyya parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SelectionCriterion {
    /// Keep every index whose parameter is strictly below the threshold.
    Threshold(f64),
    /// Keep the `floor(rate * N)` indices with the smallest parameters,
    /// preferring smaller indices on ties. The rate must lie in `[0, 1]`.
    Rate(f64),
}

/// Selects the information set, as ascending 1-based indices into `zs`.
pub fn select_info_set(zs: &[f64], criterion: SelectionCriterion) -> Result<Vec<usize>> {
    if let Some(bad) = zs.iter().find(|z| !z.is_finite()) {
        return Err(CeError::InvalidCriterion {
            reason: format!("parameter table contains a non-finite value {bad}"),
        });
    }
    match criterion {
        SelectionCriterion::Threshold(gamma) => {
            if !gamma.is_finite() {
                return Err(CeError::InvalidCriterion {
                    reason: format!("threshold must be finite, got {gamma}"),
                });
            }
            Ok(zs
                .iter()
                .enumerate()
                .filter(|(_, &z)| z < gamma)
                .map(|(i, _)| i + 1)
                .collect())
        }
        SelectionCriterion::Rate(rate) => {
            if !(0.0..=1.0).contains(&rate) {
                return Err(CeError::InvalidCriterion {
                    reason: format!("rate must lie in [0, 1], got {rate}"),
                });
            }
            let k = (rate * zs.len() as f64).floor() as usize;
            let mut order: Vec<usize> = (0..zs.len()).collect();
            order.sort_by(|&a, &b| zs[a].partial_cmp(&zs[b]).unwrap().then(a.cmp(&b)));
            let mut picked: Vec<usize> = order[..k].iter().map(|&i| i + 1).collect();
            picked.sort_unstable();
            Ok(picked)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BEC_HALF_LEVEL2: [f64; 4] = [0.9375, 0.5625, 0.4375, 0.0625];

    #[test]
    fn threshold_is_strict() {
        let picked = select_info_set(&BEC_HALF_LEVEL2, SelectionCriterion::Threshold(0.5)).unwrap();
        assert_eq!(picked, vec![3, 4]);
        let picked =
            select_info_set(&BEC_HALF_LEVEL2, SelectionCriterion::Threshold(0.4375)).unwrap();
        assert_eq!(picked, vec![4], "equality does not select");
        let picked = select_info_set(&BEC_HALF_LEVEL2, SelectionCriterion::Threshold(0.0)).unwrap();
        assert!(picked.is_empty());
    }

    #[test]
    fn rate_picks_the_smallest_with_floor() {
        let picked = select_info_set(&BEC_HALF_LEVEL2, SelectionCriterion::Rate(0.25)).unwrap();
        assert_eq!(picked, vec![4]);
        let picked = select_info_set(&BEC_HALF_LEVEL2, SelectionCriterion::Rate(0.5)).unwrap();
        assert_eq!(picked, vec![3, 4]);
        let picked = select_info_set(&BEC_HALF_LEVEL2, SelectionCriterion::Rate(1.0)).unwrap();
        assert_eq!(picked, vec![1, 2, 3, 4]);
        let picked = select_info_set(&BEC_HALF_LEVEL2, SelectionCriterion::Rate(0.0)).unwrap();
        assert!(picked.is_empty());
        // floor(0.4 * 4) = 1
        let picked = select_info_set(&BEC_HALF_LEVEL2, SelectionCriterion::Rate(0.4)).unwrap();
        assert_eq!(picked, vec![4]);
    }

    #[test]
    fn ties_prefer_the_smaller_index() {
        let zs = [0.5, 0.5, 0.5, 0.5];
        let picked = select_info_set(&zs, SelectionCriterion::Rate(0.5)).unwrap();
        assert_eq!(picked, vec![1, 2]);
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        let zs = [0.1, 0.2];
        assert!(select_info_set(&zs, SelectionCriterion::Rate(1.5)).is_err());
        assert!(select_info_set(&zs, SelectionCriterion::Rate(-0.1)).is_err());
        assert!(select_info_set(&zs, SelectionCriterion::Rate(f64::NAN)).is_err());
        assert!(select_info_set(&zs, SelectionCriterion::Threshold(f64::INFINITY)).is_err());
        assert!(select_info_set(&[0.1, f64::NAN], SelectionCriterion::Threshold(0.5)).is_err());
    }

    #[test]
    fn results_are_ascending_and_one_based() {
        let zs = [0.9, 0.1, 0.8, 0.2];
        let picked = select_info_set(&zs, SelectionCriterion::Rate(0.75)).unwrap();
        assert_eq!(picked, vec![2, 3, 4]);
        let picked = select_info_set(&zs, SelectionCriterion::Threshold(0.85)).unwrap();
        assert_eq!(picked, vec![2, 3, 4]);
    }
}
