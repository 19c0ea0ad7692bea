//! Point masses and the coincidence-merging pass.
//!
//! Every density operation in this workspace produces candidate atom lists whose
//! positions may collide (exactly in rational arithmetic, approximately in floats).
//! [`merge_atoms`] canonicalizes such a list: sort by position, fuse runs of
//! coincident positions into single atoms at the mass-weighted mean position, drop
//! zero masses. Total mass is preserved exactly because masses are only ever added.

use crate::error::{DensityError, Result};
use crate::scalar::{Backend, Scalar};

/// A point mass: `mass` concentrated at `position`.
///
/// Interior atoms of a density keep `position` strictly inside `(0, 1)` and
/// `mass > 0`; the merging pass below enforces neither range (it is also used on raw
/// product grids) but does drop exact zero masses.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom<T> {
    /// Coordinate of the point mass.
    pub position: T,
    /// Probability mass carried, nonnegative.
    pub mass: T,
}

impl<T: Scalar> Atom<T> {
    /// Convenience constructor.
    pub fn new(position: T, mass: T) -> Self {
        Atom { position, mass }
    }
}

/// Sorts atoms by position and fuses coincident positions.
///
/// Two adjacent positions coincide when [`Scalar::close`] accepts them against the
/// running mass-weighted mean of the open cluster: exact equality for the rational
/// backend, relative distance at most `tol` for floats. The fused atom sits at the
/// mass-weighted mean of its cluster and carries the exact mass sum.
///
/// `tol` must be nonnegative, and must be exactly `0.0` for the rational backend
/// (rational positions either match or they do not; a nonzero tolerance would
/// silently change exact results and is rejected as a usage error).
///
/// # Errors
///
/// [`DensityError::InvalidTolerance`] for a negative or non-finite `tol`, or a
/// nonzero `tol` with the rational backend. [`DensityError::NonFinite`] if a float
/// position or mass is NaN or infinite.
pub fn merge_atoms<T: Scalar>(atoms: Vec<Atom<T>>, tol: f64) -> Result<Vec<Atom<T>>> {
    if !tol.is_finite() || tol < 0.0 {
        return Err(DensityError::InvalidTolerance { tol });
    }
    if T::BACKEND == Backend::Rational && tol != 0.0 {
        return Err(DensityError::InvalidTolerance { tol });
    }
    let mut atoms: Vec<Atom<T>> = atoms.into_iter().filter(|a| !a.mass.is_zero()).collect();
    for a in &atoms {
        if !a.position.to_f64().is_finite() || !a.mass.to_f64().is_finite() {
            return Err(DensityError::NonFinite);
        }
    }
    // Positions are finite, so partial_cmp is total here.
    atoms.sort_by(|a, b| a.position.partial_cmp(&b.position).expect("finite positions"));

    let mut merged: Vec<Atom<T>> = Vec::with_capacity(atoms.len());
    // Open cluster: accumulated mass, mass-weighted position sum, current mean.
    let mut cluster: Option<(T, T, T)> = None;
    for atom in atoms {
        match cluster.take() {
            None => {
                let weighted = atom.position.clone() * atom.mass.clone();
                cluster = Some((atom.mass, weighted, atom.position));
            }
            Some((mass, weighted, mean)) => {
                if atom.position == mean {
                    // Fast path: identical positions leave the mean untouched.
                    let weighted = weighted + mean.clone() * atom.mass.clone();
                    cluster = Some((mass + atom.mass, weighted, mean));
                } else if T::close(&atom.position, &mean, tol) {
                    let mass = mass + atom.mass.clone();
                    let weighted = weighted + atom.position * atom.mass;
                    let mean = weighted.clone() / mass.clone();
                    cluster = Some((mass, weighted, mean));
                } else {
                    merged.push(Atom::new(mean, mass));
                    let weighted = atom.position.clone() * atom.mass.clone();
                    cluster = Some((atom.mass, weighted, atom.position));
                }
            }
        }
    }
    if let Some((mass, _, mean)) = cluster {
        merged.push(Atom::new(mean, mass));
    }
    Ok(merged)
}
