//! The absolute D-density of a binary-input symmetric channel.

use crate::atom::{merge_atoms, Atom};
use crate::error::{DensityError, Result};
use crate::scalar::{Backend, Scalar};
use crate::sum::NeumaierSum;
use crate::{ChannelSpec, CHANNEL_ROW_TOL, MASS_TOL};

/// Finitely supported distribution of `|z| = |W(y|0) - W(y|1)| / (W(y|0) + W(y|1))`.
///
/// Masses at the two degenerate coordinates are tracked separately:
/// `mass_at_zero` sits at `z = 0` (outputs carrying no information) and
/// `mass_at_one` at `z = 1` (outputs revealing the input). Interior atoms have
/// positions strictly inside `(0, 1)`, sorted strictly ascending, each with positive
/// mass. The three parts sum to one.
///
/// The Bhattacharyya parameter of the underlying channel is the expectation of
/// `sqrt(1 - z^2)` under this distribution:
///
/// ```text
/// B = mass_at_zero * 1 + sum_i mass_i * sqrt(1 - z_i^2) + mass_at_one * 0
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct AbsDDensity<T> {
    mass_at_zero: T,
    mass_at_one: T,
    interior: Vec<Atom<T>>,
}

impl<T: Scalar> AbsDDensity<T> {
    /// Builds a density from its parts, merging and validating.
    ///
    /// Interior atoms are canonicalized with [`merge_atoms`] under `tol`; positions
    /// must lie strictly inside `(0, 1)` after merging (boundary mass belongs in the
    /// explicit boundary arguments). Total mass must be 1: exactly for the rational
    /// backend, within [`MASS_TOL`] for floats.
    pub fn from_parts(mass_at_zero: T, mass_at_one: T, interior: Vec<Atom<T>>, tol: f64) -> Result<Self> {
        let interior = merge_atoms(interior, tol)?;
        let d = AbsDDensity { mass_at_zero, mass_at_one, interior };
        d.validate()?;
        Ok(d)
    }

    /// Builds a density that is already canonical (sorted, merged, in range).
    ///
    /// Used by transform pipelines whose outputs are canonical by construction.
    /// Debug builds still validate.
    pub fn from_canonical_parts(mass_at_zero: T, mass_at_one: T, interior: Vec<Atom<T>>) -> Self {
        let d = AbsDDensity { mass_at_zero, mass_at_one, interior };
        debug_assert!(d.validate().is_ok(), "non-canonical density: {:?}", d.validate());
        d
    }

    /// The density of a binary symmetric channel with crossover `p`, `0 <= p <= 1/2`:
    /// a single atom of mass 1 at `z = 1 - 2p` (which lands on a boundary for the
    /// degenerate crossovers 0 and 1/2).
    pub fn bsc(p: f64) -> Result<Self> {
        Self::bsc_scalar(T::from_f64(p))
    }

    /// [`AbsDDensity::bsc`] with an exact scalar crossover.
    pub fn bsc_scalar(p: T) -> Result<Self> {
        let half = T::from_ratio(1, 2);
        if !(T::zero()..=half.clone()).contains(&p) {
            return Err(DensityError::channel(format!(
                "BSC crossover {p} outside [0, 1/2]"
            )));
        }
        let z = T::one() - (p.clone() + p);
        if z.is_zero() {
            Ok(AbsDDensity { mass_at_zero: T::one(), mass_at_one: T::zero(), interior: vec![] })
        } else if z == T::one() {
            Ok(AbsDDensity { mass_at_zero: T::zero(), mass_at_one: T::one(), interior: vec![] })
        } else {
            Ok(AbsDDensity {
                mass_at_zero: T::zero(),
                mass_at_one: T::zero(),
                interior: vec![Atom::new(z, T::one())],
            })
        }
    }

    /// The density of a binary erasure channel with erasure probability `eps`,
    /// `0 <= eps <= 1`: mass `eps` at `z = 0`, mass `1 - eps` at `z = 1`, no interior.
    pub fn bec(eps: f64) -> Result<Self> {
        Self::bec_scalar(T::from_f64(eps))
    }

    /// [`AbsDDensity::bec`] with an exact scalar erasure probability.
    pub fn bec_scalar(eps: T) -> Result<Self> {
        if !(T::zero()..=T::one()).contains(&eps) {
            return Err(DensityError::channel(format!(
                "BEC erasure probability {eps} outside [0, 1]"
            )));
        }
        let keep = T::one() - eps.clone();
        Ok(AbsDDensity { mass_at_zero: eps, mass_at_one: keep, interior: vec![] })
    }

    /// Builds the density of an explicit symmetric channel.
    ///
    /// `row0[y] = W(y|first input)`, `row1[y] = W(y|second input)`, and `perm` is the
    /// output involution realizing the symmetry `row0[y] = row1[perm[y]]`. Each output
    /// contributes mass `row0[y]` at `|z_y| = |row0[y] - row1[y]| / (row0[y] + row1[y])`;
    /// equal positions merge under `tol`, and positions within `tol` of a boundary are
    /// routed onto it (exactly 0 or 1 only, for the rational backend).
    pub fn from_channel(row0: &[T], row1: &[T], perm: &[usize], tol: f64) -> Result<Self> {
        validate_channel(row0, row1, perm)?;
        let mut mass_at_zero = T::zero();
        let mut mass_at_one = T::zero();
        let mut atoms = Vec::with_capacity(row0.len());
        for (a, b) in row0.iter().zip(row1) {
            let total = a.clone() + b.clone();
            if total.is_zero() {
                continue; // output never occurs
            }
            let diff = if a >= b { a.clone() - b.clone() } else { b.clone() - a.clone() };
            atoms.push(Atom::new(diff / total, a.clone()));
        }
        let routed = route_boundaries(atoms, tol);
        mass_at_zero = mass_at_zero + routed.to_zero;
        mass_at_one = mass_at_one + routed.to_one;
        Self::from_parts(mass_at_zero, mass_at_one, routed.interior, tol)
    }

    /// Builds the density described by a [`ChannelSpec`].
    ///
    /// Float parameters in the spec convert through [`Scalar::from_f64`], so the
    /// rational backend sees the exact dyadic value of each float.
    pub fn from_spec(spec: &ChannelSpec, tol: f64) -> Result<Self> {
        spec.validate()?;
        match spec {
            ChannelSpec::Bsc { p } => Self::bsc(*p),
            ChannelSpec::Bec { eps } => Self::bec(*eps),
            ChannelSpec::General { rows, perm } => {
                let row0: Vec<T> = rows[0].iter().map(|&x| T::from_f64(x)).collect();
                let row1: Vec<T> = rows[1].iter().map(|&x| T::from_f64(x)).collect();
                Self::from_channel(&row0, &row1, perm, tol)
            }
        }
    }

    /// Mass at `z = 0`.
    pub fn mass_at_zero(&self) -> &T {
        &self.mass_at_zero
    }

    /// Mass at `z = 1`.
    pub fn mass_at_one(&self) -> &T {
        &self.mass_at_one
    }

    /// Interior atoms, sorted strictly ascending by position in `(0, 1)`.
    pub fn interior(&self) -> &[Atom<T>] {
        &self.interior
    }

    /// The arithmetic backend of this density.
    pub fn backend(&self) -> Backend {
        T::BACKEND
    }

    /// Total mass across boundaries and interior, in backend arithmetic.
    pub fn total_mass(&self) -> T {
        let mut total = self.mass_at_zero.clone() + self.mass_at_one.clone();
        for a in &self.interior {
            total = total + a.mass.clone();
        }
        total
    }

    /// The Bhattacharyya parameter `E[sqrt(1 - z^2)]`.
    ///
    /// The weight `(1 - z)(1 + z)` is formed in backend arithmetic before the final
    /// `f64` square root; the sum is compensated.
    pub fn bhattacharyya(&self) -> f64 {
        let mut sum = NeumaierSum::new();
        sum.add(self.mass_at_zero.to_f64());
        for a in &self.interior {
            let weight = (T::one() - a.position.clone()) * (T::one() + a.position.clone());
            sum.add(a.mass.to_f64() * weight.to_f64().max(0.0).sqrt());
        }
        sum.value()
    }

    /// Full structural validation; [`AbsDDensity::from_parts`] runs this.
    pub fn validate(&self) -> Result<()> {
        for m in [&self.mass_at_zero, &self.mass_at_one] {
            if *m < T::zero() {
                return Err(DensityError::NegativeMass { mass: m.to_f64() });
            }
            if !m.to_f64().is_finite() {
                return Err(DensityError::NonFinite);
            }
        }
        let mut prev: Option<&T> = None;
        for a in &self.interior {
            if a.mass < T::zero() {
                return Err(DensityError::NegativeMass { mass: a.mass.to_f64() });
            }
            if !a.mass.to_f64().is_finite() || !a.position.to_f64().is_finite() {
                return Err(DensityError::NonFinite);
            }
            if a.position <= T::zero() || a.position >= T::one() {
                return Err(DensityError::PositionOutOfRange { position: a.position.to_f64() });
            }
            if let Some(p) = prev {
                if *p >= a.position {
                    return Err(DensityError::PositionOutOfRange { position: a.position.to_f64() });
                }
            }
            prev = Some(&a.position);
        }
        let total = self.total_mass();
        let conserved = match T::BACKEND {
            Backend::Rational => total == T::one(),
            Backend::Float => (total.to_f64() - 1.0).abs() <= MASS_TOL,
        };
        if !conserved {
            return Err(DensityError::MassNotConserved { total: total.to_f64() });
        }
        Ok(())
    }
}

/// Result of [`route_boundaries`]: mass swept onto each boundary plus the surviving
/// interior atoms.
pub struct RoutedAtoms<T> {
    /// Mass from positions at (or within tolerance of) 0.
    pub to_zero: T,
    /// Mass from positions at (or within tolerance of) 1.
    pub to_one: T,
    /// Remaining strictly interior atoms, order preserved.
    pub interior: Vec<Atom<T>>,
}

/// Sweeps atoms lying on (or, for floats, within `tol` of) a boundary onto it.
///
/// The rational backend routes exact 0 and 1 only. The float backend additionally
/// routes positions within absolute `tol` of either boundary, and always routes
/// positions that have underflowed to exactly `0.0` or rounded to exactly `1.0`
/// regardless of `tol`: such values carry no usable interior information.
pub fn route_boundaries<T: Scalar>(atoms: Vec<Atom<T>>, tol: f64) -> RoutedAtoms<T> {
    let mut to_zero = T::zero();
    let mut to_one = T::zero();
    let mut interior = Vec::with_capacity(atoms.len());
    for a in atoms {
        let on_zero = match T::BACKEND {
            Backend::Rational => a.position.is_zero(),
            Backend::Float => a.position.to_f64() <= tol,
        };
        let on_one = match T::BACKEND {
            Backend::Rational => a.position == T::one(),
            Backend::Float => a.position.to_f64() >= 1.0 - tol,
        };
        if on_zero {
            to_zero = to_zero + a.mass;
        } else if on_one {
            to_one = to_one + a.mass;
        } else {
            interior.push(a);
        }
    }
    RoutedAtoms { to_zero, to_one, interior }
}

fn validate_channel<T: Scalar>(row0: &[T], row1: &[T], perm: &[usize]) -> Result<()> {
    let n = row0.len();
    if n == 0 {
        return Err(DensityError::channel("empty output alphabet"));
    }
    if row1.len() != n || perm.len() != n {
        return Err(DensityError::channel(format!(
            "shape mismatch: {} vs {} outputs, permutation of length {}",
            n,
            row1.len(),
            perm.len()
        )));
    }
    for row in [row0, row1] {
        let mut total = T::zero();
        for x in row {
            if *x < T::zero() || !x.to_f64().is_finite() {
                return Err(DensityError::channel("transition probabilities must be finite and nonnegative"));
            }
            total = total + x.clone();
        }
        let ok = match T::BACKEND {
            Backend::Rational => total == T::one(),
            Backend::Float => (total.to_f64() - 1.0).abs() <= CHANNEL_ROW_TOL,
        };
        if !ok {
            return Err(DensityError::channel(format!(
                "transition row sums to {}, expected 1",
                total.to_f64()
            )));
        }
    }
    for (y, &py) in perm.iter().enumerate() {
        if py >= n {
            return Err(DensityError::channel(format!("permutation entry {py} out of range")));
        }
        if perm[py] != y {
            return Err(DensityError::channel("output permutation is not an involution"));
        }
        let sym = match T::BACKEND {
            Backend::Rational => row0[y] == row1[py],
            Backend::Float => (row0[y].to_f64() - row1[py].to_f64()).abs() <= CHANNEL_ROW_TOL,
        };
        if !sym {
            return Err(DensityError::channel(format!(
                "channel is not symmetric under the permutation at output {y}"
            )));
        }
    }
    Ok(())
}
