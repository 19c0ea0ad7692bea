//! Evolution states in the two transform domains.
//!
//! Both states describe the same object, the absolute D-density of a bit-channel,
//! in the coordinate system that makes the next transform a product of positions:
//!
//! * [`CheckState`]: interior atoms `(alpha_i, z_i)`; the check transform multiplies
//!   independent `z` coordinates.
//! * [`VarState`]: interior atoms `(beta_i, w_i)` with
//!   `w = (1 - z) / (1 + z)` and `beta = alpha (1 + z) / 2`; the variable transform
//!   multiplies `w` coordinates (plus ratio terms, see [`CrossState`]).
//!
//! The boundary masses are domain-invariant and always refer to the `z` coordinate:
//! `mass_at_z_zero` is the uninformative mass (at `z = 0`, equivalently `w = 1`) and
//! `mass_at_z_one` the fully revealing mass (at `z = 1`, equivalently `w = 0`).
//!
//! The conversion maps are strictly order-reversing in the interior, so converting
//! iterates the sorted atom list backwards and needs no re-sort. Total mass satisfies
//!
//! ```text
//! check:    mass_at_z_zero + mass_at_z_one + sum_i alpha_i            = 1
//! variable: mass_at_z_zero + mass_at_z_one + sum_i beta_i (1 + w_i)   = 1
//! ```
//!
//! because `beta (1 + w) = alpha` pointwise. The Bhattacharyya parameter reads
//! `B = mass_at_z_zero + sum_i alpha_i sqrt(1 - z_i^2)` in the check domain and
//! `B = mass_at_z_zero + 2 sum_i beta_i sqrt(w_i)` in the variable domain; the two
//! agree exactly since `alpha sqrt(1 - z^2) = 2 beta sqrt(w)`.

use polar_density::{AbsDDensity, Atom, NeumaierSum, Scalar};

/// Density atoms in the check domain, plus the two boundary masses.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckState<T> {
    pub(crate) mass_at_z_zero: T,
    pub(crate) mass_at_z_one: T,
    /// Interior atoms `(alpha, z)`, `z` strictly ascending in `(0, 1)`.
    pub(crate) atoms: Vec<Atom<T>>,
}

/// Density atoms in the variable domain, plus the two boundary masses.
#[derive(Debug, Clone, PartialEq)]
pub struct VarState<T> {
    pub(crate) mass_at_z_zero: T,
    pub(crate) mass_at_z_one: T,
    /// Interior atoms `(beta, w)`, `w` strictly ascending in `(0, 1)`.
    pub(crate) atoms: Vec<Atom<T>>,
}

/// The correlation summary consumed by the variable update.
///
/// From a variable state with atoms `(beta_i, w_i)`:
///
/// * `diag` is `sum_i beta_i^2 w_i` (the diagonal ratio terms `w_i / w_i = 1`, which
///   land on the `z = 0` boundary),
/// * `psi1` holds one atom `(beta_i beta_j w_j, w_i / w_j)` per unordered pair with
///   `w_i < w_j`, merged on coincident ratios.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossState<T> {
    pub(crate) diag: T,
    pub(crate) psi1: Vec<Atom<T>>,
}

/// A state in whichever domain the last step left it.
#[derive(Debug, Clone, PartialEq)]
pub enum EngineState<T> {
    /// Check-domain residency.
    Check(CheckState<T>),
    /// Variable-domain residency.
    Var(VarState<T>),
}

impl<T: Scalar> CheckState<T> {
    /// Builds the initial state of a raw channel density. The density's interior is
    /// already canonical, so this is a copy of its three parts.
    pub fn from_density(d: &AbsDDensity<T>) -> Self {
        CheckState {
            mass_at_z_zero: d.mass_at_zero().clone(),
            mass_at_z_one: d.mass_at_one().clone(),
            atoms: d.interior().to_vec(),
        }
    }

    /// Assembles a state from raw parts without canonicalization checks beyond
    /// debug assertions. Positions must be strictly ascending in `(0, 1)`.
    pub fn from_parts(mass_at_z_zero: T, mass_at_z_one: T, atoms: Vec<Atom<T>>) -> Self {
        let s = CheckState { mass_at_z_zero, mass_at_z_one, atoms };
        debug_assert!(s.is_canonical(), "non-canonical check state");
        s
    }

    /// Mass at `z = 0`.
    pub fn mass_at_z_zero(&self) -> &T {
        &self.mass_at_z_zero
    }

    /// Mass at `z = 1`.
    pub fn mass_at_z_one(&self) -> &T {
        &self.mass_at_z_one
    }

    /// Interior atoms `(alpha, z)`.
    pub fn atoms(&self) -> &[Atom<T>] {
        &self.atoms
    }

    /// Total mass in backend arithmetic: boundaries plus `sum alpha_i`.
    pub fn total_mass(&self) -> T {
        let mut t = self.mass_at_z_zero.clone() + self.mass_at_z_one.clone();
        for a in &self.atoms {
            t = t + a.mass.clone();
        }
        t
    }

    /// `B = mass_at_z_zero + sum_i alpha_i sqrt(1 - z_i^2)`, compensated in `f64`.
    pub fn bhattacharyya(&self) -> f64 {
        let mut sum = NeumaierSum::new();
        sum.add(self.mass_at_z_zero.to_f64());
        for a in &self.atoms {
            let weight = (T::one() - a.position.clone()) * (T::one() + a.position.clone());
            sum.add(a.mass.to_f64() * weight.to_f64().max(0.0).sqrt());
        }
        sum.value()
    }

    /// Converts to the variable domain: `w = (1 - z) / (1 + z)`,
    /// `beta = alpha (1 + z) / 2`. The map is order-reversing, so the atom list is
    /// consumed back to front and stays sorted.
    ///
    /// In floats the map is not injective near the ends of the interval: a `z`
    /// below about `1e-16` rounds to `w = 1` exactly, and nearby positions can
    /// round to the same `w`. Atoms that land exactly on a boundary move onto it
    /// (with their full check-domain mass, since `beta (1 + w) = alpha` there),
    /// and atoms that collide merge, so the result is always canonical.
    pub fn into_var(self) -> VarState<T> {
        let mut mass_at_z_zero = self.mass_at_z_zero;
        let mut mass_at_z_one = self.mass_at_z_one;
        let mut atoms: Vec<Atom<T>> = Vec::with_capacity(self.atoms.len());
        for a in self.atoms.into_iter().rev() {
            let one_plus = T::one() + a.position.clone();
            let w = (T::one() - a.position) / one_plus.clone();
            if w == T::one() {
                mass_at_z_zero = mass_at_z_zero + a.mass;
                continue;
            }
            if w.is_zero() {
                mass_at_z_one = mass_at_z_one + a.mass;
                continue;
            }
            let beta = a.mass * one_plus / T::from_ratio(2, 1);
            match atoms.last_mut() {
                Some(last) if last.position == w => last.mass = last.mass.clone() + beta,
                _ => atoms.push(Atom::new(w, beta)),
            }
        }
        VarState { mass_at_z_zero, mass_at_z_one, atoms }
    }

    /// Structural sanity: sorted strictly interior positions, nonnegative masses.
    pub fn is_canonical(&self) -> bool {
        is_canonical_parts(&self.mass_at_z_zero, &self.mass_at_z_one, &self.atoms)
    }
}

impl<T: Scalar> VarState<T> {
    /// Assembles a state from raw parts; debug-asserted canonical.
    pub fn from_parts(mass_at_z_zero: T, mass_at_z_one: T, atoms: Vec<Atom<T>>) -> Self {
        let s = VarState { mass_at_z_zero, mass_at_z_one, atoms };
        debug_assert!(s.is_canonical(), "non-canonical variable state");
        s
    }

    /// Mass at `z = 0` (`w = 1`).
    pub fn mass_at_z_zero(&self) -> &T {
        &self.mass_at_z_zero
    }

    /// Mass at `z = 1` (`w = 0`).
    pub fn mass_at_z_one(&self) -> &T {
        &self.mass_at_z_one
    }

    /// Interior atoms `(beta, w)`.
    pub fn atoms(&self) -> &[Atom<T>] {
        &self.atoms
    }

    /// Total mass in backend arithmetic: boundaries plus `sum beta_i (1 + w_i)`.
    pub fn total_mass(&self) -> T {
        let mut t = self.mass_at_z_zero.clone() + self.mass_at_z_one.clone();
        for a in &self.atoms {
            t = t + a.mass.clone() * (T::one() + a.position.clone());
        }
        t
    }

    /// `B = mass_at_z_zero + 2 sum_i beta_i sqrt(w_i)`, compensated in `f64`.
    pub fn bhattacharyya(&self) -> f64 {
        let mut sum = NeumaierSum::new();
        sum.add(self.mass_at_z_zero.to_f64());
        for a in &self.atoms {
            sum.add(2.0 * a.mass.to_f64() * a.position.to_f64().max(0.0).sqrt());
        }
        sum.value()
    }

    /// Converts to the check domain: first `z = (1 - w) / (1 + w)`, then
    /// `alpha = 2 beta / (1 + z)`. Order-reversing, consumed back to front.
    ///
    /// The same boundary handling as [`CheckState::into_var`] applies in the
    /// opposite direction: a `w` within one rounding step of 1 gives `z = 0`
    /// exactly, whose check-domain mass is `beta (1 + w) = 2 beta`; colliding
    /// positions merge, so the result is always canonical.
    pub fn into_check(self) -> CheckState<T> {
        let mut mass_at_z_zero = self.mass_at_z_zero;
        let mut mass_at_z_one = self.mass_at_z_one;
        let mut atoms: Vec<Atom<T>> = Vec::with_capacity(self.atoms.len());
        for a in self.atoms.into_iter().rev() {
            let z = (T::one() - a.position.clone()) / (T::one() + a.position);
            if z.is_zero() {
                mass_at_z_zero = mass_at_z_zero + a.mass.clone() + a.mass;
                continue;
            }
            if z == T::one() {
                mass_at_z_one = mass_at_z_one + a.mass;
                continue;
            }
            let alpha = (a.mass.clone() + a.mass) / (T::one() + z.clone());
            match atoms.last_mut() {
                Some(last) if last.position == z => last.mass = last.mass.clone() + alpha,
                _ => atoms.push(Atom::new(z, alpha)),
            }
        }
        CheckState { mass_at_z_zero, mass_at_z_one, atoms }
    }

    /// Structural sanity: sorted strictly interior positions, nonnegative masses.
    pub fn is_canonical(&self) -> bool {
        is_canonical_parts(&self.mass_at_z_zero, &self.mass_at_z_one, &self.atoms)
    }
}

impl<T: Scalar> CrossState<T> {
    /// The diagonal correlation mass `sum_i beta_i^2 w_i`.
    pub fn diag(&self) -> &T {
        &self.diag
    }

    /// The off-diagonal ratio atoms.
    pub fn psi1(&self) -> &[Atom<T>] {
        &self.psi1
    }
}

impl<T: Scalar> EngineState<T> {
    /// Starts evolution from a channel density (check-domain residency).
    pub fn new(d: &AbsDDensity<T>) -> Self {
        EngineState::Check(CheckState::from_density(d))
    }

    /// Moves to the check domain if not already there.
    pub fn into_check(self) -> CheckState<T> {
        match self {
            EngineState::Check(s) => s,
            EngineState::Var(s) => s.into_check(),
        }
    }

    /// Moves to the variable domain if not already there.
    pub fn into_var(self) -> VarState<T> {
        match self {
            EngineState::Check(s) => s.into_var(),
            EngineState::Var(s) => s,
        }
    }

    /// Bhattacharyya parameter in whichever domain the state resides; the two
    /// formulas agree exactly, so no conversion is performed.
    pub fn bhattacharyya(&self) -> f64 {
        match self {
            EngineState::Check(s) => s.bhattacharyya(),
            EngineState::Var(s) => s.bhattacharyya(),
        }
    }

    /// Number of interior atoms.
    pub fn interior_len(&self) -> usize {
        match self {
            EngineState::Check(s) => s.atoms.len(),
            EngineState::Var(s) => s.atoms.len(),
        }
    }

    /// Total mass in backend arithmetic.
    pub fn total_mass(&self) -> T {
        match self {
            EngineState::Check(s) => s.total_mass(),
            EngineState::Var(s) => s.total_mass(),
        }
    }
}

fn is_canonical_parts<T: Scalar>(zero: &T, one: &T, atoms: &[Atom<T>]) -> bool {
    if *zero < T::zero() || *one < T::zero() {
        return false;
    }
    let mut prev: Option<&T> = None;
    for a in atoms {
        if a.mass < T::zero() || a.position <= T::zero() || a.position >= T::one() {
            return false;
        }
        if let Some(p) = prev {
            if *p >= a.position {
                return false;
            }
        }
        prev = Some(&a.position);
    }
    true
}
