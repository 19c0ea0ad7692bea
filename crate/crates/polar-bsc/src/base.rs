//! Closed-form check states for variable towers over a BSC and their check folds.
//!
//! Applying `q` consecutive variable (plus) steps to a BSC with crossover
//! probability `p` yields a channel whose |D|-density has a known finite form.
//! With `Q = 2^(q-1)` and `r_i = 2Q - 2i`, the check-domain state is
//!
//! ```text
//! interior atoms:  mass (2Q choose i) C^i S(r_i)   at position D(r_i) / S(r_i),
//!                  for i = 0 .. Q-1
//! mass at z = 0:   (2Q choose Q) C^Q
//! mass at z = 1:   0
//! ```
//!
//! which sums to exactly 1 by the binomial theorem. For `q = 2`, `p = 0.1` this is
//! two atoms `(mass 4 C S(2) = 0.2952 at D(2)/S(2) = 0.8/0.82)` and
//! `(mass S(4) = 0.6562 at D(4)/S(4) = 0.656/0.6562)` with `6 C^2 = 0.0486` at zero.
//! Its Bhattacharyya parameter collapses to `(4C)^Q`.
//!
//! Following the tower with `ell` check (minus) steps keeps a closed form: with
//! `L = 2^ell`, each of the `(L+Q-1 choose Q-1)` compositions `j = (j_0..j_{Q-1})`
//! of `L` into `Q` nonnegative parts contributes one atom
//!
//! ```text
//! mass:      L! / (j_0! ... j_{Q-1}!) * prod_i [ (2Q choose i) C^i S(r_i) ]^{j_i}
//! position:  prod_i [ D(r_i) / S(r_i) ]^{j_i}
//! ```
//!
//! while the zero-boundary mass folds as `a -> 2a - a^2` per check step.
//! [`ql_enumerate_check_state`] materializes that state directly; it agrees
//! atom for atom with `ell` applications of the evolution engine's check update
//! to the tower base, which the integration tests verify exactly on the rational
//! backend.
//!
//! Masses are accumulated one unit of `L` at a time, interleaving each
//! multinomial ratio with one factor of a base mass. Every intermediate product
//! is then itself the mass of a valid atom of a smaller fold, so the walk never
//! leaves `[0, L]` and cannot overflow the float backend even near the
//! composition cap.
//!
//! # Example
//!
//! ```
//! use polar_bsc::{q_base_bhatt, q_base_check_state};
//!
//! let state = q_base_check_state(0.1_f64, 2).unwrap();
//! assert_eq!(state.atoms().len(), 2);
//! assert!((state.mass_at_z_zero() - 0.0486).abs() < 1e-15);
//! assert!((state.bhattacharyya() - q_base_bhatt(0.1, 2).unwrap()).abs() < 1e-12);
//! ```

use num_bigint::BigInt;
use polar_ce::CheckState;
use polar_density::{merge_atoms, route_boundaries, Atom, Scalar};

use crate::constants::BscConstants;
use crate::error::{BscError, Result};

/// Smallest supported variable-tower order.
pub const MIN_TOWER_ORDER: u32 = 2;

/// Largest supported variable-tower order; `Q = 2^(q-1)` parts beyond this make
/// the composition space explode.
pub const MAX_TOWER_ORDER: u32 = 6;

/// Largest supported check-fold depth `ell` (so `L = 2^ell <= 4096`).
pub const MAX_FOLD_DEPTH: u32 = 12;

/// Cap on the number of enumerated composition atoms.
pub const COMPOSITION_CAP: u64 = 1_000_000;

/// Exact binomial coefficient for `n <= 64`, so the result fits an `i64`.
fn small_binomial(n: u64, k: u64) -> i64 {
    debug_assert!(n <= 64 && k <= n);
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 1..=k {
        acc = acc * (n - k + t) as u128 / t as u128;
    }
    acc as i64
}

/// Exact binomial coefficient without size limits, for budget checks.
fn big_binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::from(1u32);
    for t in 1..=k {
        acc = acc * BigInt::from(n - k + t) / BigInt::from(t);
    }
    acc
}

fn check_order(q: u32) -> Result<()> {
    if !(MIN_TOWER_ORDER..=MAX_TOWER_ORDER).contains(&q) {
        return Err(BscError::OrderOutOfRange { q, min: MIN_TOWER_ORDER, max: MAX_TOWER_ORDER });
    }
    Ok(())
}

/// Per-part mass and position of the tower-base state, index `i = 0..Q-1`.
fn base_parts<T: Scalar>(k: &BscConstants<T>, big_q: usize) -> (Vec<T>, Vec<T>) {
    let mut masses = Vec::with_capacity(big_q);
    let mut positions = Vec::with_capacity(big_q);
    let mut c_pow = T::one();
    for i in 0..big_q {
        let r = 2 * big_q - 2 * i;
        let binom = T::from_ratio(small_binomial(2 * big_q as u64, i as u64), 1);
        masses.push(binom * c_pow.clone() * k.s(r));
        positions.push(k.d(r) / k.s(r));
        c_pow = c_pow * k.c();
    }
    (masses, positions)
}

/// Check-domain state of a BSC after `q` consecutive variable steps.
///
/// Interior atoms are `(2Q choose i) C^i S(r_i)` at `D(r_i)/S(r_i)` for
/// `i = 0..Q-1` with `Q = 2^(q-1)`, `r_i = 2Q - 2i`; the mass at `z = 0` is
/// `(2Q choose Q) C^Q` and the state sums to exactly 1.
///
/// # Errors
///
/// [`BscError::OrderOutOfRange`] when `q` is outside
/// [`MIN_TOWER_ORDER`]`..=`[`MAX_TOWER_ORDER`].
///
/// # Panics
///
/// If `p` is not strictly inside `(0, 1/2)`.
pub fn q_base_check_state<T: Scalar>(p: T, q: u32) -> Result<CheckState<T>> {
    check_order(q)?;
    let big_q = 1usize << (q - 1);
    let k = BscConstants::with_depth(p, 2 * big_q);
    let (masses, positions) = base_parts(&k, big_q);

    let atoms = masses
        .into_iter()
        .zip(positions)
        .map(|(mass, position)| Atom::new(position, mass))
        .collect();
    let merged = merge_atoms(atoms, 0.0)?;
    let routed = route_boundaries(merged, 0.0);

    let mut at_zero = T::from_ratio(small_binomial(2 * big_q as u64, big_q as u64), 1);
    for _ in 0..big_q {
        at_zero = at_zero * k.c();
    }
    Ok(CheckState::from_parts(at_zero + routed.to_zero, routed.to_one, routed.interior))
}

/// Bhattacharyya parameter of a BSC after `q` consecutive variable steps:
/// `2^(2Q) C^Q = (4C)^Q` with `Q = 2^(q-1)`.
///
/// # Errors
///
/// [`BscError::OrderOutOfRange`] when `q` is outside
/// [`MIN_TOWER_ORDER`]`..=`[`MAX_TOWER_ORDER`].
///
/// # Panics
///
/// If `p` is not strictly inside `(0, 1/2)`.
pub fn q_base_bhatt(p: f64, q: u32) -> Result<f64> {
    check_order(q)?;
    assert!(p > 0.0 && p < 0.5, "crossover probability must lie strictly inside (0, 1/2), got {p}");
    let big_q = 1i32 << (q - 1);
    Ok((4.0 * p * (1.0 - p)).powi(big_q))
}

/// Check-domain state of a BSC after `q` variable steps followed by `ell` check
/// steps, materialized directly from the composition expansion.
///
/// Enumerates all `(L+Q-1 choose Q-1)` compositions of `L = 2^ell` into
/// `Q = 2^(q-1)` nonnegative parts; each contributes one atom as described in the
/// module docs. Coincident positions are merged, and the zero-boundary mass is
/// `(2Q choose Q) C^Q` folded `ell` times through `a -> 2a - a^2`. The result
/// equals `ell` applications of the engine's check update to
/// [`q_base_check_state`] (exactly so on the rational backend).
///
/// # Errors
///
/// * [`BscError::OrderOutOfRange`] when `q` is outside the supported range.
/// * [`BscError::DepthOutOfRange`] when `ell >` [`MAX_FOLD_DEPTH`].
/// * [`BscError::AtomBudget`] when the composition count exceeds
///   [`COMPOSITION_CAP`]; the error reports the exact required count.
///
/// # Panics
///
/// If `p` is not strictly inside `(0, 1/2)`.
pub fn ql_enumerate_check_state<T: Scalar>(p: T, q: u32, ell: u32) -> Result<CheckState<T>> {
    check_order(q)?;
    if ell > MAX_FOLD_DEPTH {
        return Err(BscError::DepthOutOfRange { ell, max: MAX_FOLD_DEPTH });
    }
    let big_q = 1usize << (q - 1);
    let big_l = 1u64 << ell;

    let count = big_binomial(big_l + big_q as u64 - 1, big_q as u64 - 1);
    if count > BigInt::from(COMPOSITION_CAP) {
        return Err(BscError::AtomBudget { required: count, cap: COMPOSITION_CAP });
    }

    let k = BscConstants::with_depth(p, 2 * big_q);
    let (base_mass, base_pos) = base_parts(&k, big_q);

    let mut atoms = Vec::with_capacity(count.try_into().unwrap_or(0usize));
    walk_compositions(
        0,
        big_l,
        0,
        T::one(),
        T::one(),
        &base_mass,
        &base_pos,
        &mut atoms,
    );
    let merged = merge_atoms(atoms, 0.0)?;
    let routed = route_boundaries(merged, 0.0);

    let mut at_zero = T::from_ratio(small_binomial(2 * big_q as u64, big_q as u64), 1);
    for _ in 0..big_q {
        at_zero = at_zero * k.c();
    }
    for _ in 0..ell {
        at_zero = (at_zero.clone() + at_zero.clone()) - at_zero.clone() * at_zero;
    }
    Ok(CheckState::from_parts(at_zero + routed.to_zero, routed.to_one, routed.interior))
}

/// Depth-first walk over compositions of `rem` units into parts `part..`.
///
/// `mass` carries the multinomial weight of the units placed so far times the
/// matching base-mass powers; `placed` counts those units. One unit at a time,
/// the walk multiplies in a base mass together with one multinomial ratio
/// `placed / t`, keeping every intermediate product inside `[0, placed]`.
#[allow(clippy::too_many_arguments)]
fn walk_compositions<T: Scalar>(
    part: usize,
    rem: u64,
    placed: u64,
    mass: T,
    pos: T,
    base_mass: &[T],
    base_pos: &[T],
    out: &mut Vec<Atom<T>>,
) {
    if part + 1 == base_mass.len() {
        let mut mass = mass;
        let mut pos = pos;
        let mut placed = placed;
        for t in 1..=rem {
            placed += 1;
            mass = mass * base_mass[part].clone() * T::from_ratio(placed as i64, t as i64);
            pos = pos * base_pos[part].clone();
        }
        out.push(Atom::new(pos, mass));
        return;
    }
    walk_compositions(part + 1, rem, placed, mass.clone(), pos.clone(), base_mass, base_pos, out);
    let mut mass = mass;
    let mut pos = pos;
    let mut placed = placed;
    for t in 1..=rem {
        placed += 1;
        mass = mass * base_mass[part].clone() * T::from_ratio(placed as i64, t as i64);
        pos = pos * base_pos[part].clone();
        walk_compositions(
            part + 1,
            rem - t,
            placed,
            mass.clone(),
            pos.clone(),
            base_mass,
            base_pos,
            out,
        );
    }
}
