//! The moment series for the Bhattacharyya parameter of check-only evolutions.
//!
//! For a unit-mass check-domain state with no mass at `z = 1`, expanding
//! `sqrt(1 - z^2)` as `1 - sum_k beta_k z^(2k)` gives
//!
//! ```text
//! B  =  1 - sum_{k >= 1} beta_k m(k),        m(k) = sum_i alpha_i z_i^(2k),
//! ```
//!
//! with `beta_k = (2k - 3)!! / (2^k k!)` (and `(-1)!! = 1`), because the boundary
//! mass at `z = 0` contributes `1` to both sides and drops out. The coefficients are
//! positive and sum to one, so truncating after `K` terms overestimates `B` by at
//! most `(sum_{k > K} beta_k) * m(1)^L`, the moments being nonincreasing in `k`.
//!
//! Applying `l` further check steps to a state raises each moment to the power
//! `L = 2^l` exactly (the check transform multiplies independent coordinates), which
//! is what [`ba_series`] exploits: one moment table of the base state serves every
//! `L`, and the truncation bound stays explicit. The exact tail is
//! `sum_{k > K} beta_k = C(2K, K) / 4^K`, exposed as [`beta_tail`].

use num_bigint::BigInt;
use num_rational::BigRational;
use polar_ce::CheckState;
use polar_density::{NeumaierSum, Scalar};

use crate::error::{Result, SeriesError};

/// Largest index accepted by [`beta_kappa`].
pub const DEFAULT_KAPPA_CAP: u64 = 10_000;

/// The exact series coefficient `beta_k = (2k - 3)!! / (2^k k!)`.
///
/// The first few values are `1/2, 1/8, 1/16, 5/128, 7/256, 21/1024`. Indices above
/// [`DEFAULT_KAPPA_CAP`] are rejected to keep the big-integer work bounded.
pub fn beta_kappa(kappa: u64) -> Result<BigRational> {
    assert!(kappa >= 1, "kappa must be at least 1");
    if kappa > DEFAULT_KAPPA_CAP {
        return Err(SeriesError::KappaOutOfRange { kappa, cap: DEFAULT_KAPPA_CAP });
    }
    // (2k - 3)!! = product of odd numbers 1, 3, ..., 2k - 3; empty for k = 1.
    let mut numer = BigInt::from(1u32);
    for i in 1..kappa {
        numer *= BigInt::from(2 * i - 1);
    }
    let mut denom = BigInt::from(1u32) << kappa;
    for i in 2..=kappa {
        denom *= BigInt::from(i);
    }
    Ok(BigRational::new(numer, denom))
}

/// The exact tail `sum_{k > K} beta_k = C(2K, K) / 4^K`, evaluated in `f64` as the
/// product `prod_{i=1..K} (2i - 1) / (2i)` (each factor is below one, so there is no
/// overflow at any `K`). Decays like `1 / sqrt(pi K)`.
pub fn beta_tail(terms: u64) -> f64 {
    let mut tail = 1.0f64;
    for i in 1..=terms {
        tail *= (2 * i - 1) as f64 / (2 * i) as f64;
    }
    tail
}

/// Even moments `m(k) = sum_i alpha_i z_i^(2k)` of a check-domain state's interior.
///
/// Construction requires the mass at `z = 1` to be zero; a revealing boundary atom
/// would contribute `1` to every moment and break the series form. The moments are
/// automatically nonincreasing in `k` and lie in `[0, 1)`.
#[derive(Debug, Clone)]
pub struct MomentProvider {
    masses: Vec<f64>,
    z_squared: Vec<f64>,
}

impl MomentProvider {
    /// Extracts the interior atoms of `state` in `f64`.
    pub fn from_check_state<T: Scalar>(state: &CheckState<T>) -> Result<Self> {
        if !state.mass_at_z_one().is_zero() {
            return Err(SeriesError::UnsupportedState {
                reason: "the mass at z = 1 must be zero for the moment series".into(),
            });
        }
        let masses = state.atoms().iter().map(|a| a.mass.to_f64()).collect();
        let z_squared = state
            .atoms()
            .iter()
            .map(|a| {
                let z = a.position.to_f64();
                z * z
            })
            .collect();
        Ok(MomentProvider { masses, z_squared })
    }

    /// The moment `m(kappa)`, computed directly.
    pub fn moment(&self, kappa: u32) -> f64 {
        assert!(kappa >= 1, "moments start at kappa = 1");
        let mut sum = NeumaierSum::new();
        for (m, zsq) in self.masses.iter().zip(&self.z_squared) {
            sum.add(m * zsq.powi(kappa as i32));
        }
        sum.value()
    }

    /// Iterator over `m(1), m(2), ...` with incremental power updates, which is how
    /// [`ba_series`] consumes the table in `O(atoms)` per term.
    pub fn moments(&self) -> Moments<'_> {
        Moments { provider: self, powers: vec![1.0; self.masses.len()] }
    }

    /// Number of interior atoms backing the moments.
    pub fn atom_count(&self) -> usize {
        self.masses.len()
    }
}

/// Iterator over successive even moments of a [`MomentProvider`].
#[derive(Debug)]
pub struct Moments<'a> {
    provider: &'a MomentProvider,
    powers: Vec<f64>,
}

impl Iterator for Moments<'_> {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let mut sum = NeumaierSum::new();
        for ((p, zsq), m) in self
            .powers
            .iter_mut()
            .zip(&self.provider.z_squared)
            .zip(&self.provider.masses)
        {
            *p *= zsq;
            sum.add(m * *p);
        }
        Some(sum.value())
    }
}

/// A truncated moment-series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaSeries {
    /// `1 - sum_{k <= K} beta_k m(k)^L`: an upper bound on the exact parameter,
    /// nonincreasing in the number of terms.
    pub value: f64,
    /// `(sum_{k > K} beta_k) m(1)^L`: how far above the exact parameter the value
    /// can be.
    pub truncation_bound: f64,
}

/// Evaluates the truncated series for the state whose moments are `moments`, after
/// `l` further check steps with `pow = 2^l`.
///
/// The returned value overestimates the exact Bhattacharyya parameter by at most
/// `truncation_bound` and decreases monotonically as `terms` grows. The coefficient
/// recurrence `beta_{k+1} = beta_k (2k - 1) / (2k + 2)` runs in `f64`; its relative
/// drift stays below `1e-12` for the term counts this crate uses (cross-checked
/// against the exact rationals in the tests).
pub fn ba_series(moments: &MomentProvider, pow: u64, terms: u64) -> BaSeries {
    assert!(pow >= 1 && pow.is_power_of_two(), "pow must be a power of two, got {pow}");
    assert!(terms >= 1, "at least one series term is required");
    assert!(pow <= i32::MAX as u64, "power exponent out of range");

    let mut stream = moments.moments();
    let mut sum = NeumaierSum::new();
    let mut beta = 0.5f64;
    let mut tail = 1.0f64;
    let mut first_moment_pow = 0.0f64;
    for kappa in 1..=terms {
        let m = stream.next().expect("moment stream is infinite");
        let m_pow = m.powi(pow as i32);
        if kappa == 1 {
            first_moment_pow = m_pow;
        }
        sum.add(beta * m_pow);
        tail *= (2 * kappa - 1) as f64 / (2 * kappa) as f64;
        beta *= (2 * kappa - 1) as f64 / (2 * kappa + 2) as f64;
    }
    BaSeries { value: 1.0 - sum.value(), truncation_bound: tail * first_moment_pow }
}

#[cfg(test)]
mod tests {
    use super::*;
    use polar_density::Atom;

    fn rational(n: i64, d: i64) -> BigRational {
        <BigRational as Scalar>::from_ratio(n, d)
    }

    #[test]
    fn first_coefficients_are_exact() {
        let want = [(1, 2), (1, 8), (1, 16), (5, 128), (7, 256), (21, 1024)];
        for (k, (n, d)) in want.iter().enumerate() {
            let beta = beta_kappa(k as u64 + 1).unwrap();
            assert_eq!(beta, rational(*n, *d), "kappa = {}", k + 1);
        }
    }

    #[test]
    fn partial_sums_plus_exact_tail_equal_one() {
        // sum_{k <= K} beta_k + C(2K, K)/4^K = 1, exactly, for every K.
        for terms in [1u64, 2, 5, 17, 50] {
            let mut sum = rational(0, 1);
            for k in 1..=terms {
                sum += beta_kappa(k).unwrap();
            }
            let mut binom = rational(1, 1);
            for i in 1..=terms {
                binom *= rational(2 * i as i64 - 1, 2 * i as i64);
            }
            assert_eq!(sum + binom, rational(1, 1), "K = {terms}");
        }
    }

    #[test]
    fn f64_recurrence_tracks_the_exact_coefficients() {
        let mut beta = 0.5f64;
        for kappa in 1..=2000u64 {
            if kappa <= 300 {
                let exact = beta_kappa(kappa).unwrap().to_f64();
                assert!(
                    (beta - exact).abs() <= 1e-12 * exact,
                    "kappa = {kappa}: {beta} vs {exact}"
                );
            }
            beta *= (2 * kappa - 1) as f64 / (2 * kappa + 2) as f64;
            assert!(beta > 0.0);
        }
    }

    #[test]
    fn tail_matches_the_exact_rational() {
        for terms in [1u64, 10, 100] {
            let mut exact = rational(1, 1);
            for i in 1..=terms {
                exact *= rational(2 * i as i64 - 1, 2 * i as i64);
            }
            let got = beta_tail(terms);
            let want = exact.to_f64();
            assert!((got - want).abs() < 1e-15 * want.max(1e-300), "K = {terms}");
        }
    }

    #[test]
    fn kappa_bounds_are_enforced() {
        assert!(beta_kappa(DEFAULT_KAPPA_CAP).is_ok());
        assert!(matches!(
            beta_kappa(DEFAULT_KAPPA_CAP + 1),
            Err(SeriesError::KappaOutOfRange { .. })
        ));
    }

    #[test]
    fn moments_require_an_empty_revealing_boundary() {
        let state = CheckState::from_parts(0.0, 0.5, vec![Atom::new(0.5, 0.5)]);
        assert!(matches!(
            MomentProvider::from_check_state(&state),
            Err(SeriesError::UnsupportedState { .. })
        ));
    }

    #[test]
    fn moment_stream_matches_direct_evaluation() {
        let state = CheckState::from_parts(
            0.1,
            0.0,
            vec![Atom::new(0.3, 0.4), Atom::new(0.8, 0.5)],
        );
        let provider = MomentProvider::from_check_state(&state).unwrap();
        let stream: Vec<f64> = provider.moments().take(6).collect();
        for (i, &m) in stream.iter().enumerate() {
            let direct = provider.moment(i as u32 + 1);
            assert!((m - direct).abs() < 1e-15, "kappa = {}", i + 1);
            if i > 0 {
                assert!(m <= stream[i - 1], "moments must not increase");
            }
        }
        // m(1) = 0.4 * 0.09 + 0.5 * 0.64
        assert!((stream[0] - (0.4 * 0.09 + 0.5 * 0.64)).abs() < 1e-15);
    }

    #[test]
    fn empty_interior_gives_value_one() {
        // A channel with all mass at z = 0 has every moment zero, so the series
        // value is exactly 1 at any truncation, matching B = 1.
        let state = CheckState::<f64>::from_parts(1.0, 0.0, vec![]);
        let provider = MomentProvider::from_check_state(&state).unwrap();
        let out = ba_series(&provider, 1, 5);
        assert_eq!(out.value, 1.0);
        assert_eq!(out.truncation_bound, 0.0);
    }

    #[test]
    fn series_value_converges_to_the_closed_form_from_above() {
        // One atom: B = a0 + m sqrt(1 - z^2) with a0 = 1 - m.
        let (mass, z) = (0.7, 0.6);
        let state = CheckState::from_parts(0.3, 0.0, vec![Atom::new(z, mass)]);
        let provider = MomentProvider::from_check_state(&state).unwrap();
        let exact = 0.3 + mass * (1.0f64 - z * z).sqrt();
        let mut previous = f64::INFINITY;
        for terms in [1u64, 2, 5, 10, 40, 120] {
            let out = ba_series(&provider, 1, terms);
            assert!(out.value >= exact - 1e-12, "terms = {terms}");
            assert!(out.value - exact <= out.truncation_bound + 1e-15, "terms = {terms}");
            assert!(out.value <= previous + 1e-15, "terms = {terms}");
            previous = out.value;
        }
        let out = ba_series(&provider, 1, 120);
        assert!((out.value - exact).abs() < 1e-10);
    }

    #[test]
    fn powers_act_on_the_moments() {
        // Squaring the coordinate of a one-atom state is the same as doubling the
        // moment power: both describe one extra check step.
        let state = CheckState::from_parts(0.3, 0.0, vec![Atom::new(0.6, 0.7)]);
        let provider = MomentProvider::from_check_state(&state).unwrap();
        let via_pow = ba_series(&provider, 2, 200);
        // After a check step the state is (0.49 at 0.36) interior, with the rest of
        // the mass on z = 0 (2 * 0.3 * 0.7 cross terms plus 0.09 + 0.21... in total
        // 1 - 0.49), but the interior moment is just 0.49 * 0.36^(2k).
        let stepped = CheckState::from_parts(0.51, 0.0, vec![Atom::new(0.36, 0.49)]);
        let direct = ba_series(&MomentProvider::from_check_state(&stepped).unwrap(), 1, 200);
        assert!((via_pow.value - direct.value).abs() < 1e-14);
    }
}
