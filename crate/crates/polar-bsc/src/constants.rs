//! Symbol table for a binary symmetric channel with crossover probability `p`.
//!
//! Every closed form in this crate is written in terms of five families of
//! constants, all determined by `p` and its complement `p̄ = 1 - p`:
//!
//! ```text
//! C    = p p̄                 (in (0, 1/4) for p in (0, 1/2))
//! Δ    = ln(p / p̄)           (negative log-likelihood step)
//! M(i) = (1 - 2p)^i           (powers of the channel gap)
//! S(i) = p̄^i + p^i
//! D(i) = p̄^i - p^i
//! ```
//!
//! [`BscConstants`] memoizes `M`, `S`, and `D` up to a fixed depth chosen at
//! construction, so formula transcriptions read like the algebra they come from
//! (`k.s(2)`, `k.d(4)`, ...) and repeated lookups cost one table read. The tables
//! are per-instance; there is no global state.
//!
//! The families satisfy exact algebraic recurrences, verified in the tests on the
//! rational backend:
//!
//! ```text
//! S(i)^2 - D(i)^2     = 4 C^i
//! S(i)S(j) - D(i)D(j) = 2 C^i S(j - i)   (j > i)
//! S(i)S(j) + D(i)D(j) = 2 S(i + j)
//! D(2) = M(1),   2 S(2) = 1 + M(2),   4 C = 1 - M(2)
//! ```
//!
//! # Example
//!
//! ```
//! use polar_bsc::BscConstants;
//!
//! let k = BscConstants::new(0.1_f64);
//! assert!((k.c() - 0.09).abs() < 1e-15);
//! assert!((k.s(2) - 0.82).abs() < 1e-15);
//! // S(2)^2 - D(2)^2 = 4 C^2.
//! assert!((k.s(2) * k.s(2) - k.d(2) * k.d(2) - 4.0 * k.c() * k.c()).abs() < 1e-14);
//! ```

use polar_density::Scalar;

/// Default memoization depth: the largest symbol index the level-4 closed forms
/// and the recurrence checks need, with headroom.
pub const DEFAULT_SYMBOL_DEPTH: usize = 64;

/// Memoized `C`, `M(i)`, `S(i)`, `D(i)` tables for one crossover probability.
///
/// Generic over the scalar backend: `f64` for closed-form evaluation, exact
/// rationals for recurrence and cross-module equality checks.
#[derive(Debug, Clone)]
pub struct BscConstants<T> {
    p: T,
    pbar: T,
    c: T,
    m_pows: Vec<T>,
    s_vals: Vec<T>,
    d_vals: Vec<T>,
}

impl<T: Scalar> BscConstants<T> {
    /// Builds the table for crossover probability `p` with the default depth.
    ///
    /// # Panics
    ///
    /// If `p` is not strictly inside `(0, 1/2)`.
    pub fn new(p: T) -> Self {
        Self::with_depth(p, DEFAULT_SYMBOL_DEPTH)
    }

    /// Builds the table with symbol indices memoized up to `depth` inclusive.
    ///
    /// # Panics
    ///
    /// If `p` is not strictly inside `(0, 1/2)` or `depth` is zero.
    pub fn with_depth(p: T, depth: usize) -> Self {
        assert!(
            T::zero() < p && p < T::from_ratio(1, 2),
            "crossover probability must lie strictly inside (0, 1/2), got {p}"
        );
        assert!(depth > 0, "symbol depth must be positive");
        let pbar = T::one() - p.clone();
        let c = p.clone() * pbar.clone();
        let gap = pbar.clone() - p.clone();

        let mut m_pows = Vec::with_capacity(depth + 1);
        let mut s_vals = Vec::with_capacity(depth + 1);
        let mut d_vals = Vec::with_capacity(depth + 1);
        let mut m = T::one();
        let mut ppow = T::one();
        let mut bpow = T::one();
        for _ in 0..=depth {
            m_pows.push(m.clone());
            s_vals.push(bpow.clone() + ppow.clone());
            d_vals.push(bpow.clone() - ppow.clone());
            m = m * gap.clone();
            ppow = ppow * p.clone();
            bpow = bpow * pbar.clone();
        }
        BscConstants { p, pbar, c, m_pows, s_vals, d_vals }
    }

    /// Crossover probability `p`.
    pub fn p(&self) -> T {
        self.p.clone()
    }

    /// Complement `p̄ = 1 - p`.
    pub fn pbar(&self) -> T {
        self.pbar.clone()
    }

    /// `C = p p̄`, always in `(0, 1/4)`.
    pub fn c(&self) -> T {
        self.c.clone()
    }

    /// `C̄ = 1 - C`.
    pub fn cbar(&self) -> T {
        T::one() - self.c.clone()
    }

    /// `Δ = ln(p / p̄)`, the log-likelihood step of the channel; negative for
    /// `p < 1/2`. Evaluated in `f64` for both backends.
    pub fn delta(&self) -> f64 {
        (self.p.to_f64() / self.pbar.to_f64()).ln()
    }

    /// Largest memoized symbol index.
    pub fn depth(&self) -> usize {
        self.m_pows.len() - 1
    }

    /// `M(i) = (1 - 2p)^i`.
    ///
    /// # Panics
    ///
    /// If `i` is zero or exceeds [`BscConstants::depth`].
    pub fn m(&self, i: usize) -> T {
        assert!(i >= 1 && i <= self.depth(), "symbol index {i} out of range 1..={}", self.depth());
        self.m_pows[i].clone()
    }

    /// `S(i) = p̄^i + p^i`.
    ///
    /// # Panics
    ///
    /// If `i` is zero or exceeds [`BscConstants::depth`].
    pub fn s(&self, i: usize) -> T {
        assert!(i >= 1 && i <= self.depth(), "symbol index {i} out of range 1..={}", self.depth());
        self.s_vals[i].clone()
    }

    /// `D(i) = p̄^i - p^i`, always positive for `p < 1/2`.
    ///
    /// # Panics
    ///
    /// If `i` is zero or exceeds [`BscConstants::depth`].
    pub fn d(&self, i: usize) -> T {
        assert!(i >= 1 && i <= self.depth(), "symbol index {i} out of range 1..={}", self.depth());
        self.d_vals[i].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(num: i64, den: i64) -> BigRational {
        <BigRational as Scalar>::from_ratio(num, den)
    }

    #[test]
    fn float_table_matches_direct_powers() {
        let k = BscConstants::new(0.1_f64);
        assert_eq!(k.p(), 0.1);
        assert_eq!(k.pbar(), 0.9);
        assert_eq!(k.c(), 0.09000000000000001);
        assert_eq!(k.cbar(), 1.0 - 0.09000000000000001);
        // The table is built by sequential multiplication, `powi` by repeated
        // squaring; the two round differently by a few ulps.
        for i in 1..=16 {
            assert!((k.m(i) - 0.8_f64.powi(i as i32)).abs() < 1e-14, "M({i})");
            assert!((k.s(i) - (0.9_f64.powi(i as i32) + 0.1_f64.powi(i as i32))).abs() < 1e-14, "S({i})");
            assert!((k.d(i) - (0.9_f64.powi(i as i32) - 0.1_f64.powi(i as i32))).abs() < 1e-14, "D({i})");
        }
    }

    #[test]
    fn delta_is_the_negative_log_likelihood_step() {
        let k = BscConstants::new(0.1_f64);
        assert!(k.delta() < 0.0);
        assert!((k.delta() - (0.1_f64 / 0.9).ln()).abs() < 1e-15);
        let kr = BscConstants::new(r(1, 10));
        assert!((kr.delta() - k.delta()).abs() < 1e-15);
    }

    #[test]
    fn recurrences_hold_exactly_on_the_rational_backend() {
        for (num, den) in [(1i64, 10i64), (3, 10), (1, 4), (9, 20)] {
            let k = BscConstants::with_depth(r(num, den), 64);
            let four_c = r(4, 1) * k.c();
            let two = r(2, 1);

            // S(i)^2 - D(i)^2 = 4 C^i.
            let mut c_pow = k.c();
            for i in 1..=32usize {
                let lhs = k.s(i) * k.s(i) - k.d(i) * k.d(i);
                let rhs = r(4, 1) * c_pow.clone();
                assert_eq!(lhs, rhs, "S^2 - D^2 at i = {i}, p = {num}/{den}");
                c_pow = c_pow * k.c();
            }

            // Cross products collapse to shifted symbols.
            for i in 1..=31usize {
                let mut ci = k.c();
                for _ in 1..i {
                    ci = ci * k.c();
                }
                for j in (i + 1)..=32usize {
                    let minus = k.s(i) * k.s(j) - k.d(i) * k.d(j);
                    let plus = k.s(i) * k.s(j) + k.d(i) * k.d(j);
                    assert_eq!(minus, two.clone() * ci.clone() * k.s(j - i), "minus at ({i},{j})");
                    assert_eq!(plus, two.clone() * k.s(i + j), "plus at ({i},{j})");
                }
            }

            // Low-order aliases.
            assert_eq!(k.d(2), k.m(1));
            assert_eq!(two.clone() * k.s(2), r(1, 1) + k.m(2));
            assert_eq!(four_c, r(1, 1) - k.m(2));
        }
    }

    #[test]
    #[should_panic(expected = "strictly inside")]
    fn rejects_p_at_one_half() {
        let _ = BscConstants::new(0.5_f64);
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn rejects_symbol_index_beyond_depth() {
        let k = BscConstants::with_depth(0.1_f64, 8);
        let _ = k.m(9);
    }
}
