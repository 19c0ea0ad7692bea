//! Taylor coefficients of the two domain-conversion identities.
//!
//! Both transforms of the evolution engine are products in their own coordinate,
//! and the bridge between the coordinates is a pair of binomial identities on the
//! unit interval:
//!
//! ```text
//! (1/2) (1 - z)^s (1 + z)^(1-s)  =  sum_t  a_t(s)/2  z^t        (variable side)
//! ((1 - w)/(1 + w))^nu           =  sum_t  b_t(nu)   w^t        (check side)
//! ```
//!
//! with
//!
//! ```text
//! a_t(s)  = sum_{k=0..t} (-1)^k     C(s, k)     C(1-s, t-k)
//! b_t(nu) = sum_{k=0..t} (-1)^(t-k) C(nu, t-k)  C(-nu, k)
//! ```
//!
//! where `C(x, k)` is the generalized binomial coefficient. The normalized
//! coefficients exposed as [`coeff_a`] and [`coeff_g`] are
//! `A(s,t) = (-1)^t t! a_t(s) / 2` and `G(nu,t) = (-1)^t t! b_t(nu)`; both are
//! entire in the order parameter. The partial-sum evaluators [`expand_var_identity`]
//! and [`expand_check_identity`] exist to verify the coefficients against the closed
//! forms; they sum `a_t/2 z^t` and `b_t w^t` directly and never materialize the
//! factorial.
//!
//! Numerical notes: the factorial in `A` and `G` overflows `f64` for `t > 170`, so
//! those values come back infinite; the unnormalized sums remain finite for any `t`
//! (the coefficients `a_t`, `b_t` decay like `t^(-3/2)`). The partial sums converge
//! absolutely for arguments inside the unit interval; the tail after `T` terms is of
//! order `x^T T^(-3/2)`, so high accuracy near `x = 0.9` needs a few hundred terms.
//!
//! # Examples
//!
//! ```
//! use polar_series::{expand_var_identity, ComplexScalar};
//!
//! // s = 1/2 turns the variable-side identity into (1/2) sqrt(1 - z^2).
//! let s = ComplexScalar::new(0.5, 0.0);
//! let sum = expand_var_identity(0.8, s, 120);
//! assert!((sum.re - 0.3).abs() < 1e-8);
//! assert!(sum.im.abs() < 1e-12);
//! ```

/// Complex evaluation point or coefficient (order parameters `s`, `nu`, and the
/// critical-line points `tau = 1/2 + iu` all live here).
pub type ComplexScalar = num_complex::Complex64;

/// Generalized binomial coefficients `C(x, k)` for `k = 0..=t_max`, built
/// incrementally via `C(x, k+1) = C(x, k) (x - k) / (k + 1)`.
fn binomial_seq(x: ComplexScalar, t_max: usize) -> Vec<ComplexScalar> {
    let mut out = Vec::with_capacity(t_max + 1);
    let mut c = ComplexScalar::new(1.0, 0.0);
    out.push(c);
    for k in 0..t_max {
        c = c * (x - k as f64) / (k as f64 + 1.0);
        out.push(c);
    }
    out
}

/// `a_t(s)` for `t = 0..=t_max`.
fn a_seq(s: ComplexScalar, t_max: usize) -> Vec<ComplexScalar> {
    let cs = binomial_seq(s, t_max);
    let c1s = binomial_seq(1.0 - s, t_max);
    (0..=t_max)
        .map(|t| {
            let mut acc = ComplexScalar::new(0.0, 0.0);
            let mut sign = 1.0;
            for k in 0..=t {
                acc += sign * cs[k] * c1s[t - k];
                sign = -sign;
            }
            acc
        })
        .collect()
}

/// `b_t(nu)` for `t = 0..=t_max`.
fn b_seq(nu: ComplexScalar, t_max: usize) -> Vec<ComplexScalar> {
    let cn = binomial_seq(nu, t_max);
    let cm = binomial_seq(-nu, t_max);
    (0..=t_max)
        .map(|t| {
            let mut acc = ComplexScalar::new(0.0, 0.0);
            // (-1)^(t-k) for k = 0 is (-1)^t.
            let mut sign = if t % 2 == 0 { 1.0 } else { -1.0 };
            for k in 0..=t {
                acc += sign * cn[t - k] * cm[k];
                sign = -sign;
            }
            acc
        })
        .collect()
}

fn factorial(t: usize) -> f64 {
    (1..=t).fold(1.0f64, |acc, i| acc * i as f64)
}

/// The variable-side coefficient `A(s, t) = (-1)^t t! a_t(s) / 2`.
///
/// `A(s, 0) = 1/2` and `A(s, 1) = (2s - 1)/2` for every `s`. The factorial
/// overflows `f64` for `t > 170`, making the result infinite; use the partial-sum
/// evaluators for large-order work.
pub fn coeff_a(s: ComplexScalar, t: usize) -> ComplexScalar {
    let a_t = a_seq(s, t)[t];
    let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
    sign * factorial(t) * a_t / 2.0
}

/// The check-side coefficient `G(nu, t) = (-1)^t t! b_t(nu)`.
///
/// `G(nu, 0) = 1` and `G(nu, 1) = 2 nu` for every `nu`. Same factorial overflow
/// caveat as [`coeff_a`].
pub fn coeff_g(nu: ComplexScalar, t: usize) -> ComplexScalar {
    let b_t = b_seq(nu, t)[t];
    let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
    sign * factorial(t) * b_t
}

/// Partial sum `sum_{t=0..=terms} a_t(s)/2 z^t`, which converges to
/// `(1/2) (1 - z)^s (1 + z)^(1-s)` for `z` in `(0, 1)`.
pub fn expand_var_identity(z: f64, s: ComplexScalar, terms: usize) -> ComplexScalar {
    assert!((0.0..1.0).contains(&z), "z must lie in [0, 1), got {z}");
    let coeffs = a_seq(s, terms);
    let mut acc = ComplexScalar::new(0.0, 0.0);
    let mut zt = 1.0f64;
    for a_t in coeffs {
        acc += a_t * (zt / 2.0);
        zt *= z;
    }
    acc
}

/// Partial sum `sum_{t=0..=terms} b_t(nu) w^t`, which converges to
/// `((1 - w)/(1 + w))^nu` for `w` in `(0, 1)`.
pub fn expand_check_identity(w: f64, nu: ComplexScalar, terms: usize) -> ComplexScalar {
    assert!((0.0..1.0).contains(&w), "w must lie in [0, 1), got {w}");
    let coeffs = b_seq(nu, terms);
    let mut acc = ComplexScalar::new(0.0, 0.0);
    let mut wt = 1.0f64;
    for b_t in coeffs {
        acc += b_t * wt;
        wt *= w;
    }
    acc
}
