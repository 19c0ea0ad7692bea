//! Arithmetic backends for density computations.
//!
//! Every density operation is generic over a [`Scalar`]: a field-like type with exact
//! construction from small rationals and a lossy view into `f64`. Two implementations
//! are provided:
//!
//! * `f64`: fast hardware floats. Positions and masses accumulate rounding error, so
//!   comparisons use relative tolerances.
//! * [`BigRational`]: exact arbitrary-precision rationals. All operations performed by
//!   this crate are rational-closed (no square roots are taken in `T`), so results are
//!   exact and tolerances are ignored.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Identifies the arithmetic backend behind a [`Scalar`] type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Hardware `f64` arithmetic.
    Float,
    /// Exact `BigRational` arithmetic.
    Rational,
}

impl Backend {
    /// Stable lowercase name, used in reports and table metadata.
    pub fn name(self) -> &'static str {
        match self {
            Backend::Float => "float",
            Backend::Rational => "rational",
        }
    }
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Field-like scalar used for positions and masses.
///
/// Implementors must be totally ordered on the values this crate produces (finite,
/// mostly in `[0, 1]`); `f64` NaNs are rejected at construction boundaries.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + std::fmt::Debug
    + std::fmt::Display
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Which backend this scalar belongs to.
    const BACKEND: Backend;

    /// Additive identity.
    fn zero() -> Self;

    /// Multiplicative identity.
    fn one() -> Self;

    /// Converts from `f64`. For the rational backend this is the exact dyadic value of
    /// the float, not the decimal the float was parsed from; use [`Scalar::from_decimal_str`]
    /// when the decimal itself is meant.
    fn from_f64(x: f64) -> Self;

    /// Exact small ratio `num / den`. Panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Exact conversion from a big integer.
    fn from_bigint(n: &BigInt) -> Self;

    /// Parses a plain decimal literal (`"0.1"`, `"-3"`, `"2.5e-3"`) exactly.
    ///
    /// The rational backend gets the true decimal value (`1/10`), the float backend the
    /// nearest `f64`. Returns `None` for malformed input.
    fn from_decimal_str(s: &str) -> Option<Self>;

    /// Nearest `f64`. Exact for the float backend; correctly scaled (never NaN on
    /// finite rationals, underflowing to zero where `f64` must) for rationals.
    fn to_f64(&self) -> f64;

    /// Whether this is exactly zero.
    fn is_zero(&self) -> bool;

    /// Whether `a` and `b` should be treated as the same coordinate under `rel_tol`.
    ///
    /// Float: `|a - b| <= rel_tol * max(|a|, |b|)`. Rational: exact equality, the
    /// tolerance is ignored.
    fn close(a: &Self, b: &Self, rel_tol: f64) -> bool;
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn from_bigint(n: &BigInt) -> Self {
        big_to_f64(n)
    }

    fn from_decimal_str(s: &str) -> Option<Self> {
        let x: f64 = s.parse().ok()?;
        x.is_finite().then_some(x)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn close(a: &Self, b: &Self, rel_tol: f64) -> bool {
        if a == b {
            return true;
        }
        (a - b).abs() <= rel_tol * a.abs().max(b.abs())
    }
}

impl Scalar for BigRational {
    const BACKEND: Backend = Backend::Rational;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite float {x} cannot become a rational");
        BigRational::from_float(x).expect("finite float converts exactly")
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn from_decimal_str(s: &str) -> Option<Self> {
        parse_decimal_rational(s)
    }

    fn to_f64(&self) -> f64 {
        big_ratio_to_f64(self)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn close(a: &Self, b: &Self, _rel_tol: f64) -> bool {
        a == b
    }
}

/// `BigInt` to nearest `f64`, saturating to +/- infinity far outside the range.
fn big_to_f64(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 63 {
        return n.to_i64().expect("fits in 63 bits") as f64;
    }
    // Keep a 64-bit window and restore the scale with a power of two.
    let shift = bits - 63;
    let top = (n >> shift).to_i64().expect("shifted into 63 bits") as f64;
    top * 2f64.powi(shift.min(i32::MAX as u64) as i32)
}

/// Exact rational to nearest `f64` without overflowing intermediate conversions.
///
/// Both components are reduced to 63-bit windows whose quotient is formed in `f64`,
/// then the true binary scale is restored. Relative error is a few ulps, which is far
/// below every tolerance this workspace compares against.
fn big_ratio_to_f64(r: &BigRational) -> f64 {
    if Zero::is_zero(r) {
        return 0.0;
    }
    let num = r.numer();
    let den = r.denom(); // canonical form keeps den > 0
    let nb = num.bits();
    let db = den.bits();
    let ns = nb.saturating_sub(63);
    let ds = db.saturating_sub(63);
    let n_top = (num.abs() >> ns).to_u64().expect("shifted into 63 bits") as f64;
    let d_top = (den >> ds).to_u64().expect("shifted into 63 bits") as f64;
    let mut x = n_top / d_top;
    let scale = ns as i64 - ds as i64;
    // Apply the scale in two halves so a single powi cannot overflow prematurely.
    let half = (scale / 2) as i32;
    x *= 2f64.powi(half);
    x *= 2f64.powi((scale - half as i64) as i32);
    if num.is_negative() {
        x = -x;
    }
    x
}

/// Parses `[+-]?digits[.digits][ (e|E) [+-]?digits ]` into an exact rational.
fn parse_decimal_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().ok()?;
            (&s[..i], e)
        }
        None => (s, 0i64),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.find('.') {
        Some(i) => (&digits[..i], &digits[i + 1..]),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let joined = format!("{int_part}{frac_part}");
    let numer: BigInt = joined.parse().ok()?;
    let scale = frac_part.len() as i64 - exp;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::new(numer, ten.pow(scale as u32))
    } else {
        BigRational::from_integer(numer * ten.pow((-scale) as u32))
    };
    Some(if sign < 0 { -value } else { value })
}
