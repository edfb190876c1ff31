//! Numeric modes.
//!
//! Every formula in the crate is written once against [`Scalar`] and then
//! evaluated either exactly over [`Rational`] (the oracle paths) or in `f64`
//! (the Monte Carlo paths).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Exact arbitrary-precision rational.
pub type Rational = BigRational;

/// Tolerance on the total mass of a floating-point spectrum.
pub const FLOAT_NORMALIZATION_TOLERANCE: f64 = 1e-12;

pub trait Scalar:
    Clone + PartialOrd + Num + std::ops::Neg<Output = Self> + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn from_int(value: i64) -> Self;

    fn to_f64_lossy(&self) -> f64;

    /// Smallest integer not below `self`, if it fits in a `u64`.
    fn ceil_u64(&self) -> Option<u64>;

    /// Whether `total` counts as a unit mass in this numeric mode.
    fn is_unit_mass(total: &Self) -> bool;

    fn from_usize(value: usize) -> Self {
        Self::from_int(i64::try_from(value).expect("count fits in i64"))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }
}

impl Scalar for f64 {
    fn from_int(value: i64) -> Self {
        value as f64
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }

    fn ceil_u64(&self) -> Option<u64> {
        let c = self.ceil();
        (c.is_finite() && c >= 0.0 && c <= u64::MAX as f64).then_some(c as u64)
    }

    fn is_unit_mass(total: &Self) -> bool {
        (total - 1.0).abs() <= FLOAT_NORMALIZATION_TOLERANCE
    }
}

impl Scalar for Rational {
    fn from_int(value: i64) -> Self {
        Rational::from_integer(BigInt::from(value))
    }

    fn to_f64_lossy(&self) -> f64 {
        rational_to_f64(self)
    }

    fn ceil_u64(&self) -> Option<u64> {
        if self.is_negative() {
            return None;
        }
        self.ceil().to_integer().to_u64()
    }

    fn is_unit_mass(total: &Self) -> bool {
        total.is_one()
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `d^{-k}` as an exact rational.
pub fn inverse_power(d: usize, k: usize) -> Rational {
    let den = num_traits::pow(BigInt::from(d), k);
    Rational::new(BigInt::one(), den)
}

/// Parses a decimal (`0.25`, `3`, `1e-3`) or fraction (`1/10`) literal exactly.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let num = parse_rational(num)?;
        let den = parse_rational(den)?;
        if den.is_zero() {
            return None;
        }
        return Some(num / den);
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::parse_bytes(digits.as_bytes(), 10)?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    let power = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= power;
    } else {
        value /= power;
    }
    if negative {
        value = -value;
    }
    Some(value)
}
