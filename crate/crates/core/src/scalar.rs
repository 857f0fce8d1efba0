//! Arithmetic backends.
//!
//! Every series and identity routine is generic over [`Scalar`], which is
//! implemented for `f64` (floating backend) and [`Rational`] (exact backend).
//! The exact backend never represents irrational values; routines that would
//! need one (gamma functions away from the Pochhammer branch) report
//! [`HgfError::Inexact`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{HgfError, Result};
use crate::symfunc::JackTable;

/// Arbitrary precision rational number used by the exact backend.
pub type Rational = BigRational;

/// Which arithmetic a result was computed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Float => f.write_str("float"),
        }
    }
}

/// Eigenvalues closer than this are merged by the floating backend.
pub const FLOAT_COINCIDENCE: f64 = 1e-9;

pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Num
    + Signed
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    const BACKEND: Backend;

    fn from_ratio(r: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    /// `Some(n)` when the value is exactly the integer `n`.
    fn integer_value(&self) -> Option<i64>;

    /// Lossless text form: `p/q` (or `p`) for rationals, shortest round-trip decimal for floats.
    fn render(&self) -> String;

    /// Parses `p/q`, integers and decimals. The exact backend reads decimals exactly.
    fn parse_value(text: &str) -> Result<Self>;

    /// Whether two eigenvalues are treated as equal by confluent evaluation.
    fn coincident(&self, other: &Self) -> bool;

    /// Process-wide Jack coefficient cache for this backend.
    fn jack_table() -> &'static JackTable<Self>;

    fn of(n: i64) -> Self {
        Self::from_i64(n).expect("small integer")
    }

    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("small integer")
    }

    /// Nonpositive integer test (`0, -1, -2, ...`), the pole set of the gamma function.
    fn nonpositive_integer(&self) -> Option<u64> {
        match self.integer_value() {
            Some(n) if n <= 0 => Some(n.unsigned_abs()),
            _ => None,
        }
    }

    /// Membership in ℕ = {1, 2, 3, ...}.
    fn is_natural(&self) -> bool {
        matches!(self.integer_value(), Some(n) if n >= 1)
    }

    fn powi(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn from_ratio(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn integer_value(&self) -> Option<i64> {
        if self.is_finite() && self.fract() == 0.0 && self.abs() < 9.0e15 {
            Some(*self as i64)
        } else {
            None
        }
    }

    fn render(&self) -> String {
        format!("{self:?}")
    }

    fn parse_value(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.contains('/') {
            return parse_rational(text).map(|r| Self::from_ratio(&r));
        }
        text.parse::<f64>()
            .map_err(|_| HgfError::Invalid(format!("not a number: {text:?}")))
    }

    fn coincident(&self, other: &Self) -> bool {
        (self - other).abs() <= FLOAT_COINCIDENCE
    }

    fn powi(&self, exp: u32) -> Self {
        f64::powi(*self, exp as i32)
    }

    fn jack_table() -> &'static JackTable<Self> {
        static TABLE: std::sync::OnceLock<JackTable<f64>> = std::sync::OnceLock::new();
        TABLE.get_or_init(JackTable::new)
    }
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Exact;

    fn from_ratio(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn integer_value(&self) -> Option<i64> {
        if self.is_integer() {
            self.to_integer().to_i64()
        } else {
            None
        }
    }

    fn render(&self) -> String {
        self.to_string()
    }

    fn parse_value(text: &str) -> Result<Self> {
        parse_rational(text)
    }

    fn coincident(&self, other: &Self) -> bool {
        self == other
    }

    fn jack_table() -> &'static JackTable<Self> {
        static TABLE: std::sync::OnceLock<JackTable<Rational>> = std::sync::OnceLock::new();
        TABLE.get_or_init(JackTable::new)
    }
}

/// Exact parse of `p/q`, `-7`, `0.125`, `2.5e-3`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || HgfError::Invalid(format!("not a rational number: {text:?}"));
    if text.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = text.split_once('/') {
        let num = BigInt::from_str_radix(num.trim(), 10).map_err(|_| bad())?;
        let den = BigInt::from_str_radix(den.trim(), 10).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(HgfError::Invalid(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(num, den));
    }

    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = text[pos + 1..].parse().map_err(|_| bad())?;
            (&text[..pos], exp)
        }
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str_radix(&all_digits, 10).map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut value = Rational::from_integer(numer);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Shorthand for building small exact rationals in tests and examples.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `|a - b| / max(|a|, |b|)`, falling back to the absolute difference near zero.
pub fn relative_difference(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    let diff = (a - b).abs();
    if scale < 1e-300 {
        diff
    } else {
        diff / scale
    }
}
