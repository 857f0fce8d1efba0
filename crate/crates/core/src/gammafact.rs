//! Rising factorials, partitional rising factorials and the d-parameterized
//! multivariate gamma function
//!
//! ```text
//! Γ_m(a; d) = π^{m(m-1)d/2} ∏_{j=1}^{m} Γ(a - (j-1)d)
//! [a]_κ     = ∏_j (a - (j-1)d)_{k_j}
//! ```
//!
//! `d = 1/2` is the real symmetric case, `d = 1` the Hermitian case.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Serialize, Serializer};
use statrs::function::gamma::ln_gamma;

use crate::error::{HgfError, Result};
use crate::matrixhgf::HgfParams;
use crate::partitions::Partition;
use crate::scalar::{parse_rational, ratio, Rational, Scalar};

/// The cone parameter `d > 0`, stored exactly.
///
/// The usual Jack parameter is `α = 1/d`; use [`ConeParameter::from_alpha`]
/// and [`ConeParameter::alpha`] to convert.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConeParameter(Rational);

impl ConeParameter {
    pub fn new(d: Rational) -> Result<Self> {
        if d <= Rational::zero() {
            return Err(HgfError::Invalid(format!("cone parameter must be positive, got {d}")));
        }
        Ok(ConeParameter(d))
    }

    /// `d = 1/2`: zonal polynomials, real symmetric matrices.
    pub fn real_symmetric() -> Self {
        ConeParameter(ratio(1, 2))
    }

    /// `d = 1`: Schur polynomials, Hermitian matrices.
    pub fn hermitian() -> Self {
        ConeParameter(ratio(1, 1))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(HgfError::Invalid("zero denominator".into()));
        }
        Self::new(ratio(num, den))
    }

    /// Exact binary value of the float.
    pub fn from_f64(d: f64) -> Result<Self> {
        Rational::from_float(d)
            .ok_or_else(|| HgfError::Invalid(format!("non-finite cone parameter {d}")))
            .and_then(Self::new)
    }

    /// From the Jack parameter `α`, `d = 1/α`.
    pub fn from_alpha(alpha: &Rational) -> Result<Self> {
        if alpha <= &Rational::zero() {
            return Err(HgfError::Invalid(format!("Jack parameter must be positive, got {alpha}")));
        }
        Self::new(alpha.recip())
    }

    pub fn alpha(&self) -> Rational {
        self.0.recip()
    }

    pub fn exact(&self) -> &Rational {
        &self.0
    }

    pub fn value<S: Scalar>(&self) -> S {
        S::from_ratio(&self.0)
    }

    pub fn to_f64(&self) -> f64 {
        Scalar::to_f64(&self.0)
    }
}

impl fmt::Display for ConeParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for ConeParameter {
    type Err = HgfError;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_rational(s)?)
    }
}

impl Serialize for ConeParameter {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

/// Classical rising factorial `(a)_k`.
pub fn rising_factorial<S: Scalar>(a: &S, k: u32) -> S {
    let mut acc = S::one();
    for i in 0..k {
        acc = acc * (a.clone() + S::of(i as i64));
    }
    acc
}

/// `[a]_κ = ∏_j (a - (j-1)d)_{k_j}`. Zero is a legitimate value.
pub fn partitional_rising_factorial<S: Scalar>(a: &S, kappa: &Partition, d: &ConeParameter) -> S {
    let d: S = d.value();
    let mut acc = S::one();
    for (j, &k) in kappa.parts().iter().enumerate() {
        let shifted = a.clone() - d.clone() * S::of_usize(j);
        acc = acc * rising_factorial(&shifted, k);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// `ln|Γ(x)|` and the sign of `Γ(x)`; fails at the poles `0, -1, -2, ...`.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(HgfError::Invalid(format!("gamma of non-finite value {x}")));
    }
    if x <= 0.0 && x.fract() == 0.0 {
        return Err(HgfError::Pole { j: 1, detail: format!("Γ({x}) is a pole") });
    }
    if x > 0.0 {
        return Ok((ln_gamma(x), 1.0));
    }
    // reflection: Γ(x) Γ(1 - x) = π / sin(πx)
    let s = (std::f64::consts::PI * x).sin();
    let ln = std::f64::consts::PI.ln() - s.abs().ln() - ln_gamma(1.0 - x);
    Ok((ln, s.signum()))
}

/// `ln|Γ_m(a; d)|` and its sign. Pole errors report the offending `j`.
pub fn ln_multivariate_gamma(a: f64, m: usize, d: &ConeParameter) -> Result<(f64, f64)> {
    if m == 0 {
        return Err(HgfError::Invalid("multivariate gamma needs m ≥ 1".into()));
    }
    let dv = d.to_f64();
    let mut ln = (m * (m - 1)) as f64 * dv / 2.0 * std::f64::consts::PI.ln();
    let mut sign = 1.0;
    for j in 1..=m {
        let arg = a - (j - 1) as f64 * dv;
        let (l, s) = ln_gamma_signed(arg).map_err(|_| HgfError::Pole {
            j,
            detail: format!("Γ(a - (j-1)d) = Γ({arg}) is a pole"),
        })?;
        ln += l;
        sign *= s;
    }
    Ok((ln, sign))
}

pub fn multivariate_gamma(a: f64, m: usize, d: &ConeParameter) -> Result<f64> {
    let (ln, sign) = ln_multivariate_gamma(a, m, d)?;
    Ok(sign * ln.exp())
}

/// `Γ_m(c)Γ_m(c-a-b) / (Γ_m(c-a)Γ_m(c-b))`, the value of the series at the identity.
///
/// When `a` (or `b`) is a nonpositive integer `-n` the ratio collapses to
/// `∏_j (c-b-(j-1)d)_n / (c-(j-1)d)_n`, which is computed in the caller's
/// backend and is exact for rational inputs. Otherwise the floating backend
/// uses log-gamma differences and the exact backend reports
/// [`HgfError::Inexact`].
pub fn gauss_ratio<S: Scalar>(params: &HgfParams<S>, m: usize) -> Result<S> {
    if let Some(value) = gauss_ratio_pochhammer(params, m)? {
        return Ok(value);
    }
    match S::BACKEND {
        crate::scalar::Backend::Exact => Err(HgfError::Inexact(
            "gamma ratio of non-terminating parameters is not rational".into(),
        )),
        crate::scalar::Backend::Float => {
            let value = gauss_ratio_gamma(
                params.a.to_f64(),
                params.b.to_f64(),
                params.c.to_f64(),
                m,
                &params.d,
            )?;
            Ok(S::from_f64(value).expect("finite float"))
        }
    }
}

/// Pochhammer branch only; `Ok(None)` when neither `a` nor `b` is a nonpositive integer.
pub fn gauss_ratio_pochhammer<S: Scalar>(params: &HgfParams<S>, m: usize) -> Result<Option<S>> {
    let (n, other) = match (params.a.nonpositive_integer(), params.b.nonpositive_integer()) {
        (Some(n), _) => (n, &params.b),
        (None, Some(n)) => (n, &params.a),
        (None, None) => return Ok(None),
    };
    let d: S = params.d.value();
    let mut num = S::one();
    let mut den = S::one();
    for j in 1..=m {
        let shift = d.clone() * S::of_usize(j - 1);
        num = num * rising_factorial(&(params.c.clone() - other.clone() - shift.clone()), n as u32);
        let lower = rising_factorial(&(params.c.clone() - shift), n as u32);
        if lower.is_zero() {
            return Err(HgfError::Pole {
                j,
                detail: format!("(c - (j-1)d)_{n} vanishes"),
            });
        }
        den = den * lower;
    }
    Ok(Some(num / den))
}

/// Gamma branch in floating point, via log-gamma differences.
pub fn gauss_ratio_gamma(a: f64, b: f64, c: f64, m: usize, d: &ConeParameter) -> Result<f64> {
    let (l1, s1) = ln_multivariate_gamma(c, m, d)?;
    let (l2, s2) = ln_multivariate_gamma(c - a - b, m, d)?;
    let (l3, s3) = ln_multivariate_gamma(c - a, m, d)?;
    let (l4, s4) = ln_multivariate_gamma(c - b, m, d)?;
    Ok(s1 * s2 * s3 * s4 * (l1 + l2 - l3 - l4).exp())
}
