//! `₂F₁` of one and two matrix arguments as truncated Jack series.
//!
//! ```text
//! ₂F₁(a, b; c; X)    = Σ_k 1/k! Σ_{|κ|=k} [a]_κ [b]_κ / [c]_κ · C_κ(X; d)
//! ₂F₁(a, b; c; X, Y) = Σ_k 1/k! Σ_{|κ|=k} [a]_κ [b]_κ / [c]_κ · C_κ(X) C_κ(Y) / C_κ(I)
//! ```
//!
//! Only the eigenvalues matter. Partitions are visited in reverse-lex order
//! within each shell, so exact results do not depend on scheduling.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{HgfError, Result};
use crate::gammafact::{partitional_rising_factorial, ConeParameter};
use crate::partitions::{enumerate, Partition};
use crate::scalar::Scalar;
use crate::series::{SeriesResult, ShellAccumulator, Step, TruncationPolicy};
use crate::symfunc::{jack_c_cached, MonomialCache};

/// Spectra with norm at or above this get a slow-convergence warning.
pub const NEAR_BOUNDARY: f64 = 0.95;

/// Eigenvalues `x₁, …, x_m` of a matrix argument.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSpectrum<S>(Vec<S>);

impl<S: Scalar> EigenSpectrum<S> {
    pub fn new(values: Vec<S>) -> Result<Self> {
        if values.is_empty() {
            return Err(HgfError::Shape("a spectrum needs at least one eigenvalue".into()));
        }
        Ok(EigenSpectrum(values))
    }

    pub fn zeros(m: usize) -> Self {
        EigenSpectrum(vec![S::zero(); m.max(1)])
    }

    pub fn ones(m: usize) -> Self {
        EigenSpectrum(vec![S::one(); m.max(1)])
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[S] {
        &self.0
    }

    /// `max |xᵢ|`.
    pub fn norm(&self) -> S {
        self.0.iter().map(|x| x.abs()).fold(S::zero(), |acc, v| if v > acc { v } else { acc })
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        EigenSpectrum(self.0.iter().map(f).collect())
    }

    pub fn to_f64(&self) -> EigenSpectrum<f64> {
        EigenSpectrum(self.0.iter().map(Scalar::to_f64).collect())
    }
}

impl<S> Deref for EigenSpectrum<S> {
    type Target = [S];

    fn deref(&self) -> &[S] {
        &self.0
    }
}

impl<S: Scalar> fmt::Display for EigenSpectrum<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Scalar::render).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Comma-separated eigenvalues, e.g. `0.25,1/2`.
impl<S: Scalar> FromStr for EigenSpectrum<S> {
    type Err = HgfError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let values = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(S::parse_value)
            .collect::<Result<Vec<_>>>()?;
        EigenSpectrum::new(values)
    }
}

impl<S: Scalar> Serialize for EigenSpectrum<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        serializer.collect_seq(self.0.iter().map(Scalar::render))
    }
}

/// Parameters `(a, b; c)` and cone parameter `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct HgfParams<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: ConeParameter,
}

impl<S: Scalar> HgfParams<S> {
    pub fn new(a: S, b: S, c: S, d: ConeParameter) -> Self {
        HgfParams { a, b, c, d }
    }

    /// First `j` (1-based) with `c - (j-1)d ∈ {0, -1, -2, …}`.
    pub fn pole_row(&self, m: usize) -> Option<usize> {
        let d: S = self.d.value();
        (1..=m).find(|&j| (self.c.clone() - d.clone() * S::of_usize(j - 1)).nonpositive_integer().is_some())
    }

    pub fn to_f64(&self) -> HgfParams<f64> {
        HgfParams::new(self.a.to_f64(), self.b.to_f64(), self.c.to_f64(), self.d.clone())
    }
}

impl<S: Scalar> Serialize for HgfParams<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("HgfParams", 4)?;
        st.serialize_field("a", &self.a.render())?;
        st.serialize_field("b", &self.b.render())?;
        st.serialize_field("c", &self.c.render())?;
        st.serialize_field("d", &self.d)?;
        st.end()
    }
}

/// Weight beyond which every shell vanishes: `n·m` when `a` or `b` is `-n`.
pub fn termination_bound<S: Scalar>(p: &HgfParams<S>, m: usize) -> Option<u32> {
    [&p.a, &p.b]
        .iter()
        .filter_map(|v| v.nonpositive_integer())
        .map(|n| n as u32 * m as u32)
        .min()
}

/// Series coefficient `[a]_κ [b]_κ / [c]_κ`, or `None` when the numerator vanishes.
fn coefficient<S: Scalar>(p: &HgfParams<S>, kappa: &Partition) -> Result<Option<S>> {
    let numer = partitional_rising_factorial(&p.a, kappa, &p.d) * partitional_rising_factorial(&p.b, kappa, &p.d);
    if numer.is_zero() {
        return Ok(None);
    }
    let lower = partitional_rising_factorial(&p.c, kappa, &p.d);
    if lower.is_zero() {
        let j = p.pole_row(kappa.len()).unwrap_or(1);
        return Err(pole(j, Some(kappa)));
    }
    Ok(Some(numer / lower))
}

fn pole(j: usize, kappa: Option<&Partition>) -> HgfError {
    let detail = match kappa {
        Some(k) => format!("[c]_κ vanishes at κ = {k}: c - (j-1)d is a nonpositive integer for j = {j}"),
        None => format!("c - (j-1)d is a nonpositive integer for j = {j}, so [c]_κ = 0 for some κ"),
    };
    HgfError::Pole { j, detail }
}

fn precheck<S: Scalar>(p: &HgfParams<S>, m: usize, norm: f64, bound: Option<u32>, what: &str) -> Result<Vec<String>> {
    let mut warnings = Vec::new();
    if bound.is_none() {
        if let Some(j) = p.pole_row(m) {
            return Err(pole(j, None));
        }
        if norm >= 1.0 {
            return Err(HgfError::Domain(format!(
                "{what} = {norm} ≥ 1 and the series does not terminate (a, b not nonpositive integers)"
            )));
        }
        if norm >= NEAR_BOUNDARY {
            warnings.push(format!("{what} = {norm} is close to 1; convergence is slow"));
        }
    }
    Ok(warnings)
}

/// One-argument series under `trunc`.
pub fn evaluate<S: Scalar>(p: &HgfParams<S>, x: &EigenSpectrum<S>, trunc: &TruncationPolicy) -> Result<SeriesResult<S>> {
    let m = x.m();
    let bound = termination_bound(p, m);
    let warnings = precheck(p, m, x.norm().to_f64(), bound, "‖X‖")?;
    let mut mono = MonomialCache::new(x);
    sum_shells(p, m, bound, trunc, warnings, |kappa| jack_c_cached(kappa, &p.d, &mut mono))
}

/// Two-argument series under `trunc`. For `d ≠ 1` this goes beyond the
/// Hermitian setting in which the two-argument function is usually stated.
pub fn evaluate_two<S: Scalar>(
    p: &HgfParams<S>,
    x: &EigenSpectrum<S>,
    y: &EigenSpectrum<S>,
    trunc: &TruncationPolicy,
) -> Result<SeriesResult<S>> {
    let m = x.m();
    if y.m() != m {
        return Err(HgfError::Shape(format!("X has {} eigenvalues but Y has {}", m, y.m())));
    }
    let bound = termination_bound(p, m);
    let norm = x.norm().to_f64() * y.norm().to_f64();
    let warnings = precheck(p, m, norm, bound, "‖X‖·‖Y‖")?;
    let mut mx = MonomialCache::new(x);
    let mut my = MonomialCache::new(y);
    let mut mi = MonomialCache::new(&vec![S::one(); m]);
    sum_shells(p, m, bound, trunc, warnings, |kappa| {
        let cx = jack_c_cached(kappa, &p.d, &mut mx);
        if cx.is_zero() {
            return cx;
        }
        cx * jack_c_cached(kappa, &p.d, &mut my) / jack_c_cached(kappa, &p.d, &mut mi)
    })
}

fn sum_shells<S: Scalar>(
    p: &HgfParams<S>,
    m: usize,
    bound: Option<u32>,
    trunc: &TruncationPolicy,
    warnings: Vec<String>,
    mut jack: impl FnMut(&Partition) -> S,
) -> Result<SeriesResult<S>> {
    let mut acc = ShellAccumulator::new(*trunc, bound);
    let mut inv_factorial = S::one();
    let mut k: u32 = 0;
    loop {
        if k > 0 {
            inv_factorial = inv_factorial / S::of(k as i64);
        }
        let mut shell = S::zero();
        for kappa in enumerate(k, m) {
            if let Some(coef) = coefficient(p, &kappa)? {
                shell = shell + coef * jack(&kappa);
            }
        }
        if let Step::Done = acc.push(shell * inv_factorial.clone()) {
            break;
        }
        k += 1;
    }
    Ok(acc.finish(warnings))
}
