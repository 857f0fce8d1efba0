//! Classical Gaussian hypergeometric function `₂F₁(a, b; c; x)`.
//!
//! This is both the `m = 1` oracle for the matrix series and the entry
//! generator for the determinantal formulas.

use serde::Serialize;

use crate::error::{HgfError, Result};
use crate::gammafact::{gauss_ratio, rising_factorial, ConeParameter};
use crate::matrixhgf::HgfParams;
use crate::scalar::Scalar;
use crate::series::{SeriesResult, ShellAccumulator, Step, TruncationPolicy};

pub use crate::identities::classical::{verify_scalar_identities, ScalarIdentity, ScalarInstance};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalarHgfParams<S> {
    pub a: S,
    pub b: S,
    pub c: S,
}

impl<S: Scalar> ScalarHgfParams<S> {
    pub fn new(a: S, b: S, c: S) -> Self {
        ScalarHgfParams { a, b, c }
    }

    /// `(a + n, b + n; c + n)`.
    pub fn shifted(&self, n: i64) -> Self {
        let s = S::of(n);
        ScalarHgfParams {
            a: self.a.clone() + s.clone(),
            b: self.b.clone() + s.clone(),
            c: self.c.clone() + s,
        }
    }

    /// Degree of the polynomial when `a` or `b` is a nonpositive integer.
    pub fn termination_degree(&self) -> Option<u32> {
        let na = self.a.nonpositive_integer();
        let nb = self.b.nonpositive_integer();
        match (na, nb) {
            (Some(x), Some(y)) => Some(x.min(y) as u32),
            (Some(x), None) | (None, Some(x)) => Some(x as u32),
            (None, None) => None,
        }
    }
}

/// `Σ_k (a)_k (b)_k / ((c)_k k!) x^k` under `trunc`.
pub fn gauss_2f1<S: Scalar>(p: &ScalarHgfParams<S>, x: &S, trunc: &TruncationPolicy) -> Result<SeriesResult<S>> {
    let bound = p.termination_degree();
    if bound.is_none() && x.abs() >= S::one() {
        return Err(HgfError::Domain(format!(
            "|x| = {} ≥ 1 and the series does not terminate",
            x.abs().to_f64()
        )));
    }
    let mut acc = ShellAccumulator::new(*trunc, bound);
    let mut term = S::one();
    let mut k: i64 = 0;
    loop {
        if let Step::Done = acc.push(term.clone()) {
            break;
        }
        let kk = S::of(k);
        let lower = p.c.clone() + kk.clone();
        let upper = (p.a.clone() + kk.clone()) * (p.b.clone() + kk);
        if lower.is_zero() {
            return Err(HgfError::Pole {
                j: 1,
                detail: format!("(c)_k vanishes at k = {} before the series terminates", k + 1),
            });
        }
        term = term * upper / (lower * S::of(k + 1)) * x.clone();
        k += 1;
    }
    let mut warnings = Vec::new();
    if bound.is_none() && x.abs().to_f64() >= 0.95 {
        warnings.push(format!("|x| = {} is close to the radius of convergence", x.abs().to_f64()));
    }
    Ok(acc.finish(warnings))
}

/// Gauss summation `₂F₁(a, b; c; 1) = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b))`.
///
/// A nonpositive integer `a = -n` uses the Chu–Vandermonde form `(c-b)_n / (c)_n`.
pub fn gauss_2f1_at_1<S: Scalar>(p: &ScalarHgfParams<S>) -> Result<S> {
    let params = HgfParams::new(p.a.clone(), p.b.clone(), p.c.clone(), ConeParameter::hermitian());
    if p.termination_degree().is_none() && p.c.clone() - p.a.clone() - p.b.clone() <= S::zero() {
        return Err(HgfError::Domain(format!(
            "c - a - b = {} ≤ 0: the series diverges at x = 1",
            (p.c.clone() - p.a.clone() - p.b.clone()).to_f64()
        )));
    }
    gauss_ratio(&params, 1)
}

/// `d/dx ₂F₁(a, b; c; x) = (ab/c) ₂F₁(a+1, b+1; c+1; x)`.
pub fn d2f1_dx<S: Scalar>(p: &ScalarHgfParams<S>, x: &S, trunc: &TruncationPolicy) -> Result<S> {
    d2f1_dx_n(p, x, 1, trunc)
}

/// `n`-th derivative, `(a)_n (b)_n / (c)_n · ₂F₁(a+n, b+n; c+n; x)`.
pub fn d2f1_dx_n<S: Scalar>(p: &ScalarHgfParams<S>, x: &S, order: u32, trunc: &TruncationPolicy) -> Result<S> {
    if order == 0 {
        return Ok(gauss_2f1(p, x, trunc)?.value);
    }
    let numer = rising_factorial(&p.a, order) * rising_factorial(&p.b, order);
    if numer.is_zero() {
        return Ok(S::zero());
    }
    let lower = rising_factorial(&p.c, order);
    if lower.is_zero() {
        return Err(HgfError::Pole { j: 1, detail: format!("(c)_{order} vanishes in the derivative") });
    }
    let shifted = gauss_2f1(&p.shifted(order as i64), x, trunc)?;
    Ok(numer / lower * shifted.value)
}
