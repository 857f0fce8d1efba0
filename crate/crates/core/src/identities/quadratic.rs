//! Quadratic transformation of the `2 × 2` Hermitian `₂F₁`.
//!
//! With `g = ₂F₁(α, β; 2β; ·)`, `g⁺ = ₂F₁(α+1, β+1; 2β+1; ·)`, `zⱼ = 4xⱼ/(1+xⱼ)²`
//! and `G⁺` the matrix function at eigenvalues `zⱼ`:
//!
//! ```text
//! c₂,₁⁻¹ (x₁+x₂) ₂F₁(α+1, α-β+3/2; β+3/2; X²)
//!   = -α ∏ⱼ (1+xⱼ)^{-2α-1} g(zⱼ)
//!     + α (1+x₁)^{-2α-2} (1+x₂)^{-2α-1} [ -k x₁/(1+x₁) g⁺(z₁) g(z₂)
//!                                          + (1-x₂)(1-x₁x₂)/(1+x₂)^e G⁺(Z) ]
//! ```
//!
//! The form as usually printed has `(k, e) = (1, 3)`. Redoing the limit
//! `Y → I₂` of the two-argument determinant gives `(k, e) = (2, 2)`, which
//! is the version that agrees with the left side.

use rayon::prelude::*;
use serde::Serialize;

use crate::determinantal::{calibrate_c21, calibration_probes, eval_one_det, DeterminantalConstant};
use crate::error::{HgfError, Result};
use crate::gammafact::ConeParameter;
use crate::identities::report::VerificationReport;
use crate::matrixhgf::{evaluate, EigenSpectrum, HgfParams};
use crate::scalar::{Backend, Scalar};
use crate::scalarhgf::{gauss_2f1, ScalarHgfParams};
use crate::series::TruncationPolicy;

/// Largest tolerated relative change of the right side under `x₁ ↔ x₂`.
pub const SWAP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadraticForm {
    Printed,
    Rederived,
}

impl QuadraticForm {
    fn constants(self) -> (f64, i32) {
        match self {
            QuadraticForm::Printed => (1.0, 3),
            QuadraticForm::Rederived => (2.0, 2),
        }
    }
}

/// `(a, b; c) = (α+1, α-β+3/2; β+3/2)` with `d = 1`.
pub fn quadratic_parameters(alpha: f64, beta: f64) -> HgfParams<f64> {
    HgfParams::new(alpha + 1.0, alpha - beta + 1.5, beta + 1.5, ConeParameter::hermitian())
}

/// `c₂,₁` for [`quadratic_parameters`], calibrated on the default probe set.
pub fn calibrate_quadratic_c21(alpha: f64, beta: f64, seed: u64) -> Result<DeterminantalConstant> {
    let p = quadratic_parameters(alpha, beta);
    calibrate_c21(&p, 2, &calibration_probes(2, 5, seed), &TruncationPolicy::default())
}

fn check_hypotheses(alpha: f64, beta: f64, x: &EigenSpectrum<f64>) -> Result<()> {
    if x.m() != 2 {
        return Err(HgfError::Hypothesis(format!("the quadratic identity is for 2 × 2 arguments, got m = {}", x.m())));
    }
    if x[0].coincident(&x[1]) {
        return Err(HgfError::Hypothesis(format!("x₁ = x₂ at {x}; the identity divides by x₁ - x₂")));
    }
    if x.norm() >= 1.0 {
        return Err(HgfError::Hypothesis(format!("‖X‖ ≥ 1 at {x}")));
    }
    for (name, v) in [("2β", 2.0 * beta), ("2β+1", 2.0 * beta + 1.0), ("2β-1", 2.0 * beta - 1.0), ("β+3/2", beta + 1.5)] {
        if v.nonpositive_integer().is_some() {
            return Err(HgfError::Hypothesis(format!("{name} = {v} is a nonpositive integer (α = {alpha})")));
        }
    }
    Ok(())
}

/// `c₂,₁⁻¹ (x₁+x₂) ₂F₁(α+1, α-β+3/2; β+3/2; X²)`.
pub fn quadratic_lhs(
    alpha: f64,
    beta: f64,
    x: &EigenSpectrum<f64>,
    c21: &DeterminantalConstant,
    trunc: &TruncationPolicy,
) -> Result<f64> {
    let squared = x.map(|v| v * v);
    let f = evaluate(&quadratic_parameters(alpha, beta), &squared, trunc)?.value;
    Ok((x[0] + x[1]) * f / c21.value)
}

pub fn quadratic_rhs(alpha: f64, beta: f64, x: &EigenSpectrum<f64>, form: QuadraticForm) -> Result<f64> {
    let (k, e) = form.constants();
    let trunc = TruncationPolicy::scalar();
    let z = x.map(|v| 4.0 * v / ((1.0 + v) * (1.0 + v)));
    let g = |t: f64| Ok::<_, HgfError>(gauss_2f1(&ScalarHgfParams::new(alpha, beta, 2.0 * beta), &t, &trunc)?.value);
    let g_plus = |t: f64| gauss_2f1(&ScalarHgfParams::new(alpha + 1.0, beta + 1.0, 2.0 * beta + 1.0), &t, &trunc);
    let big = eval_one_det(&HgfParams::new(alpha + 1.0, beta + 1.0, 2.0 * beta + 1.0, ConeParameter::hermitian()), &z)?;
    let (x1, x2) = (x[0], x[1]);
    let (g1, g2) = (g(z[0])?, g(z[1])?);
    let p = -2.0 * alpha;
    let first = -alpha * (1.0 + x1).powf(p - 1.0) * (1.0 + x2).powf(p - 1.0) * g1 * g2;
    let bracket = -k * x1 / (1.0 + x1) * g_plus(z[0])?.value * g2
        + (1.0 - x2) * (1.0 - x1 * x2) / (1.0 + x2).powi(e) * big;
    Ok(first + alpha * (1.0 + x1).powf(p - 2.0) * (1.0 + x2).powf(p - 1.0) * bracket)
}

/// Both sides at each probe, plus the swap symmetry of the right side.
pub fn verify_quadratic_2x2(
    alpha: f64,
    beta: f64,
    probes: &[EigenSpectrum<f64>],
    c21: &DeterminantalConstant,
    form: QuadraticForm,
    trunc: &TruncationPolicy,
    tolerance: f64,
) -> Result<VerificationReport> {
    if c21.m != 2 {
        return Err(HgfError::Hypothesis(format!("c₂,₁ was calibrated for m = {}, need 2", c21.m)));
    }
    for x in probes {
        check_hypotheses(alpha, beta, x)?;
    }
    let rows: Vec<Result<(f64, f64, f64)>> = probes
        .par_iter()
        .map(|x| {
            let swapped = EigenSpectrum::new(vec![x[1], x[0]])?;
            Ok((
                quadratic_lhs(alpha, beta, x, c21, trunc)?,
                quadratic_rhs(alpha, beta, x, form)?,
                quadratic_rhs(alpha, beta, &swapped, form)?,
            ))
        })
        .collect();
    let name = match form {
        QuadraticForm::Printed => "quadratic2x2",
        QuadraticForm::Rederived => "quadratic2x2-rederived",
    };
    let mut report = VerificationReport::new(name, Backend::Float, tolerance);
    report.param("alpha", alpha).param("beta", beta).param("form", format!("{form:?}").to_lowercase());
    report.param("c21", c21.value).param("c21_spread", c21.probe_spread);
    for (x, row) in probes.iter().zip(rows) {
        let (lhs, rhs, rhs_swapped) = row?;
        report.record(x, &lhs, &rhs);
        report.record_with_tolerance(format!("{x} swap"), &rhs, &rhs_swapped, SWAP_TOLERANCE);
    }
    Ok(report)
}
