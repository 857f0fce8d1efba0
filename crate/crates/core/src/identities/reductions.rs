//! Determinantal forms against the Jack series (`d = 1`).

use rayon::prelude::*;

use crate::determinantal::{eval_one_det, eval_two_det, DeterminantalConstant};
use crate::error::{HgfError, Result};
use crate::identities::report::VerificationReport;
use crate::matrixhgf::{evaluate, evaluate_two, EigenSpectrum, HgfParams};
use crate::scalar::Backend;
use crate::series::TruncationPolicy;

/// One-argument determinant against the one-argument series at each probe,
/// and, for each `(X, Y)` pair, the calibrated two-argument determinant against its series.
pub fn verify_det_vs_series(
    p: &HgfParams<f64>,
    one: &[EigenSpectrum<f64>],
    two: &[(EigenSpectrum<f64>, EigenSpectrum<f64>)],
    c21: &DeterminantalConstant,
    trunc: &TruncationPolicy,
    tolerance: f64,
) -> Result<VerificationReport> {
    if !two.is_empty() && two.iter().any(|(x, _)| x.m() != c21.m) {
        return Err(HgfError::Shape(format!("c₂,₁ was calibrated for m = {}", c21.m)));
    }
    let ones: Vec<Result<(f64, f64)>> = one
        .par_iter()
        .map(|x| Ok((eval_one_det(p, x)?, evaluate(p, x, trunc)?.value)))
        .collect();
    let twos: Vec<Result<(f64, f64)>> = two
        .par_iter()
        .map(|(x, y)| Ok((eval_two_det(p, x, y, c21)?, evaluate_two(p, x, y, trunc)?.value)))
        .collect();
    let mut report = VerificationReport::new("det-vs-series", Backend::Float, tolerance);
    report.param("a", p.a).param("b", p.b).param("c", p.c).param("d", &p.d);
    report.param("c21", c21.value).param("c21_spread", c21.probe_spread);
    for (x, r) in one.iter().zip(ones) {
        let (det, series) = r?;
        report.record(format!("X={x}"), &det, &series);
    }
    for ((x, y), r) in two.iter().zip(twos) {
        let (det, series) = r?;
        report.record(format!("X={x} Y={y}"), &det, &series);
    }
    Ok(report)
}
