//! Residual of the generalized Muirhead system by central differences.
//!
//! ```text
//! xᵢ(1-xᵢ) Fᵢᵢ + [c - (m-1)d - (a+b+1-(m-1)d) xᵢ + d Σ_{j≠i} xᵢ(1-xᵢ)/(xᵢ-x_j)] Fᵢ
//!              - d Σ_{j≠i} x_j(1-x_j)/(xᵢ-x_j) F_j - ab F = 0
//! ```
//!
//! The stencil is second order, so the residual should shrink about fourfold
//! when `h` is halved, as long as the difference error dominates rounding and
//! series truncation. A fixed truncation weight keeps every stencil point on
//! the same polynomial.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{HgfError, Result};
use crate::identities::report::VerificationReport;
use crate::matrixhgf::{evaluate, EigenSpectrum, HgfParams};
use crate::series::TruncationPolicy;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MuirheadResidual {
    pub residual: f64,
    /// `F(X)`.
    pub value: f64,
    /// `|ab F(X)|`, the natural size of each term.
    pub scale: f64,
}

impl MuirheadResidual {
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.residual.abs() / self.scale
        } else {
            self.residual.abs()
        }
    }
}

/// Operator `i` (0-based) applied to `F` at `x` with step `h`.
pub fn muirhead_residual(
    p: &HgfParams<f64>,
    x: &EigenSpectrum<f64>,
    i: usize,
    h: f64,
    trunc: &TruncationPolicy,
) -> Result<MuirheadResidual> {
    let m = x.m();
    if i >= m {
        return Err(HgfError::Shape(format!("coordinate {i} out of range for m = {m}")));
    }
    if !(h > 0.0) {
        return Err(HgfError::Invalid(format!("step h = {h} must be positive")));
    }
    for a in 0..m {
        for b in a + 1..m {
            if (x[a] - x[b]).abs() < 10.0 * h {
                return Err(HgfError::Domain(format!(
                    "eigenvalues {} and {} are closer than 10h = {}",
                    x[a],
                    x[b],
                    10.0 * h
                )));
            }
        }
    }
    let f = |shift: Option<(usize, f64)>| -> Result<f64> {
        let mut v = x.values().to_vec();
        if let Some((k, s)) = shift {
            v[k] += s;
        }
        Ok(evaluate(p, &EigenSpectrum::new(v)?, trunc)?.value)
    };
    let f0 = f(None)?;
    let mut grad = vec![0.0; m];
    let mut fii = 0.0;
    for (k, g) in grad.iter_mut().enumerate() {
        let fp = f(Some((k, h)))?;
        let fm = f(Some((k, -h)))?;
        *g = (fp - fm) / (2.0 * h);
        if k == i {
            fii = (fp - 2.0 * f0 + fm) / (h * h);
        }
    }

    let d = p.d.to_f64();
    let (a, b, c) = (p.a, p.b, p.c);
    let md = (m as f64 - 1.0) * d;
    let xi = x[i];
    let mut drift = c - md - (a + b + 1.0 - md) * xi;
    let mut cross = 0.0;
    for j in (0..m).filter(|&j| j != i) {
        let xj = x[j];
        drift += d * xi * (1.0 - xi) / (xi - xj);
        cross += d * xj * (1.0 - xj) / (xi - xj) * grad[j];
    }
    let residual = xi * (1.0 - xi) * fii + drift * grad[i] - cross - a * b * f0;
    Ok(MuirheadResidual { residual, value: f0, scale: (a * b * f0).abs() })
}

/// Every operator at every probe, passing when `|residual| ≤ tolerance · |ab F|`.
pub fn verify_muirhead(
    p: &HgfParams<f64>,
    probes: &[EigenSpectrum<f64>],
    h: f64,
    trunc: &TruncationPolicy,
    tolerance: f64,
) -> Result<VerificationReport> {
    let jobs: Vec<(usize, usize)> =
        probes.iter().enumerate().flat_map(|(n, x)| (0..x.m()).map(move |i| (n, i))).collect();
    let results: Vec<Result<MuirheadResidual>> =
        jobs.par_iter().map(|&(n, i)| muirhead_residual(p, &probes[n], i, h, trunc)).collect();
    let mut report = VerificationReport::new("pde", crate::scalar::Backend::Float, tolerance);
    report.param("a", p.a).param("b", p.b).param("c", p.c).param("d", &p.d).param("h", h);
    report.param("max_weight", trunc.max_weight);
    for (&(n, i), r) in jobs.iter().zip(results) {
        let r = r?;
        report.record_scaled(format!("{} i={}", probes[n], i + 1), r.residual, r.scale, tolerance);
    }
    Ok(report)
}
