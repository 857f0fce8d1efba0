//! Hermitian (`d = 1`) determinantal forms of the matrix `₂F₁`.
//!
//! ```text
//! ₂F₁(a, b; c; X, Y) = c₂,₁ · det[ f(xᵢ y_j) ] / (V(X) V(Y)),   f = ₂F₁(a-m+1, b-m+1; c-m+1; ·)
//! ₂F₁(a, b; c; X)    = det[ xᵢ^{m-j} ₂F₁(a-j+1, b-j+1; c-j+1; xᵢ) ] / V(X)
//! ```
//!
//! Coincident eigenvalues are handled by the confluent limit: inside a
//! cluster of equal eigenvalues the `p`-th repeated row is replaced by
//! `1/p!` times its `p`-th derivative, in the numerator and in the
//! Vandermonde alike. The ratio is then the exact limit, with no `0/0`.
//!
//! The constant `c₂,₁` is found by calibration against the series.

use serde::Serialize;

use crate::error::{HgfError, Result};
use crate::gammafact::{rising_factorial, ConeParameter};
use crate::linalg::Matrix;
use crate::matrixhgf::{evaluate_two, EigenSpectrum, HgfParams};
use crate::scalar::{relative_difference, Scalar};
use crate::scalarhgf::{d2f1_dx_n, ScalarHgfParams};
use crate::series::TruncationPolicy;

/// Largest tolerated relative spread of the calibration ratio.
pub const CALIBRATION_TOLERANCE: f64 = 1e-8;

/// `∏_{i<j} (xᵢ - x_j)`.
pub fn vandermonde<S: Scalar>(x: &[S]) -> S {
    let mut v = S::one();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            v = v * (x[i].clone() - x[j].clone());
        }
    }
    v
}

/// `det(a ∘ b) = b₁₁ b₂₂ det(a) + a₁₂ a₂₁ det(b)` for `2 × 2` grids.
pub fn hadamard_det2<S: Scalar>(a: &[[S; 2]; 2], b: &[[S; 2]; 2]) -> S {
    let det = |g: &[[S; 2]; 2]| g[0][0].clone() * g[1][1].clone() - g[0][1].clone() * g[1][0].clone();
    b[0][0].clone() * b[1][1].clone() * det(a) + a[0][1].clone() * a[1][0].clone() * det(b)
}

/// Each eigenvalue as `(cluster value, derivative order)`.
fn confluent_rows<S: Scalar>(x: &[S]) -> Vec<(S, u32)> {
    let mut out: Vec<(S, u32)> = Vec::with_capacity(x.len());
    let mut reps: Vec<(S, u32)> = Vec::new();
    for xi in x {
        match reps.iter_mut().find(|(r, _)| r.coincident(xi)) {
            Some((r, count)) => {
                out.push((r.clone(), *count));
                *count += 1;
            }
            None => {
                out.push((xi.clone(), 0));
                reps.push((xi.clone(), 1));
            }
        }
    }
    out
}

fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn falling(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64)
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// `V(X)`, or its confluent counterpart `det[C(m-j, p) x^{m-j-p}]` when eigenvalues repeat.
pub fn confluent_vandermonde(x: &[f64]) -> f64 {
    let rows = confluent_rows(x);
    let m = x.len();
    if rows.iter().all(|&(_, p)| p == 0) {
        return vandermonde(x);
    }
    Matrix::from_fn(m, |i, j| {
        let (v, p) = rows[i];
        let e = (m - 1 - j) as u32;
        if p > e {
            0.0
        } else {
            binomial(e, p) * v.powi((e - p) as i32)
        }
    })
    .det()
}

fn require_hermitian(p: &HgfParams<f64>) -> Result<()> {
    if p.d != ConeParameter::hermitian() {
        return Err(HgfError::Hypothesis(format!(
            "determinantal formulas need d = 1 (Hermitian case), got d = {}",
            p.d
        )));
    }
    Ok(())
}

fn shifted(p: &HgfParams<f64>, s: f64) -> ScalarHgfParams<f64> {
    ScalarHgfParams::new(p.a - s, p.b - s, p.c - s)
}

/// `det[xᵢ^{m-j} ₂F₁(a-j+1, b-j+1; c-j+1; xᵢ)] / V(X)`.
pub fn eval_one_det(p: &HgfParams<f64>, x: &EigenSpectrum<f64>) -> Result<f64> {
    require_hermitian(p)?;
    let m = x.m();
    let rows = confluent_rows(x);
    let trunc = TruncationPolicy::scalar();
    let mut entries = vec![vec![0.0; m]; m];
    for (i, &(v, order)) in rows.iter().enumerate() {
        for (j, slot) in entries[i].iter_mut().enumerate() {
            let e = (m - 1 - j) as u32;
            let f = shifted(p, j as f64);
            // (1/p!) d^p/dx^p [x^e F(x)] by Leibniz
            let mut total = 0.0;
            for s in 0..=order.min(e) {
                let power = falling(e, s) * v.powi((e - s) as i32);
                total += binomial(order, s) * power * d2f1_dx_n(&f, &v, order - s, &trunc)?;
            }
            *slot = total / factorial(order);
        }
    }
    Ok(Matrix::from_rows(entries).det() / confluent_vandermonde(x))
}

/// `det[₂F₁(a-m+1, b-m+1; c-m+1; xᵢ y_j)] / (V(X) V(Y))`, without the constant.
pub fn det_ratio_two(p: &HgfParams<f64>, x: &EigenSpectrum<f64>, y: &EigenSpectrum<f64>) -> Result<f64> {
    require_hermitian(p)?;
    let m = x.m();
    if y.m() != m {
        return Err(HgfError::Shape(format!("X has {} eigenvalues but Y has {}", m, y.m())));
    }
    let f = shifted(p, (m - 1) as f64);
    let trunc = TruncationPolicy::scalar();
    let rx = confluent_rows(x);
    let ry = confluent_rows(y);
    let mut entries = vec![vec![0.0; m]; m];
    for (i, &(u, pi)) in rx.iter().enumerate() {
        for (j, &(v, qj)) in ry.iter().enumerate() {
            // ∂_x^p ∂_y^q f(xy) = Σ_s C(p,s) q!/(q-s)! x^{q-s} y^{p-s} f^{(p+q-s)}(xy)
            let mut total = 0.0;
            for s in 0..=pi.min(qj) {
                let coef = binomial(pi, s) * falling(qj, s) * u.powi((qj - s) as i32) * v.powi((pi - s) as i32);
                total += coef * d2f1_dx_n(&f, &(u * v), pi + qj - s, &trunc)?;
            }
            entries[i][j] = total / (factorial(pi) * factorial(qj));
        }
    }
    Ok(Matrix::from_rows(entries).det() / (confluent_vandermonde(x) * confluent_vandermonde(y)))
}

/// `c₂,₁ · det[₂F₁(a-m+1, b-m+1; c-m+1; xᵢ y_j)] / (V(X) V(Y))`.
pub fn eval_two_det(
    p: &HgfParams<f64>,
    x: &EigenSpectrum<f64>,
    y: &EigenSpectrum<f64>,
    c21: &DeterminantalConstant,
) -> Result<f64> {
    Ok(c21.value * det_ratio_two(p, x, y)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Calibrated,
    ClosedFormCandidate,
}

/// The constant `c₂,₁` of the two-argument determinantal form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeterminantalConstant {
    pub value: f64,
    pub provenance: Provenance,
    /// Largest relative deviation of a probe ratio from `value`.
    pub probe_spread: f64,
    pub m: usize,
    /// The printed closed form with its undefined factor `β_m` omitted.
    pub candidate: f64,
    /// `candidate / value`, an estimate of that missing factor.
    pub beta_estimate: f64,
    pub probes: usize,
}

impl DeterminantalConstant {
    /// The printed closed form, taken at face value without `β_m`.
    pub fn closed_form_candidate(p: &HgfParams<f64>, m: usize) -> Self {
        let value = closed_form_candidate(p, m);
        DeterminantalConstant {
            value,
            provenance: Provenance::ClosedFormCandidate,
            probe_spread: 0.0,
            m,
            candidate: value,
            beta_estimate: 1.0,
            probes: 0,
        }
    }
}

/// `∏ᵢ (c-m+1)_{m-i} / ∏ᵢ (i-1)! (a-m+1)_{m-i} (b-m+1)_{m-i}` for `i = 1..m`.
pub fn closed_form_candidate(p: &HgfParams<f64>, m: usize) -> f64 {
    let s = (m - 1) as f64;
    let mut value = 1.0;
    for i in 1..=m {
        let r = (m - i) as u32;
        value *= rising_factorial(&(p.c - s), r)
            / (factorial(i as u32 - 1) * rising_factorial(&(p.a - s), r) * rising_factorial(&(p.b - s), r));
    }
    value
}

/// Pairs `(X, Y)` of distinct-eigenvalue spectra with `‖X‖·‖Y‖ ≤ 0.36`.
pub fn calibration_probes(m: usize, count: usize, seed: u64) -> Vec<(EigenSpectrum<f64>, EigenSpectrum<f64>)> {
    use crate::probes::ProbePlan;
    use crate::scalar::ratio;
    // well separated eigenvalues keep the determinants away from cancellation
    let gap = ratio(1, 4 * m.max(1) as i64);
    let plan = |s| ProbePlan::new(m, count, s).range(ratio(1, 20), ratio(3, 5)).min_gap(gap.clone());
    let xs = plan(seed).spectra::<f64>();
    let ys = plan(seed.wrapping_add(1)).spectra::<f64>();
    xs.into_iter().zip(ys).collect()
}

/// Mean of `series / det-ratio` over `probes`; fails when the ratio is not constant.
pub fn calibrate_c21(
    p: &HgfParams<f64>,
    m: usize,
    probes: &[(EigenSpectrum<f64>, EigenSpectrum<f64>)],
    trunc: &TruncationPolicy,
) -> Result<DeterminantalConstant> {
    require_hermitian(p)?;
    if probes.is_empty() {
        return Err(HgfError::Invalid("calibration needs at least one probe".into()));
    }
    let mut ratios = Vec::with_capacity(probes.len());
    for (x, y) in probes {
        if x.m() != m || y.m() != m {
            return Err(HgfError::Shape(format!("calibration probe does not have {m} eigenvalues")));
        }
        let series = evaluate_two(p, x, y, trunc)?.value;
        ratios.push(series / det_ratio_two(p, x, y)?);
    }
    let value = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let spread = ratios.iter().map(|r| relative_difference(*r, value)).fold(0.0, f64::max);
    if !(spread <= CALIBRATION_TOLERANCE) {
        return Err(HgfError::Calibration { spread, tolerance: CALIBRATION_TOLERANCE });
    }
    let candidate = closed_form_candidate(p, m);
    Ok(DeterminantalConstant {
        value,
        provenance: Provenance::Calibrated,
        probe_spread: spread,
        m,
        candidate,
        beta_estimate: candidate / value,
        probes: probes.len(),
    })
}
