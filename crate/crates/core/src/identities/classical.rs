//! Identities of the classical `₂F₁`.
//!
//! - reflection: `₂F₁(a, b; a+b+1-c; 1-x) = Γ(c-a)Γ(c-b)/(Γ(c)Γ(c-a-b)) · ₂F₁(a, b; c; x)`, `a = -n`
//! - Hannah's form: `₂F₁(-n, b; c; 1-x) = (c-b)_n/(c)_n · ₂F₁(-n, b; -n+b+1-c; x)`
//! - ratio constancy: `₂F₁(a, b; a+b+1-c; 1-x) / ₂F₁(a, b; c; x)` does not depend on `x`
//! - quadratic: `₂F₁(α, α-β+1/2; β+1/2; t²) = (1+t)^{-2α} ₂F₁(α, β; 2β; 4t/(1+t)²)`

use serde::Serialize;

use crate::error::{HgfError, Result};
use crate::gammafact::rising_factorial;
use crate::identities::report::VerificationReport;
use crate::scalar::{Backend, Scalar};
use crate::scalarhgf::{gauss_2f1, gauss_2f1_at_1, ScalarHgfParams};
use crate::series::TruncationPolicy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalarIdentity {
    Reflection,
    Hannah,
    RatioConstancy,
    Quadratic,
}

impl ScalarIdentity {
    pub fn name(self) -> &'static str {
        match self {
            ScalarIdentity::Reflection => "scalar-reflection",
            ScalarIdentity::Hannah => "hannah",
            ScalarIdentity::RatioConstancy => "ratio-constancy",
            ScalarIdentity::Quadratic => "scalar-quadratic",
        }
    }
}

/// One parameter set with its probe points. For [`ScalarIdentity::Quadratic`]
/// `a` and `b` hold `α` and `β` and `c` is unused.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarInstance<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub points: Vec<S>,
}

impl<S: Scalar> ScalarInstance<S> {
    pub fn new(a: S, b: S, c: S, points: Vec<S>) -> Self {
        ScalarInstance { a, b, c, points }
    }

    fn params(&self) -> ScalarHgfParams<S> {
        ScalarHgfParams::new(self.a.clone(), self.b.clone(), self.c.clone())
    }

    fn label(&self, x: &S) -> String {
        format!("a={} b={} c={} x={}", self.a.render(), self.b.render(), self.c.render(), x.render())
    }
}

/// `c ∉ {0, -1, …, -n+1}`, i.e. `(c)_n ≠ 0`.
fn pole_free_up_to<S: Scalar>(c: &S, n: u64) -> bool {
    !matches!(c.nonpositive_integer(), Some(k) if k < n)
}

/// Runs `identity` on every instance. Exact mode demands equality; the
/// quadratic form involves `(1+t)^{-2α}` and is always checked in floating point.
pub fn verify_scalar_identities<S: Scalar>(
    identity: ScalarIdentity,
    instances: &[ScalarInstance<S>],
    tolerance: f64,
) -> Result<VerificationReport> {
    let backend = if identity == ScalarIdentity::Quadratic { Backend::Float } else { S::BACKEND };
    let mut report = VerificationReport::new(identity.name(), backend, tolerance);
    report.param("instances", instances.len());
    let trunc = TruncationPolicy::scalar();
    for inst in instances {
        match identity {
            ScalarIdentity::Reflection => reflection(inst, &trunc, &mut report)?,
            ScalarIdentity::Hannah => hannah(inst, &trunc, &mut report)?,
            ScalarIdentity::RatioConstancy => ratio_constancy(inst, &trunc, &mut report)?,
            ScalarIdentity::Quadratic => quadratic(inst, tolerance, &mut report)?,
        }
    }
    Ok(report)
}

fn require_terminating<S: Scalar>(inst: &ScalarInstance<S>) -> Result<u64> {
    inst.a
        .nonpositive_integer()
        .ok_or_else(|| HgfError::Hypothesis(format!("-a ∈ ℕ is required, got a = {}", inst.a.render())))
}

fn require_unit_interval<S: Scalar>(x: &S) -> Result<()> {
    if *x <= S::zero() || *x >= S::one() {
        return Err(HgfError::Hypothesis(format!("x = {} is not in (0, 1)", x.render())));
    }
    Ok(())
}

/// `Γ(c-a)Γ(c-b) / (Γ(c)Γ(c-a-b))`, the reciprocal of the Gauss sum.
fn reflection_constant<S: Scalar>(p: &ScalarHgfParams<S>) -> Result<S> {
    let g = gauss_2f1_at_1(p)?;
    if g.is_zero() {
        return Err(HgfError::Hypothesis("(c-b)_n = 0: the gamma ratio is infinite".into()));
    }
    Ok(S::one() / g)
}

fn reflected<S: Scalar>(p: &ScalarHgfParams<S>) -> ScalarHgfParams<S> {
    let c = p.a.clone() + p.b.clone() + S::one() - p.c.clone();
    ScalarHgfParams::new(p.a.clone(), p.b.clone(), c)
}

fn reflection<S: Scalar>(inst: &ScalarInstance<S>, trunc: &TruncationPolicy, report: &mut VerificationReport) -> Result<()> {
    let n = require_terminating(inst)?;
    let p = inst.params();
    let r = reflected(&p);
    if !pole_free_up_to(&p.c, n) || !pole_free_up_to(&r.c, n) {
        return Err(HgfError::Hypothesis(format!(
            "c = {} or a+b+1-c = {} hits a pole of the terminating series",
            p.c.render(),
            r.c.render()
        )));
    }
    let constant = reflection_constant(&p)?;
    for x in &inst.points {
        require_unit_interval(x)?;
        let lhs = gauss_2f1(&r, &(S::one() - x.clone()), trunc)?.value;
        let rhs = constant.clone() * gauss_2f1(&p, x, trunc)?.value;
        report.record(inst.label(x), &lhs, &rhs);
    }
    Ok(())
}

fn hannah<S: Scalar>(inst: &ScalarInstance<S>, trunc: &TruncationPolicy, report: &mut VerificationReport) -> Result<()> {
    let n = require_terminating(inst)?;
    let p = inst.params();
    let lower = -S::of(n as i64) + p.b.clone() + S::one() - p.c.clone();
    if !pole_free_up_to(&p.c, n) || !pole_free_up_to(&lower, n) {
        return Err(HgfError::Hypothesis(format!(
            "c = {} or 1+b-c-n = {} lies in {{0, -1, …, -n+1}}",
            p.c.render(),
            lower.render()
        )));
    }
    let constant = rising_factorial(&(p.c.clone() - p.b.clone()), n as u32) / rising_factorial(&p.c, n as u32);
    let right = ScalarHgfParams::new(p.a.clone(), p.b.clone(), lower);
    for x in &inst.points {
        require_unit_interval(x)?;
        let lhs = gauss_2f1(&p, &(S::one() - x.clone()), trunc)?.value;
        let rhs = constant.clone() * gauss_2f1(&right, x, trunc)?.value;
        report.record(inst.label(x), &lhs, &rhs);
    }
    Ok(())
}

fn ratio_constancy<S: Scalar>(inst: &ScalarInstance<S>, trunc: &TruncationPolicy, report: &mut VerificationReport) -> Result<()> {
    require_terminating(inst)?;
    let p = inst.params();
    let r = reflected(&p);
    let constant = reflection_constant(&p)?;
    if inst.b.is_natural() || inst.c.is_natural() {
        report.note(format!("b or c in ℕ for {}: recorded, not excluded", inst.label(&S::zero())));
    }
    let mut first: Option<S> = None;
    for x in &inst.points {
        require_unit_interval(x)?;
        let denominator = gauss_2f1(&p, x, trunc)?.value;
        if denominator.is_zero() {
            return Err(HgfError::Hypothesis(format!("₂F₁(a, b; c; x) vanishes at x = {}", x.render())));
        }
        let value = gauss_2f1(&r, &(S::one() - x.clone()), trunc)?.value / denominator;
        report.record(inst.label(x), &value, &constant);
        match &first {
            None => first = Some(value),
            Some(v) => report.record(format!("{} vs first point", inst.label(x)), &value, v),
        }
    }
    Ok(())
}

fn quadratic<S: Scalar>(inst: &ScalarInstance<S>, tolerance: f64, report: &mut VerificationReport) -> Result<()> {
    let (alpha, beta) = (inst.a.to_f64(), inst.b.to_f64());
    for v in [2.0 * beta, beta + 0.5] {
        if v.nonpositive_integer().is_some() {
            return Err(HgfError::Hypothesis(format!("2β or β+1/2 is a nonpositive integer (β = {beta})")));
        }
    }
    let trunc = TruncationPolicy::scalar();
    for t in &inst.points {
        let t = t.to_f64();
        if t.abs() >= 1.0 {
            return Err(HgfError::Hypothesis(format!("|t| = {} ≥ 1", t.abs())));
        }
        let lhs = gauss_2f1(&ScalarHgfParams::new(alpha, alpha - beta + 0.5, beta + 0.5), &(t * t), &trunc)?.value;
        let z = 4.0 * t / ((1.0 + t) * (1.0 + t));
        let rhs = (1.0 + t).powf(-2.0 * alpha) * gauss_2f1(&ScalarHgfParams::new(alpha, beta, 2.0 * beta), &z, &trunc)?.value;
        report.record_with_tolerance(format!("alpha={alpha} beta={beta} t={t}"), &lhs, &rhs, tolerance);
    }
    Ok(())
}
