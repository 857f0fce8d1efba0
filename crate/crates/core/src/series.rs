//! Truncation control shared by the scalar and matrix series.
//!
//! Summation is by total degree. A non-terminating series stops once two
//! consecutive shells are both below `rel_tol · |partial sum|` and the weight
//! has reached `min_weight`, or at `max_weight` at the latest. A terminating
//! series is always summed to its last nonzero shell, regardless of the cap.
//! The magnitude of the last shell is reported as an accuracy proxy; it is
//! not a rigorous tail bound.

use serde::Serialize;

use crate::scalar::{Backend, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncationPolicy {
    pub max_weight: u32,
    pub rel_tol: f64,
    pub min_weight: u32,
}

pub const DEFAULT_MAX_WEIGHT: u32 = 40;
pub const DEFAULT_REL_TOL: f64 = 1e-16;
pub const DEFAULT_MIN_WEIGHT: u32 = 8;

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            max_weight: DEFAULT_MAX_WEIGHT,
            rel_tol: DEFAULT_REL_TOL,
            min_weight: DEFAULT_MIN_WEIGHT,
        }
    }
}

impl TruncationPolicy {
    pub fn new(max_weight: u32, rel_tol: f64) -> Self {
        TruncationPolicy { max_weight, rel_tol, ..Self::default() }
    }

    /// Always sums exactly `weight` shells (unless the series terminates
    /// earlier). Finite-difference stencils need this so that every point
    /// sees the same polynomial.
    pub fn fixed(weight: u32) -> Self {
        TruncationPolicy { max_weight: weight, rel_tol: DEFAULT_REL_TOL, min_weight: weight }
    }

    /// Policy for classical series used as matrix entries, which may sit close to |x| = 1.
    pub fn scalar() -> Self {
        TruncationPolicy { max_weight: 200_000, rel_tol: DEFAULT_REL_TOL, min_weight: DEFAULT_MIN_WEIGHT }
    }
}

/// Outcome of a series evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResult<S> {
    pub value: S,
    /// Highest weight that was summed.
    pub max_weight_used: u32,
    /// `|shell|` of the last summed shell (last nonzero shell if terminated).
    pub last_shell_magnitude: f64,
    /// The series is a polynomial and was summed completely.
    pub terminated: bool,
    /// The stopping rule fired before the weight cap.
    pub converged: bool,
    pub backend: Backend,
    /// Per-weight shell sums, index = weight.
    pub shells: Vec<S>,
    pub warnings: Vec<String>,
}

impl<S: Scalar> SeriesResult<S> {
    pub fn constant(value: S) -> Self {
        SeriesResult {
            shells: vec![value.clone()],
            value,
            max_weight_used: 0,
            last_shell_magnitude: 0.0,
            terminated: true,
            converged: true,
            backend: S::BACKEND,
            warnings: Vec::new(),
        }
    }
}

/// Accumulates shells and decides when to stop.
pub(crate) struct ShellAccumulator<S> {
    policy: TruncationPolicy,
    bound: Option<u32>,
    sum: S,
    shells: Vec<S>,
    previous_small: bool,
    converged: bool,
    last_nonzero: f64,
}

pub(crate) enum Step {
    Continue,
    Done,
}

impl<S: Scalar> ShellAccumulator<S> {
    pub fn new(policy: TruncationPolicy, bound: Option<u32>) -> Self {
        ShellAccumulator {
            policy,
            bound,
            sum: S::zero(),
            shells: Vec::new(),
            previous_small: false,
            converged: false,
            last_nonzero: 0.0,
        }
    }

    /// Adds the shell of weight `shells.len()`.
    pub fn push(&mut self, shell: S) -> Step {
        let k = self.shells.len() as u32;
        let magnitude = shell.abs().to_f64();
        if magnitude > 0.0 {
            self.last_nonzero = magnitude;
        }
        self.sum = self.sum.clone() + shell.clone();
        self.shells.push(shell);

        if let Some(bound) = self.bound {
            return if k >= bound { Step::Done } else { Step::Continue };
        }
        let small = k > 0 && magnitude <= self.policy.rel_tol * self.sum.abs().to_f64();
        let converged = small && self.previous_small && k >= self.policy.min_weight;
        self.previous_small = small;
        self.converged = converged;
        if converged || k >= self.policy.max_weight {
            Step::Done
        } else {
            Step::Continue
        }
    }

    pub fn finish(self, warnings: Vec<String>) -> SeriesResult<S> {
        let k = self.shells.len().saturating_sub(1) as u32;
        let terminated = self.bound.is_some();
        let converged = terminated || self.converged;
        let last = if terminated {
            self.last_nonzero
        } else {
            self.shells.last().map(|s| s.abs().to_f64()).unwrap_or(0.0)
        };
        let mut warnings = warnings;
        if !converged {
            warnings.push(format!(
                "weight cap {} reached before the stopping rule fired (last shell {:e})",
                self.policy.max_weight, last
            ));
        }
        SeriesResult {
            value: self.sum,
            max_weight_used: k,
            last_shell_magnitude: last,
            terminated,
            converged,
            backend: S::BACKEND,
            shells: self.shells,
            warnings,
        }
    }
}
