//! Verification harness for the matrix-argument identities.
//!
//! Each check evaluates both sides with the series or determinantal engines
//! and returns a [`VerificationReport`]. Hypotheses are checked first and
//! violations are reported as [`crate::HgfError::Hypothesis`].

pub mod classical;
pub mod muirhead;
pub mod quadratic;
pub mod reductions;
pub mod reflection;
pub mod report;

pub use classical::{verify_scalar_identities, ScalarIdentity, ScalarInstance};
pub use muirhead::{muirhead_residual, verify_muirhead, MuirheadResidual};
pub use quadratic::{verify_quadratic_2x2, QuadraticForm};
pub use reductions::verify_det_vs_series;
pub use reflection::{check_reflection_hypotheses, verify_gauss_at_identity, verify_reflection, ReflectionHypotheses};
pub use report::{HypothesisCheck, ProbeRecord, VerificationReport};

/// Default relative tolerance of floating checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
