//! Gaussian hypergeometric functions of matrix argument.
//!
//! The series `₂F₁(a, b; c; X; d)` is summed over Jack polynomials in
//! C-normalization, with an exact rational backend for terminating cases and
//! an `f64` backend with heuristic truncation otherwise. For the Hermitian
//! case (`d = 1`) the determinantal reductions to classical `₂F₁` are
//! available, and [`identities`] checks the reflection formula, the Gauss
//! summation at the identity, the Muirhead differential equations and the
//! `2 × 2` quadratic transformation.

pub mod determinantal;
pub mod error;
pub mod gammafact;
pub mod identities;
pub mod linalg;
pub mod matrixhgf;
pub mod partitions;
pub mod probes;
pub mod scalar;
pub mod scalarhgf;
pub mod series;
pub mod symfunc;

pub use error::{HgfError, Result};
pub use gammafact::ConeParameter;
pub use matrixhgf::{evaluate, evaluate_two, termination_bound, EigenSpectrum, HgfParams};
pub use partitions::Partition;
pub use scalar::{Backend, Rational, Scalar};
pub use series::{SeriesResult, TruncationPolicy};
