//! Verification reports and their JSON, CSV and text renderings.
//!
//! JSON schema 1:
//!
//! ```text
//! { "schema": 1, "identity": str, "backend": "exact"|"float",
//!   "parameters": {str: str}, "tolerance": f64, "pass": bool,
//!   "hypotheses": [{"name", "satisfied", "witness", "detail"}],
//!   "probes": [{"index", "probe", "lhs", "rhs", "abs_residual",
//!               "rel_residual", "tolerance", "pass"}],
//!   "notes": [str] }
//! ```
//!
//! Values are strings: `p/q` in the exact backend, shortest round-trip
//! decimals in the floating one. The CSV has one row per probe with columns
//! `identity,index,probe,lhs,rhs,abs_residual,rel_residual,tolerance,pass`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::scalar::{relative_difference, Backend, Scalar};

pub const REPORT_SCHEMA: u32 = 1;

pub const CSV_HEADER: &str = "identity,index,probe,lhs,rhs,abs_residual,rel_residual,tolerance,pass";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub satisfied: bool,
    /// The row `j` that witnesses (or violates) the condition.
    pub witness: Option<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeRecord {
    pub index: usize,
    pub probe: String,
    pub lhs: String,
    pub rhs: String,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub identity: String,
    pub backend: Backend,
    pub parameters: BTreeMap<String, String>,
    pub tolerance: f64,
    pub pass: bool,
    pub hypotheses: Vec<HypothesisCheck>,
    pub probes: Vec<ProbeRecord>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(identity: &str, backend: Backend, tolerance: f64) -> Self {
        VerificationReport {
            schema: REPORT_SCHEMA,
            identity: identity.to_string(),
            backend,
            parameters: BTreeMap::new(),
            tolerance,
            pass: false,
            hypotheses: Vec::new(),
            probes: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    /// `lhs` against `rhs` at the report tolerance.
    pub fn record<S: Scalar>(&mut self, probe: impl fmt::Display, lhs: &S, rhs: &S) {
        let tol = self.tolerance;
        self.record_with_tolerance(probe, lhs, rhs, tol);
    }

    /// Exact backend: passes only on equality. Floating: relative residual against `max(|lhs|, |rhs|)`.
    pub fn record_with_tolerance<S: Scalar>(&mut self, probe: impl fmt::Display, lhs: &S, rhs: &S, tolerance: f64) {
        let abs = (lhs.clone() - rhs.clone()).abs().to_f64();
        let rel = relative_difference(lhs.to_f64(), rhs.to_f64());
        let pass = match S::BACKEND {
            Backend::Exact => lhs == rhs,
            Backend::Float => rel <= tolerance,
        };
        // an exact mismatch too small for f64 still has to show up as nonzero
        let rel = if !pass && rel == 0.0 { f64::MIN_POSITIVE } else { rel };
        self.push(probe, lhs.render(), rhs.render(), abs, rel, tolerance, pass);
    }

    /// A residual measured against an external scale, e.g. `|ab F|` for a differential equation.
    pub fn record_scaled(&mut self, probe: impl fmt::Display, residual: f64, scale: f64, tolerance: f64) {
        let rel = if scale > 0.0 { residual.abs() / scale } else { residual.abs() };
        let pass = rel <= tolerance;
        self.push(probe, residual.render(), 0.0f64.render(), residual.abs(), rel, tolerance, pass);
    }

    #[allow(clippy::too_many_arguments)]
    fn push(&mut self, probe: impl fmt::Display, lhs: String, rhs: String, abs: f64, rel: f64, tolerance: f64, pass: bool) {
        self.probes.push(ProbeRecord {
            index: self.probes.len(),
            probe: probe.to_string(),
            lhs,
            rhs,
            abs_residual: abs,
            rel_residual: rel,
            tolerance,
            pass,
        });
        self.refresh();
    }

    pub fn hypothesis(&mut self, check: HypothesisCheck) {
        self.hypotheses.push(check);
        self.refresh();
    }

    fn refresh(&mut self) {
        self.pass = !self.probes.is_empty()
            && self.probes.iter().all(|p| p.pass)
            && self.hypotheses.iter().all(|h| h.satisfied);
    }

    pub fn max_rel_residual(&self) -> f64 {
        self.probes.iter().map(|p| p.rel_residual).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self, header: bool) -> String {
        let mut out = String::new();
        if header {
            out.push_str(CSV_HEADER);
            out.push('\n');
        }
        for p in &self.probes {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:e},{:e},{:e},{}",
                csv_field(&self.identity),
                p.index,
                csv_field(&p.probe),
                csv_field(&p.lhs),
                csv_field(&p.rhs),
                p.abs_residual,
                p.rel_residual,
                p.tolerance,
                p.pass
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{}: {} ({} backend, tolerance {:e}, max relative residual {:e})",
            self.identity,
            if self.pass { "PASS" } else { "FAIL" },
            self.backend,
            self.tolerance,
            self.max_rel_residual()
        );
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for h in &self.hypotheses {
            let witness = h.witness.map(|j| format!(" (j = {j})")).unwrap_or_default();
            let _ = writeln!(out, "  hypothesis {}: {}{} {}", h.name, h.satisfied, witness, h.detail);
        }
        for p in &self.probes {
            let _ = writeln!(
                out,
                "  [{}] {} {} lhs = {} rhs = {} rel = {:e}",
                p.index,
                if p.pass { "ok  " } else { "FAIL" },
                p.probe,
                p.lhs,
                p.rhs,
                p.rel_residual
            );
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    #[test]
    fn exact_needs_equality() {
        let mut r = VerificationReport::new("demo", Backend::Exact, 1e-8);
        r.record("p0", &ratio(1, 3), &ratio(1, 3));
        assert!(r.pass);
        let tiny = ratio(1, 3) + Rational::new(1.into(), num_bigint::BigInt::from(10).pow(400));
        r.record("p1", &ratio(1, 3), &tiny);
        assert!(!r.pass);
        assert!(r.probes[1].rel_residual > 0.0);
    }

    #[test]
    fn float_uses_tolerance_and_renders() {
        let mut r = VerificationReport::new("demo", Backend::Float, 1e-8);
        r.param("a", 0.5);
        r.record("(0.1,0.2)", &1.0, &(1.0 + 1e-10));
        assert!(r.pass);
        r.record_scaled("pde", 1e-3, 1.0, 1e-5);
        assert!(!r.pass);
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["schema"], 1);
        assert_eq!(json["backend"], "float");
        assert_eq!(json["probes"][0]["probe"], "(0.1,0.2)");
        let csv = r.to_csv(true);
        assert!(csv.starts_with(CSV_HEADER));
        assert!(csv.contains("\"(0.1,0.2)\""));
        assert_eq!(csv.lines().count(), 3);
        assert!(r.to_text().contains("FAIL"));
    }

    #[test]
    fn empty_report_does_not_pass() {
        assert!(!VerificationReport::new("demo", Backend::Float, 1e-8).pass);
    }
}
