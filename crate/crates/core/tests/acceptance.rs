//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p hgfmat --test acceptance`. The process exits
//! non-zero when a criterion fails, except for the ones listed in
//! `KNOWN_FAILURES`, which are reported as FAIL but do not stop the build.

use std::time::{Duration, Instant};

use hgfmat::determinantal::{calibrate_c21, calibration_probes, eval_one_det, eval_two_det};
use hgfmat::gammafact::ConeParameter;
use hgfmat::identities::classical::{verify_scalar_identities, ScalarIdentity, ScalarInstance};
use hgfmat::identities::muirhead::muirhead_residual;
use hgfmat::identities::quadratic::{calibrate_quadratic_c21, verify_quadratic_2x2, QuadraticForm, SWAP_TOLERANCE};
use hgfmat::identities::reflection::{check_reflection_hypotheses, verify_gauss_at_identity, verify_reflection};
use hgfmat::matrixhgf::{evaluate, evaluate_two, EigenSpectrum, HgfParams};
use hgfmat::partitions::enumerate;
use hgfmat::probes::ProbePlan;
use hgfmat::scalar::{ratio, relative_difference, Rational, Scalar};
use hgfmat::scalarhgf::{gauss_2f1, ScalarHgfParams};
use hgfmat::series::TruncationPolicy;
use hgfmat::symfunc::{jack_c_cached, MonomialCache};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The as-stated 2 × 2 quadratic display does not hold (see the AC6-rederived line).
const KNOWN_FAILURES: &[&str] = &["AC6"];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn cones(ds: &[(i64, i64)]) -> Vec<ConeParameter> {
    ds.iter().map(|&(p, q)| ConeParameter::from_ratio(p, q).unwrap()).collect()
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-20..=20), rng.gen_range(1..=20))
}

// AC1: Σ_{|κ|=k} C_κ(x; d) = (Σ xᵢ)^k exactly, m ≤ 4, k ≤ 8, d ∈ {1/4, 1/2, 1, 2}, 10 spectra each.
fn ac1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    for d in cones(&[(1, 4), (1, 2), (1, 1), (2, 1)]) {
        for m in 1..=4 {
            for k in 0..=8u32 {
                for _ in 0..10 {
                    let x: Vec<Rational> = (0..m).map(|_| random_rational(&mut rng)).collect();
                    let mut mono = MonomialCache::new(&x);
                    let shell = enumerate(k, m)
                        .iter()
                        .fold(ratio(0, 1), |acc, kappa| acc + jack_c_cached(kappa, &d, &mut mono));
                    let trace = x.iter().fold(ratio(0, 1), |acc, v| acc + v.clone());
                    if shell != trace.powi(k) {
                        return Outcome::new(false, format!("m={m} k={k} d={d} x={x:?}: nonzero residual"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Outcome::new(true, format!("{checked} exact shell identities, residual 0"))
}

/// Terminating classical grid: a ∈ {-1,-2,-3}, rational b, c, x ∈ (0,1), filtered by the hypotheses.
fn classical_grid() -> Vec<ScalarInstance<Rational>> {
    let bs = [ratio(1, 3), ratio(2, 7), ratio(5, 4), ratio(-3, 5), ratio(7, 3)];
    let cs = [ratio(5, 2), ratio(7, 3), ratio(-1, 2), ratio(9, 5)];
    let xs = [ratio(1, 4), ratio(2, 3), ratio(1, 7), ratio(5, 9)];
    let mut out = Vec::new();
    let mut i = 0;
    for a in [-1i64, -2, -3] {
        for b in &bs {
            for c in &cs {
                let x = xs[i % xs.len()].clone();
                i += 1;
                let reflected = ratio(a, 1) + b.clone() + ratio(1, 1) - c.clone();
                let pole = |v: &Rational| matches!(v.nonpositive_integer(), Some(k) if k < (-a) as u64);
                let gauss_zero = (0..-a).any(|k| (c.clone() - b.clone() + ratio(k, 1)).is_zero());
                if pole(c) || pole(&reflected) || gauss_zero {
                    continue;
                }
                out.push(ScalarInstance::new(ratio(a, 1), b.clone(), c.clone(), vec![x]));
            }
        }
    }
    out.truncate(50);
    out
}

// AC2: classical reflection, exact, on the 50-instance grid.
fn ac2() -> Outcome {
    let grid = classical_grid();
    if grid.len() != 50 {
        return Outcome::new(false, format!("grid has {} instances, need 50", grid.len()));
    }
    match verify_scalar_identities(ScalarIdentity::Reflection, &grid, 0.0) {
        Ok(r) => {
            let zero = r.probes.iter().all(|p| p.abs_residual == 0.0 && p.lhs == p.rhs);
            Outcome::new(r.pass && zero, format!("{} instances, all residuals exactly 0: {}", r.probes.len(), zero))
        }
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

// AC3: matrix reflection, exact for d ∈ {1/2, 1}, floating ≤ 1e-10 for d ∈ {1/4, 2}; m ∈ {2, 3}, a ∈ {-1, -2}.
fn ac3() -> Outcome {
    let bcs = [(ratio(1, 3), ratio(13, 4)), (ratio(2, 7), ratio(17, 6))];
    let t = TruncationPolicy::default();
    let mut exact_cases = 0;
    let mut float_cases = 0;
    let mut worst: f64 = 0.0;
    for m in [2usize, 3] {
        for a in [-1i64, -2] {
            for (b, c) in &bcs {
                for d in cones(&[(1, 2), (1, 1)]) {
                    let p = HgfParams::new(ratio(a, 1), b.clone(), c.clone(), d.clone());
                    if !check_reflection_hypotheses(&p, m).all_satisfied() {
                        return Outcome::new(false, format!("grid point violates hypotheses: {p:?}"));
                    }
                    let probes = ProbePlan::new(m, 3, (m * 10) as u64 + (-a) as u64).spectra::<Rational>();
                    match verify_reflection(&p, m, &probes, &t, 0.0) {
                        Ok(r) if r.pass => exact_cases += r.probes.len(),
                        Ok(r) => return Outcome::new(false, format!("exact mismatch:\n{}", r.to_text())),
                        Err(e) => return Outcome::new(false, e.to_string()),
                    }
                }
                for d in cones(&[(1, 4), (2, 1)]) {
                    let p = HgfParams::new(a as f64, b.to_f64(), c.to_f64(), d.clone());
                    let probes = ProbePlan::new(m, 3, (m * 10) as u64 + (-a) as u64).spectra::<f64>();
                    match verify_reflection(&p, m, &probes, &t, 1e-10) {
                        Ok(r) => {
                            worst = worst.max(r.max_rel_residual());
                            if !r.pass {
                                return Outcome::new(false, format!("floating residual too large:\n{}", r.to_text()));
                            }
                            float_cases += r.probes.len();
                        }
                        Err(e) => return Outcome::new(false, e.to_string()),
                    }
                }
            }
        }
    }
    Outcome::new(
        true,
        format!("{exact_cases} exact probes (residual 0), {float_cases} floating probes (max rel {worst:.1e} ≤ 1e-10)"),
    )
}

// AC4: Gauss summation at the identity, exact, m ≤ 3, d ∈ {1/2, 1}, n ≤ 4, including 104/135.
fn ac4() -> Outcome {
    let special = HgfParams::new(ratio(-1, 1), ratio(1, 3), ratio(3, 1), ConeParameter::real_symmetric());
    match verify_gauss_at_identity(&special, 2, 0.0) {
        Ok(r) if r.pass && r.probes[0].lhs == "104/135" && r.probes[0].rhs == "104/135" => {}
        Ok(r) => return Outcome::new(false, format!("special case:\n{}", r.to_text())),
        Err(e) => return Outcome::new(false, e.to_string()),
    }
    let mut count = 1;
    for d in cones(&[(1, 2), (1, 1)]) {
        for m in 1..=3usize {
            for n in 0..=4i64 {
                for (b, c) in [(ratio(1, 3), ratio(6, 1)), (ratio(1, 2), ratio(11, 2)), (ratio(-2, 5), ratio(9, 2))] {
                    let p = HgfParams::new(ratio(-n, 1), b, c, d.clone());
                    match verify_gauss_at_identity(&p, m, 0.0) {
                        Ok(r) if r.pass => count += 1,
                        Ok(r) => return Outcome::new(false, r.to_text()),
                        Err(e) => return Outcome::new(false, format!("m={m} n={n} d={d}: {e}")),
                    }
                }
            }
        }
    }
    Outcome::new(true, format!("{count} exact equalities incl. 104/135 at (m,d,a,b,c)=(2,1/2,-1,1/3,3)"))
}

// AC5: determinantal vs series after calibration, m = 2, 3, 10 probes each with one confluent probe.
fn ac5() -> Outcome {
    let p = HgfParams::new(2.5, 3.1, 5.0, ConeParameter::hermitian());
    let t = TruncationPolicy::default();
    let mut worst: f64 = 0.0;
    let mut lines = Vec::new();
    for m in [2usize, 3] {
        let c21 = match calibrate_c21(&p, m, &calibration_probes(m, 5, 100 + m as u64), &t) {
            Ok(c) => c,
            Err(e) => return Outcome::new(false, format!("m={m}: {e}")),
        };
        if c21.probe_spread > 1e-8 {
            return Outcome::new(false, format!("m={m}: spread {:e}", c21.probe_spread));
        }
        let xs = ProbePlan::new(m, 9, 7 + m as u64).range(ratio(1, 20), ratio(9, 20)).min_gap(ratio(1, 50)).spectra::<f64>();
        let ys = ProbePlan::new(m, 10, 8 + m as u64).range(ratio(1, 20), ratio(3, 5)).min_gap(ratio(1, 50)).spectra::<f64>();
        let mut confluent = xs[0].values().to_vec();
        confluent[1] = confluent[0];
        let mut all = xs.clone();
        all.push(EigenSpectrum::new(confluent).unwrap());
        for (x, y) in all.iter().zip(&ys) {
            let one = (|| Ok::<_, hgfmat::HgfError>((eval_one_det(&p, x)?, evaluate(&p, x, &t)?.value)))();
            let two = (|| Ok::<_, hgfmat::HgfError>((eval_two_det(&p, x, y, &c21)?, evaluate_two(&p, x, y, &t)?.value)))();
            match (one, two) {
                (Ok((d1, s1)), Ok((d2, s2))) => {
                    let r = relative_difference(d1, s1).max(relative_difference(d2, s2));
                    worst = worst.max(r);
                    if r > 1e-9 {
                        return Outcome::new(false, format!("m={m} X={x} Y={y}: rel {r:e}"));
                    }
                }
                (Err(e), _) | (_, Err(e)) => return Outcome::new(false, format!("m={m} X={x}: {e}")),
            }
        }
        lines.push(format!("m={m} c21={:.12} spread={:.1e} beta={:.6}", c21.value, c21.probe_spread, c21.beta_estimate));
    }
    Outcome::new(true, format!("max rel {worst:.1e} ≤ 1e-9; {}", lines.join("; ")))
}

fn quadratic_probes() -> Vec<EigenSpectrum<f64>> {
    ProbePlan::new(2, 10, 5).range(ratio(1, 50), ratio(2, 5)).min_gap(ratio(1, 50)).spectra::<f64>()
}

const QUADRATIC_PAIRS: [(f64, f64); 3] = [(0.7, 1.3), (1.5, 0.6), (0.35, 2.2)];

// AC6: the 2 × 2 quadratic transformation, relative residual ≤ 1e-8, swap symmetry ≤ 1e-9.
fn ac6(form: QuadraticForm) -> Outcome {
    let probes = quadratic_probes();
    let t = TruncationPolicy::default();
    let mut worst: f64 = 0.0;
    let mut worst_swap: f64 = 0.0;
    let mut pass = true;
    for (alpha, beta) in QUADRATIC_PAIRS {
        let c21 = match calibrate_quadratic_c21(alpha, beta, 3) {
            Ok(c) => c,
            Err(e) => return Outcome::new(false, format!("calibration (α,β)=({alpha},{beta}): {e}")),
        };
        match verify_quadratic_2x2(alpha, beta, &probes, &c21, form, &t, 1e-8) {
            Ok(r) => {
                for rec in &r.probes {
                    if rec.probe.ends_with("swap") {
                        worst_swap = worst_swap.max(rec.rel_residual);
                    } else {
                        worst = worst.max(rec.rel_residual);
                    }
                }
                pass &= r.pass;
            }
            Err(e) => return Outcome::new(false, e.to_string()),
        }
    }
    Outcome::new(
        pass,
        format!(
            "30 probes, max rel residual {worst:.1e} (tol 1e-8), max swap asymmetry {worst_swap:.1e} (tol {SWAP_TOLERANCE:.0e})"
        ),
    )
}

// AC7: Muirhead residual ≤ 1e-5 |abF| at 5 probes for (m, d) ∈ {(1, 2), (2, 1/2), (2, 1)};
// halving h shrinks the residual by a factor in [3, 5].
fn ac7() -> Outcome {
    let cases = [
        (1usize, ConeParameter::from_ratio(2, 1).unwrap(), (0.5, 1.5, 2.2)),
        (2, ConeParameter::real_symmetric(), (0.6, 0.9, 2.3)),
        (2, ConeParameter::hermitian(), (0.6, 0.9, 2.3)),
    ];
    let t = TruncationPolicy::fixed(60);
    let (h, h2) = (1e-3, 2e-3);
    let mut worst: f64 = 0.0;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for (m, d, (a, b, c)) in cases {
        let p = HgfParams::new(a, b, c, d.clone());
        let probes = ProbePlan::new(m, 5, 17).range(ratio(1, 10), ratio(1, 2)).min_gap(ratio(1, 20)).spectra::<f64>();
        for x in &probes {
            for i in 0..m {
                let (fine, coarse) = match (muirhead_residual(&p, x, i, h, &t), muirhead_residual(&p, x, i, h2, &t)) {
                    (Ok(f), Ok(c)) => (f, c),
                    (Err(e), _) | (_, Err(e)) => return Outcome::new(false, e.to_string()),
                };
                worst = worst.max(fine.relative());
                let factor = coarse.residual.abs() / fine.residual.abs();
                lo = lo.min(factor);
                hi = hi.max(factor);
                if fine.relative() > 1e-5 || !(3.0..=5.0).contains(&factor) {
                    return Outcome::new(
                        false,
                        format!("m={m} d={d} X={x} i={i}: rel {:.2e}, halving factor {factor:.3}", fine.relative()),
                    );
                }
            }
        }
    }
    Outcome::new(true, format!("max rel residual {worst:.1e} ≤ 1e-5, halving factors in [{lo:.3}, {hi:.3}]"))
}

// AC8: scalar quadratic and Hannah's form ≤ 1e-11 on 20 probes each; ratio constancy ≤ 1e-11 at 3 points.
fn ac8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let quad: Vec<ScalarInstance<f64>> = (0..20)
        .map(|_| ScalarInstance::new(rng.gen_range(0.1..2.0), rng.gen_range(0.3..2.5), 0.0, vec![rng.gen_range(0.0..=0.6)]))
        .collect();
    let hannah: Vec<ScalarInstance<f64>> = (0..20)
        .map(|_| {
            let n = rng.gen_range(1..=4) as f64;
            ScalarInstance::new(-n, rng.gen_range(0.1..3.0), rng.gen_range(3.1..6.0), vec![rng.gen_range(0.05..0.95)])
        })
        .collect();
    let ratio_cases: Vec<ScalarInstance<f64>> = vec![
        ScalarInstance::new(-3.0, 0.4, 1.7, vec![0.2, 0.5, 0.8]),
        ScalarInstance::new(-2.0, 1.3, 3.6, vec![0.2, 0.5, 0.8]),
        ScalarInstance::new(-4.0, 0.25, 2.2, vec![0.2, 0.5, 0.8]),
    ];
    let mut parts = Vec::new();
    for (id, cases) in [
        (ScalarIdentity::Quadratic, &quad),
        (ScalarIdentity::Hannah, &hannah),
        (ScalarIdentity::RatioConstancy, &ratio_cases),
    ] {
        match verify_scalar_identities(id, cases, 1e-11) {
            Ok(r) if r.pass => parts.push(format!("{} max rel {:.1e}", id.name(), r.max_rel_residual())),
            Ok(r) => return Outcome::new(false, r.to_text()),
            Err(e) => return Outcome::new(false, e.to_string()),
        }
    }
    Outcome::new(true, parts.join(", "))
}

// AC9: m = 1 matrix series equals the classical series shell for shell, exactly, on the terminating grid.
fn ac9() -> Outcome {
    let t = TruncationPolicy::default();
    let mut count = 0;
    for inst in classical_grid() {
        for d in cones(&[(1, 4), (1, 2), (1, 1), (2, 1)]) {
            let mp = HgfParams::new(inst.a.clone(), inst.b.clone(), inst.c.clone(), d);
            let sp = ScalarHgfParams::new(inst.a.clone(), inst.b.clone(), inst.c.clone());
            for x in &inst.points {
                let matrix = evaluate(&mp, &EigenSpectrum::new(vec![x.clone()]).unwrap(), &t);
                let scalar = gauss_2f1(&sp, x, &t);
                match (matrix, scalar) {
                    (Ok(mr), Ok(sr)) if mr.shells == sr.shells && mr.value == sr.value => count += 1,
                    (Ok(_), Ok(_)) => return Outcome::new(false, format!("shell mismatch at {inst:?}")),
                    (Err(e), _) | (_, Err(e)) => return Outcome::new(false, e.to_string()),
                }
            }
        }
    }
    Outcome::new(true, format!("{count} instances identical shell for shell"))
}

fn main() {
    let criteria: Vec<(&str, &str, Duration, Box<dyn Fn() -> Outcome>)> = vec![
        ("AC1", "Jack normalization (exact)", Duration::from_secs(60), Box::new(ac1)),
        ("AC2", "classical reflection (exact)", Duration::from_secs(5), Box::new(ac2)),
        ("AC3", "matrix and Jack reflection", Duration::from_secs(120), Box::new(ac3)),
        ("AC4", "Gauss summation at I (exact)", Duration::from_secs(10), Box::new(ac4)),
        ("AC5", "determinantal vs series", Duration::from_secs(60), Box::new(ac5)),
        ("AC6", "2x2 quadratic transformation, as stated", Duration::from_secs(60), Box::new(|| ac6(QuadraticForm::Printed))),
        (
            "AC6-rederived",
            "2x2 quadratic transformation, rederived bracket",
            Duration::from_secs(60),
            Box::new(|| ac6(QuadraticForm::Rederived)),
        ),
        ("AC7", "Muirhead PDE residuals", Duration::from_secs(60), Box::new(ac7)),
        ("AC8", "scalar quadratic, Hannah, ratio constancy", Duration::from_secs(5), Box::new(ac8)),
        ("AC9", "m = 1 reduction (exact)", Duration::from_secs(5), Box::new(ac9)),
    ];
    let mut unexpected = Vec::new();
    for (id, title, budget, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *budget;
        let pass = outcome.pass && in_time;
        let status = if pass { "PASS" } else { "FAIL" };
        let timing = format!("{:.2}s / {}s", elapsed.as_secs_f64(), budget.as_secs());
        let known = if !pass && KNOWN_FAILURES.contains(id) { " [known failure]" } else { "" };
        println!("{id} {status}{known} {title} ({timing}): {}", outcome.detail);
        if !pass && !KNOWN_FAILURES.contains(id) {
            unexpected.push(*id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {}", unexpected.join(", "));
        std::process::exit(1);
    }
}
