use std::time::Instant;

use hgfmat::determinantal::{calibrate_c21, calibration_probes, DeterminantalConstant};
use hgfmat::gammafact::ConeParameter;
use hgfmat::identities::classical::{verify_scalar_identities, ScalarIdentity, ScalarInstance};
use hgfmat::identities::quadratic::{calibrate_quadratic_c21, verify_quadratic_2x2, QuadraticForm};
use hgfmat::identities::reflection::{verify_gauss_at_identity, verify_reflection};
use hgfmat::identities::{verify_det_vs_series, verify_muirhead, VerificationReport};
use hgfmat::matrixhgf::{evaluate, evaluate_two, EigenSpectrum, HgfParams};
use hgfmat::partitions::enumerate;
use hgfmat::probes::ProbePlan;
use hgfmat::scalar::{ratio, Backend, Rational, Scalar};
use hgfmat::series::{SeriesResult, TruncationPolicy};
use hgfmat::{HgfError, Result};
use serde_json::{json, Value};

use crate::{exit, BackendArg, BenchArgs, CalibrateArgs, Cli, Command, EvalArgs, FormArg, Identity, OutputFormat, ParamArgs, RunConfig, VerifyArgs};

pub fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Eval(args) => match cli.run.backend {
            Some(BackendArg::Exact) => eval::<Rational>(&cli.run, args),
            _ => eval::<f64>(&cli.run, args),
        },
        Command::Verify(args) => verify(&cli.run, args),
        Command::Calibrate(args) => calibrate(&cli.run, args),
        Command::Bench(args) => bench(&cli.run, args),
    }
}

fn truncation(run: &RunConfig, default_weight: u32) -> TruncationPolicy {
    TruncationPolicy::new(run.max_weight.unwrap_or(default_weight), run.rel_tol)
}

fn value<S: Scalar>(given: &Option<String>, default: Option<&str>, flag: &str) -> Result<S> {
    match (given, default) {
        (Some(text), _) => S::parse_value(text),
        (None, Some(text)) => S::parse_value(text),
        (None, None) => Err(HgfError::Invalid(format!("missing --{flag}"))),
    }
}

/// Parameters from the flags, falling back to `defaults = (a, b, c, d)`.
fn params<S: Scalar>(args: &ParamArgs, defaults: [Option<&str>; 4]) -> Result<HgfParams<S>> {
    let d_text = args.d.as_deref().or(defaults[3]).unwrap_or("1/2");
    let d: ConeParameter = d_text.parse()?;
    Ok(HgfParams::new(
        value(&args.a, defaults[0], "a")?,
        value(&args.b, defaults[1], "b")?,
        value(&args.c, defaults[2], "c")?,
        d,
    ))
}

fn float_only(run: &RunConfig, what: &str) -> Result<()> {
    if run.backend == Some(BackendArg::Exact) {
        return Err(HgfError::Invalid(format!("{what} is only available with --backend float")));
    }
    Ok(())
}

/// Prints a flat record in the requested format.
fn emit_record(run: &RunConfig, fields: &[(&str, Value)]) {
    match run.output {
        OutputFormat::Json => {
            let map: serde_json::Map<String, Value> = fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            println!("{}", serde_json::to_string_pretty(&Value::Object(map)).expect("json"));
        }
        OutputFormat::Csv => {
            println!("field,value");
            for (k, v) in fields {
                println!("{k},{}", csv_cell(&plain(v)));
            }
        }
        OutputFormat::Text => {
            for (k, v) in fields {
                println!("{k}: {}", plain(v));
            }
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn emit_report(run: &RunConfig, report: &VerificationReport) -> u8 {
    match run.output {
        OutputFormat::Json => println!("{}", report.to_json()),
        OutputFormat::Csv => print!("{}", report.to_csv(true)),
        OutputFormat::Text => print!("{}", report.to_text()),
    }
    if report.pass {
        exit::PASS
    } else {
        exit::FAIL
    }
}

fn eval<S: Scalar>(run: &RunConfig, args: &EvalArgs) -> Result<u8> {
    let p: HgfParams<S> = params(&args.params, [None, None, None, None])?;
    let x: EigenSpectrum<S> = args.eig.parse()?;
    let trunc = truncation(run, hgfmat::series::DEFAULT_MAX_WEIGHT);
    let result = match &args.eig2 {
        None => evaluate(&p, &x, &trunc)?,
        Some(y) => evaluate_two(&p, &x, &y.parse()?, &trunc)?,
    };
    for w in &result.warnings {
        eprintln!("hgfmat: warning: {w}");
    }
    emit_record(run, &series_fields(&p, &result));
    Ok(exit::PASS)
}

fn series_fields<S: Scalar>(p: &HgfParams<S>, r: &SeriesResult<S>) -> Vec<(&'static str, Value)> {
    vec![
        ("value", json!(r.value.render())),
        ("backend", json!(r.backend.to_string())),
        ("a", json!(p.a.render())),
        ("b", json!(p.b.render())),
        ("c", json!(p.c.render())),
        ("d", json!(p.d.to_string())),
        ("max_weight_used", json!(r.max_weight_used)),
        ("last_shell_magnitude", json!(r.last_shell_magnitude)),
        ("terminated", json!(r.terminated)),
        ("converged", json!(r.converged)),
        ("shells", json!(r.shells.iter().map(Scalar::render).collect::<Vec<_>>())),
        ("warnings", json!(r.warnings)),
    ]
}

fn verify(run: &RunConfig, args: &VerifyArgs) -> Result<u8> {
    let m = args.m as usize;
    let count = args.probes as usize;
    let tol = run.tolerance.unwrap_or(hgfmat::identities::DEFAULT_TOLERANCE);
    let report = match args.identity {
        Identity::Reflection => match run.backend {
            Some(BackendArg::Float) => reflection::<f64>(run, args, tol)?,
            _ => reflection::<Rational>(run, args, tol)?,
        },
        Identity::Gauss => match run.backend {
            Some(BackendArg::Float) => gauss::<f64>(args, tol)?,
            _ => gauss::<Rational>(args, tol)?,
        },
        Identity::ScalarReflection | Identity::Hannah => {
            let id = if args.identity == Identity::Hannah { ScalarIdentity::Hannah } else { ScalarIdentity::Reflection };
            match run.backend {
                Some(BackendArg::Float) => scalar::<f64>(run, args, id, tol)?,
                _ => scalar::<Rational>(run, args, id, tol)?,
            }
        }
        Identity::ScalarQuadratic => {
            float_only(run, "scalar-quadratic")?;
            let points = plan(1, count, run.seed, (1, 20), (3, 5))
                .points()
                .into_iter()
                .map(|v| Scalar::from_ratio(&v[0]))
                .collect();
            let inst = ScalarInstance::new(args.alpha.unwrap_or(0.4), args.beta.unwrap_or(1.3), 0.0, points);
            verify_scalar_identities(ScalarIdentity::Quadratic, &[inst], tol)?
        }
        Identity::Quadratic2x2 => {
            float_only(run, "quadratic2x2")?;
            let (alpha, beta) = (args.alpha.unwrap_or(0.6), args.beta.unwrap_or(1.4));
            let c21 = calibrate_quadratic_c21(alpha, beta, run.seed)?;
            let probes = plan(2, count, run.seed, (1, 20), (3, 5)).spectra::<f64>();
            let form = match args.form {
                FormArg::Printed => QuadraticForm::Printed,
                FormArg::Rederived => QuadraticForm::Rederived,
            };
            verify_quadratic_2x2(alpha, beta, &probes, &c21, form, &truncation(run, 40), tol)?
        }
        Identity::Pde => {
            float_only(run, "pde")?;
            let p: HgfParams<f64> = params(&args.params, [Some("0.7"), Some("1.2"), Some("2.5"), None])?;
            let probes = plan(m, count, run.seed, (1, 20), (1, 2)).spectra::<f64>();
            let trunc = TruncationPolicy::fixed(run.max_weight.unwrap_or(60));
            verify_muirhead(&p, &probes, args.step, &trunc, run.tolerance.unwrap_or(1e-5))?
        }
        Identity::DetVsSeries => {
            float_only(run, "det-vs-series")?;
            let p: HgfParams<f64> = params(&args.params, [Some("2.5"), Some("3.1"), Some("5"), Some("1")])?;
            let trunc = truncation(run, 40);
            let c21 = calibrate_c21(&p, m, &calibration_probes(m, 5, run.seed), &trunc)?;
            let one = plan(m, count, run.seed + 7, (1, 20), (9, 20)).spectra::<f64>();
            let two: Vec<_> = one
                .iter()
                .cloned()
                .zip(plan(m, count, run.seed + 8, (1, 20), (3, 5)).spectra::<f64>())
                .collect();
            verify_det_vs_series(&p, &one, &two, &c21, &trunc, tol)?
        }
    };
    Ok(emit_report(run, &report))
}

fn plan(m: usize, count: usize, seed: u64, low: (i64, i64), high: (i64, i64)) -> ProbePlan {
    ProbePlan::new(m, count, seed).range(ratio(low.0, low.1), ratio(high.0, high.1)).min_gap(ratio(1, 50))
}

fn reflection<S: Scalar>(run: &RunConfig, args: &VerifyArgs, tol: f64) -> Result<VerificationReport> {
    let m = args.m as usize;
    let p: HgfParams<S> = params(&args.params, [Some("-2"), Some("1/3"), Some("9/2"), None])?;
    let probes = ProbePlan::new(m, args.probes as usize, run.seed).spectra::<S>();
    verify_reflection(&p, m, &probes, &truncation(run, 40), tol)
}

fn gauss<S: Scalar>(args: &VerifyArgs, tol: f64) -> Result<VerificationReport> {
    let p: HgfParams<S> = params(&args.params, [Some("-1"), Some("1/3"), Some("3"), None])?;
    verify_gauss_at_identity(&p, args.m as usize, tol)
}

fn scalar<S: Scalar>(run: &RunConfig, args: &VerifyArgs, id: ScalarIdentity, tol: f64) -> Result<VerificationReport> {
    let p: HgfParams<S> = params(&args.params, [Some("-3"), Some("2/7"), Some("11/3"), None])?;
    let points =
        ProbePlan::new(1, args.probes as usize, run.seed).points().into_iter().map(|v| S::from_ratio(&v[0])).collect();
    verify_scalar_identities(id, &[ScalarInstance::new(p.a, p.b, p.c, points)], tol)
}

fn calibrate(run: &RunConfig, args: &CalibrateArgs) -> Result<u8> {
    float_only(run, "calibrate")?;
    let m = args.m as usize;
    let p: HgfParams<f64> = params(&args.params, [Some("2.5"), Some("3.1"), Some("5"), Some("1")])?;
    let c21: DeterminantalConstant =
        calibrate_c21(&p, m, &calibration_probes(m, args.probes as usize, run.seed), &truncation(run, 40))?;
    let Value::Object(map) = serde_json::to_value(&c21).expect("json") else { unreachable!() };
    let fields: Vec<(&str, Value)> = map.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    emit_record(run, &fields);
    Ok(exit::PASS)
}

fn bench_backend<S: Scalar>(m: usize, weight: u32, d: &ConeParameter) -> Value {
    let table = S::jack_table();
    let before = table.stats();
    let mut shells = Vec::new();
    let cold = Instant::now();
    for k in 0..=weight {
        let start = Instant::now();
        let partitions = enumerate(k, m);
        for kappa in &partitions {
            table.expansion(kappa, d, m);
        }
        shells.push(json!({"weight": k, "partitions": partitions.len(), "seconds": start.elapsed().as_secs_f64()}));
    }
    let cold = cold.elapsed().as_secs_f64();
    let warm = Instant::now();
    for k in 0..=weight {
        for kappa in &enumerate(k, m) {
            table.expansion(kappa, d, m);
        }
    }
    let warm = warm.elapsed().as_secs_f64();
    let after = table.stats();
    json!({
        "backend": S::BACKEND.to_string(),
        "shells": shells,
        "first_pass_seconds": cold,
        "second_pass_seconds": warm,
        "cache": {
            "hits": after.hits - before.hits,
            "misses": after.misses - before.misses,
            "entries": after.entries,
        },
    })
}

fn bench(run: &RunConfig, args: &BenchArgs) -> Result<u8> {
    let d: ConeParameter = args.d.parse()?;
    let (m, weight) = (args.m as usize, args.weight);
    let backends: Vec<Value> = match run.backend {
        Some(BackendArg::Exact) => vec![bench_backend::<Rational>(m, weight, &d)],
        Some(BackendArg::Float) => vec![bench_backend::<f64>(m, weight, &d)],
        None => vec![bench_backend::<Rational>(m, weight, &d), bench_backend::<f64>(m, weight, &d)],
    };
    let seconds = |b: Backend| {
        backends.iter().find(|v| v["backend"] == b.to_string()).and_then(|v| v["first_pass_seconds"].as_f64())
    };
    let ratio = match (seconds(Backend::Exact), seconds(Backend::Float)) {
        (Some(e), Some(f)) if f > 0.0 => json!(e / f),
        _ => Value::Null,
    };
    match run.output {
        OutputFormat::Json => {
            let out = json!({"m": m, "weight": weight, "d": d.to_string(), "backends": backends, "exact_over_float": ratio});
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        OutputFormat::Csv => {
            println!("backend,weight,partitions,seconds");
            for b in &backends {
                for s in b["shells"].as_array().into_iter().flatten() {
                    println!("{},{},{},{}", plain(&b["backend"]), s["weight"], s["partitions"], s["seconds"]);
                }
            }
        }
        OutputFormat::Text => {
            println!("m = {m}, weight ≤ {weight}, d = {d}");
            for b in &backends {
                println!("{} backend", plain(&b["backend"]));
                for s in b["shells"].as_array().into_iter().flatten() {
                    println!("  weight {:>2}: {:>4} partitions, {:.6} s", s["weight"], s["partitions"], s["seconds"].as_f64().unwrap_or(0.0));
                }
                let c = &b["cache"];
                println!(
                    "  first pass {:.6} s, second pass {:.6} s, cache hits {}, misses {}, entries {}",
                    b["first_pass_seconds"].as_f64().unwrap_or(0.0),
                    b["second_pass_seconds"].as_f64().unwrap_or(0.0),
                    c["hits"],
                    c["misses"],
                    c["entries"]
                );
            }
            if let Some(r) = ratio.as_f64() {
                println!("exact / float time: {r:.2}");
            }
        }
    }
    Ok(exit::PASS)
}
