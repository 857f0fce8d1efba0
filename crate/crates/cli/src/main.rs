use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hgfmat::HgfError;

mod cache;
mod commands;

/// Exit statuses. These are part of the command-line interface and do not change.
pub mod exit {
    pub const PASS: u8 = 0;
    pub const FAIL: u8 = 1;
    pub const DOMAIN: u8 = 2;
    pub const HYPOTHESIS: u8 = 3;
    pub const USAGE: u8 = 64;
}

#[derive(Parser, Debug)]
#[command(name = "hgfmat", version, about = "Hypergeometric functions of matrix argument")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Arithmetic backend; each command picks its own default when omitted.
    #[arg(long, global = true, value_enum)]
    pub backend: Option<BackendArg>,
    /// Largest partition weight summed by non-terminating series [default: 40, pde: 60].
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_weight: Option<u32>,
    /// Series stopping tolerance, relative to the running sum.
    #[arg(long, global = true, default_value_t = 1e-16, value_parser = positive)]
    pub rel_tol: f64,
    /// Pass tolerance of floating verification reports [default: 1e-8, pde: 1e-5].
    #[arg(long, global = true, value_parser = positive)]
    pub tolerance: Option<f64>,
    /// Seed of the probe sequences.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendArg {
    Exact,
    Float,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate 2F1(a, b; c; X) or 2F1(a, b; c; X, Y) from eigenvalues.
    Eval(EvalArgs),
    /// Check an identity and print a verification report.
    Verify(VerifyArgs),
    /// Calibrate the constant of the two-argument determinantal form (d = 1).
    Calibrate(CalibrateArgs),
    /// Time the Jack coefficient engine shell by shell.
    Bench(BenchArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Cone parameter d = 1/α, e.g. 1/2 (real symmetric) or 1 (Hermitian).
    #[arg(long)]
    pub d: Option<String>,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Eigenvalues of X, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub eig: String,
    /// Eigenvalues of Y for the two-argument function.
    #[arg(long, allow_hyphen_values = true)]
    pub eig2: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    Reflection,
    Gauss,
    #[value(name = "quadratic2x2")]
    Quadratic2x2,
    Pde,
    ScalarReflection,
    ScalarQuadratic,
    Hannah,
    DetVsSeries,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormArg {
    Printed,
    Rederived,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub identity: Identity,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Matrix size.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=8))]
    pub m: u64,
    /// Number of probe points.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..=1000))]
    pub probes: u64,
    /// α of the quadratic transformations.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// β of the quadratic transformations.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Bracket of the 2 × 2 quadratic transformation.
    #[arg(long, value_enum, default_value_t = FormArg::Printed)]
    pub form: FormArg,
    /// Finite-difference step of the pde check.
    #[arg(long, default_value_t = 1e-3, value_parser = positive)]
    pub step: f64,
}

#[derive(Args, Debug)]
pub struct CalibrateArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=6))]
    pub m: u64,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..=100))]
    pub probes: u64,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=4))]
    pub m: u64,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..=40))]
    pub weight: u32,
    #[arg(long, default_value = "1/2")]
    pub d: String,
}

/// Maps library errors to exit statuses.
pub fn error_code(e: &HgfError) -> u8 {
    match e {
        HgfError::Domain(_) | HgfError::Pole { .. } => exit::DOMAIN,
        HgfError::Hypothesis(_) => exit::HYPOTHESIS,
        HgfError::Invalid(_) | HgfError::Shape(_) => exit::USAGE,
        HgfError::Calibration { .. } | HgfError::Inexact(_) | HgfError::CacheFormat(_) => exit::FAIL,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::PASS });
        }
    };
    let cache = cache::CacheDir::from_env();
    cache.load();
    let code = match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("hgfmat: {e}");
            error_code(&e)
        }
    };
    cache.save();
    ExitCode::from(code)
}
