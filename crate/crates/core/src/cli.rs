//! Command-line front end.
//!
//! ```text
//! integrable catalog [--json]
//! integrable verify    (--model NAME|FILE [--lambda L] | --genfun E:EXPR) [--region x0,y0,x1,y1] [--n N] [--tol T] [--seed S] [--out FILE]
//! integrable integrate --model NAME|FILE [--lambda L] [--start x,y] [--theta A] [--dt H] [--T T] [--method rk4|rk45] [--out FILE]
//! integrable sweep     --model NAME|FILE [--lambda LIST] [--mu LIST] [--epsilon LIST] [--sigma LIST] [--theta LIST] ... [--out FILE]
//! ```
//!
//! `LIST` is `a,b,c` or `start:stop:count` (inclusive, evenly spaced).
//! Exit codes: 0 success or verification pass, 1 verification fail,
//! 2 usage or configuration error, 3 runtime error (singularity, domain,
//! no zero-energy motion, early trajectory stop).
//!
//! `INTEGRABLE_TOL` sets the default `verify` tolerance. `INTEGRABLE_OUT_DIR`
//! is the directory for relative `--out` paths and for the default output
//! file of `integrate` and `sweep` (`trajectory.csv`, `sweep.csv`); without
//! it those commands write to standard output.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::dynamics::{integrate, zero_energy_state, IntegrateOptions, Method, Termination};
use crate::error::{Error, Result};
use crate::genfun::{invariant_value, GenFun};
use crate::io::{csv_num, json_str};
use crate::models::{ModelDescriptor, CATALOG};
use crate::prepotential::Sign;
use crate::verify::{grid_report, Region, Target};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

pub const ENV_TOL: &str = "INTEGRABLE_TOL";
pub const ENV_OUT_DIR: &str = "INTEGRABLE_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "integrable", version, about = "Integrable models with cubic and quartic integrals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the built-in models.
    Catalog {
        #[arg(long)]
        json: bool,
    },
    /// Check structure equations of a model or the master equation of a generating function.
    Verify(VerifyArgs),
    /// Integrate a zero-energy trajectory and monitor both integrals.
    Integrate(IntegrateArgs),
    /// Integrate over a parameter grid, one summary row per cell.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("target").required(true).args(["model", "genfun"])))]
struct VerifyArgs {
    /// Catalog name or model descriptor JSON file.
    #[arg(long)]
    model: Option<String>,
    /// Generating function, `E:<expr>` or `F:<expr>`.
    #[arg(long)]
    genfun: Option<String>,
    /// Amplitude override for --model.
    #[arg(long, requires = "model", allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// Sampling box `x_min,y_min,x_max,y_max`.
    #[arg(long, default_value = "1,1,2,2")]
    region: String,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, env = ENV_TOL, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    /// Start point `x,y`.
    #[arg(long, default_value = "1,1")]
    start: String,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    /// Integration time.
    #[arg(long = "T", default_value_t = 1.0)]
    t_end: f64,
    #[arg(long, default_value = "rk4")]
    method: String,
    /// Local error tolerance of rk45.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Record every N-th step.
    #[arg(long, default_value_t = 1)]
    stride: usize,
}

#[derive(Args, Debug)]
struct IntegrateArgs {
    #[arg(long)]
    model: String,
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// Direction of the initial velocity.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta: f64,
    #[command(flatten)]
    run: RunArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    model: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    theta: String,
    #[command(flatten)]
    run: RunArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_)
        | Error::Config(_)
        | Error::Parse { .. }
        | Error::UnknownModel(_)
        | Error::NoSolutionFamily(_)
        | Error::Order { .. }
        | Error::MultiIndex { .. } => EXIT_USAGE,
        _ => EXIT_RUNTIME,
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Reports go to `out` unless written to a file; diagnostics go to
/// `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Catalog { json } => cmd_catalog(json, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Integrate(a) => cmd_integrate(&a, out, err),
        Command::Sweep(a) => cmd_sweep(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Config(format!("{}: {e}", path.display()))
}

/// `--out` resolved against the output directory, or the default file in
/// that directory, or `None` for standard output.
fn output_path(explicit: Option<&Path>, default_name: Option<&str>) -> Option<PathBuf> {
    let dir = std::env::var_os(ENV_OUT_DIR).map(PathBuf::from);
    match (explicit, dir) {
        (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(d)) => default_name.map(|n| d.join(n)),
        (None, None) => None,
    }
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| io_err(p, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::Config(format!("stdout: {e}"))),
    }
}

/// A catalog name or the path of a descriptor file.
pub fn resolve_model(spec: &str) -> Result<ModelDescriptor> {
    if CATALOG.iter().any(|c| c.name == spec) {
        return Ok(ModelDescriptor::Catalog {
            name: spec.to_string(),
            lambda: 1.0,
        });
    }
    let path = Path::new(spec);
    if path.is_file() {
        ModelDescriptor::load(path)
    } else {
        Err(Error::UnknownModel(format!("{spec} (neither a catalog name nor a file)")))
    }
}

fn parse_pair(text: &str, what: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || Error::Config(format!("{what} must be `x,y`, got `{text}`"));
    match parts.as_slice() {
        [a, b] => Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}

/// `a,b,c` or `start:stop:count`.
pub fn parse_list(text: &str) -> Result<Vec<f64>> {
    let bad = |m: &str| Error::Config(format!("grid `{text}`: {m}"));
    let num = |s: &str| -> Result<f64> {
        let v: f64 = s.trim().parse().map_err(|_| bad(&format!("`{}` is not a number", s.trim())))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad("values must be finite"))
        }
    };
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [one] => one.split(',').map(num).collect(),
        [a, b, n] => {
            let (a, b) = (num(a)?, num(b)?);
            let n: usize = n.trim().parse().map_err(|_| bad("count must be a non-negative integer"))?;
            Ok(match n {
                0 => Vec::new(),
                1 => vec![a],
                _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
            })
        }
        _ => Err(bad("expected a comma list or start:stop:count")),
    }
}

fn parse_signs(text: &str) -> Result<Vec<Sign>> {
    parse_list(text)?
        .into_iter()
        .map(|v| match v {
            1.0 => Ok(Sign::Plus),
            -1.0 => Ok(Sign::Minus),
            other => Err(Error::Config(format!("signs must be 1 or -1, got {other}"))),
        })
        .collect()
}

fn options(run: &RunArgs) -> Result<(IntegrateOptions, (f64, f64))> {
    let method: Method = run.method.parse()?;
    let start = parse_pair(&run.start, "--start")?;
    let opts = IntegrateOptions {
        dt: run.dt,
        t_end: run.t_end,
        method,
        tol: run.tol,
        stride: run.stride,
    };
    if !(opts.dt > 0.0 && opts.dt.is_finite()) || !(opts.t_end >= 0.0 && opts.t_end.is_finite()) {
        return Err(Error::Config(format!("need dt > 0 and T >= 0, got dt={} T={}", opts.dt, opts.t_end)));
    }
    if opts.stride == 0 {
        return Err(Error::Config("--stride must be at least 1".into()));
    }
    Ok((opts, start))
}

fn cmd_catalog(json: bool, out: &mut dyn Write) -> Result<i32> {
    let mut text = String::new();
    if json {
        let rows: Vec<String> = CATALOG
            .iter()
            .map(|c| {
                format!(
                    "  {{\"name\": {}, \"kind\": {}, \"description\": {}}}",
                    json_str(c.name),
                    json_str(&format!("{:?}", c.kind).to_lowercase()),
                    json_str(c.description)
                )
            })
            .collect();
        text.push_str(&format!("[\n{}\n]\n", rows.join(",\n")));
    } else {
        for c in &CATALOG {
            let kind = format!("{:?}", c.kind).to_lowercase();
            text.push_str(&format!("{:<16} {:<8} {}\n", c.name, kind, c.description));
        }
    }
    emit(None, &text, out)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let region = Region::parse(&a.region)?;
    if a.n == 0 {
        return Err(Error::Config("--n must be at least 1".into()));
    }
    if !(a.tol > 0.0) {
        return Err(Error::Config(format!("--tol must be positive, got {}", a.tol)));
    }
    let report = match (&a.model, &a.genfun) {
        (Some(m), _) => {
            let mut d = resolve_model(m)?;
            if let Some(l) = a.lambda {
                d = d.with_lambda(l);
            }
            let model = d.build()?;
            grid_report(Target::Model(&model), &region, a.n, a.tol, a.seed)?
        }
        (None, Some(g)) => {
            let g = GenFun::parse(g)?;
            grid_report(Target::GenFun(&g), &region, a.n, a.tol, a.seed)?
        }
        (None, None) => unreachable!("clap requires one target"),
    };
    emit(output_path(a.out.as_deref(), None).as_deref(), &report.to_json(), out)?;
    Ok(if report.pass { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_integrate(a: &IntegrateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let (opts, (x, y)) = options(&a.run)?;
    let mut d = resolve_model(&a.model)?;
    if let Some(l) = a.lambda {
        d = d.with_lambda(l);
    }
    let model = d.build()?;
    let s0 = zero_energy_state(&model, x, y, a.theta)?;
    let report = integrate(&model, &s0, &opts)?;
    let path = output_path(a.out.as_deref(), Some("trajectory.csv"));
    emit(path.as_deref(), &report.to_csv(), out)?;
    let summary = format!("{}\n", report.summary_line());
    let sink: &mut dyn Write = if path.is_some() { out } else { err };
    sink.write_all(summary.as_bytes())
        .map_err(|e| Error::Config(format!("write: {e}")))?;
    Ok(match report.termination {
        Termination::Completed => EXIT_OK,
        _ => EXIT_RUNTIME,
    })
}

/// One grid cell of a sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub lambda: f64,
    pub mu: f64,
    pub epsilon: Sign,
    pub sigma: Sign,
    pub theta: f64,
}

pub const SWEEP_HEADER: &str = "lambda,mu,epsilon,sigma,theta,status,termination,steps,I1_max,I2_drift";

fn status_of(e: &Error) -> &'static str {
    match e {
        Error::Domain { .. } => "domain_error",
        Error::Singular { .. } | Error::Path { .. } => "singular_start",
        Error::NoZeroEnergyMotion { .. } => "no_motion",
        Error::Construction(_) => "construction_error",
        Error::NonFinite { .. } => "non_finite",
        _ => "error",
    }
}

fn sweep_cell(base: &ModelDescriptor, cell: &Cell, opts: &IntegrateOptions, start: (f64, f64)) -> String {
    let d = base.with_params(cell.lambda, cell.mu, cell.epsilon, cell.sigma);
    let head = format!(
        "{},{},{},{},{}",
        csv_num(cell.lambda),
        csv_num(cell.mu),
        i64::from(cell.epsilon),
        i64::from(cell.sigma),
        csv_num(cell.theta)
    );
    let blank = |status: &str| format!("{head},{status},,,,");
    if let (Some(p), Some(order)) = (d.prepotential(), d.order()) {
        if p.validate().is_err() {
            return blank("invalid_parameters");
        }
        if !p.admits(invariant_value(order, start.0, start.1)) {
            return blank("domain_error");
        }
    }
    let run = d
        .build()
        .and_then(|m| {
            let s0 = zero_energy_state(&m, start.0, start.1, cell.theta)?;
            integrate(&m, &s0, opts)
        });
    match run {
        Ok(r) => {
            let status = if r.termination == Termination::Completed { "ok" } else { r.termination.name() };
            format!(
                "{head},{status},{},{},{},{}",
                r.termination.name(),
                r.steps,
                csv_num(r.i1_max_abs),
                csv_num(r.i2_drift)
            )
        }
        Err(e) => blank(status_of(&e)),
    }
}

fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<i32> {
    let (opts, start) = options(&a.run)?;
    let base = resolve_model(&a.model)?;
    let defaults = base.prepotential();
    let has_params = defaults.is_some();
    let catalog_lambda = match &base {
        ModelDescriptor::Catalog { lambda, .. } => Some(*lambda),
        _ => None,
    };
    if !has_params && (a.mu.is_some() || a.epsilon.is_some() || a.sigma.is_some()) {
        return Err(Error::Config(
            "--mu, --epsilon and --sigma need a cubic or quartic descriptor".into(),
        ));
    }
    if matches!(base, ModelDescriptor::Wave { .. }) && a.lambda.is_some() {
        return Err(Error::Config("wave descriptors have no lambda".into()));
    }
    let lambdas = match &a.lambda {
        Some(t) => parse_list(t)?,
        None => vec![defaults.map(|p| p.lambda).or(catalog_lambda).unwrap_or(1.0)],
    };
    let mus = match &a.mu {
        Some(t) => parse_list(t)?,
        None => vec![defaults.map_or(1.0, |p| p.mu)],
    };
    let epsilons = match &a.epsilon {
        Some(t) => parse_signs(t)?,
        None => vec![defaults.map_or(Sign::Plus, |p| p.epsilon)],
    };
    let sigmas = match &a.sigma {
        Some(t) => parse_signs(t)?,
        None => vec![defaults.map_or(Sign::Plus, |p| p.sigma)],
    };
    let thetas = parse_list(&a.theta)?;
    let mut cells = Vec::new();
    for &lambda in &lambdas {
        for &mu in &mus {
            for &epsilon in &epsilons {
                for &sigma in &sigmas {
                    for &theta in &thetas {
                        cells.push(Cell { lambda, mu, epsilon, sigma, theta });
                    }
                }
            }
        }
    }
    if cells.is_empty() {
        return Err(Error::Config("the parameter grid is empty".into()));
    }
    let rows: Vec<String> = cells
        .par_iter()
        .map(|c| sweep_cell(&base, c, &opts, start))
        .collect();
    let mut text = String::with_capacity(96 * (rows.len() + 1));
    text.push_str(SWEEP_HEADER);
    text.push('\n');
    for r in rows {
        text.push_str(&r);
        text.push('\n');
    }
    emit(output_path(a.out.as_deref(), Some("sweep.csv")).as_deref(), &text, out)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("integrable").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list("1,2.5,-3").unwrap(), vec![1.0, 2.5, -3.0]);
        assert_eq!(parse_list("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_list("2:5:1").unwrap(), vec![2.0]);
        assert!(parse_list("0:1:3:4").is_err());
        assert!(parse_list("a,b").is_err());
        assert!(parse_list("").unwrap().is_empty());
        assert_eq!(parse_signs("1,-1").unwrap(), vec![Sign::Plus, Sign::Minus]);
        assert!(parse_signs("2").is_err());
    }

    #[test]
    fn catalog_listing() {
        let (code, out, _) = run_args(&["catalog"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 6);
        assert!(out.contains("quartic-ExQ"));
        let (_, json, _) = run_args(&["catalog", "--json"]);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 6);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&[]).0, EXIT_USAGE);
        let (code, _, err) = run_args(&["verify", "--model", "cubic-eps-plus", "--region", "1,1,2"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("region"));
        assert_eq!(run_args(&["verify", "--model", "no-such-model"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["verify", "--model", "wave-aiz", "--genfun", "E:x"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn verify_pass_and_negative_control() {
        let (code, out, _) = run_args(&["verify", "--model", "cubic-eps-plus", "--n", "20", "--tol", "1e-8"]);
        assert_eq!(code, EXIT_OK, "{out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["equation_set"], "KJU");
        assert_eq!(v["pass"], true);
        let (code, out, _) = run_args(&["verify", "--genfun", "E:x^4", "--n", "10"]);
        assert_eq!(code, EXIT_FAIL);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["pass"], false);
    }

    #[test]
    fn integrate_to_stdout() {
        let (code, out, err) = run_args(&[
            "integrate", "--model", "quartic-ExQ", "--lambda", "-12", "--theta", "0.7", "--T", "0",
        ]);
        assert_eq!(code, EXIT_OK, "{err}");
        assert_eq!(out.lines().count(), 2);
        assert!(err.starts_with("I1_max="));
        assert!(err.contains("termination=completed"));
    }

    #[test]
    fn no_motion_where_potential_is_negative() {
        let (code, _, err) = run_args(&["integrate", "--model", "quartic-ExQ", "--lambda", "12"]);
        assert_eq!(code, EXIT_RUNTIME);
        assert!(err.contains("no real zero-energy motion"));
    }

    #[test]
    fn sweep_rows_in_grid_order() {
        let (code, out, _) = run_args(&[
            "sweep", "--model", "cubic-eps-plus", "--lambda", "0.5,1", "--theta", "0:0.2:2", "--T", "0.01",
            "--dt", "1e-3",
        ]);
        assert_eq!(code, EXIT_OK);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], SWEEP_HEADER);
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("5.0000000000000000e-1,") && lines[1].contains(",ok,"));
        assert!(lines[4].starts_with("1.0000000000000000e0,"));
    }

    #[test]
    fn sweep_empty_grid_and_catalog_params() {
        assert_eq!(run_args(&["sweep", "--model", "cubic-eps-plus", "--theta", "0:1:0"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["sweep", "--model", "cubic-eps-plus", "--mu", "1,2"]).0, EXIT_USAGE);
    }
}
