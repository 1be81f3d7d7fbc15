use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hardy_core::bounds::{self, Case};
use hardy_core::examples::{ex52_classify, ex53_display_lower, ex53_display_upper, ExampleParams, ExampleSpec};
use hardy_core::variational::{estimate_a, EstimateConfig};
use hardy_core::{Exponents, WeightedInterval};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::input::{read_weights, write_weights, WeightFile};
use crate::report::{Classification, ClosedForm, Params, Report};

/// Tolerance for comparing a computed constant with a published closed form.
pub const CLOSED_FORM_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "hardy", version, about = "Two-sided estimates for discrete weighted Hardy constants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the lower and upper constants for a weight file
    Bounds(BoundsArgs),
    /// Compute the constants and a variational estimate of the optimal constant
    Estimate(EstimateArgs),
    /// Sweep one of the built-in weight families over several truncations
    Example(ExampleArgs),
    /// Write the weights of a built-in family to a file
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    Nd,
    Dn,
    Dd,
    Nn,
}

impl From<CaseArg> for Case {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Nd => Case::ND,
            CaseArg::Dn => Case::DN,
            CaseArg::Dd => Case::DD,
            CaseArg::Nn => Case::NN,
        }
    }
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    pub case: CaseArg,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub q: f64,
    /// JSON (`offset`, `u`, `v`) or CSV (`n,u,v`) weight file
    #[arg(long)]
    pub weights: PathBuf,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub bounds: BoundsArgs,
    /// Random restarts on top of the structured seeds
    #[arg(long, default_value_t = 4)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Compare with the exact eigenvalue (p = q = 2 only)
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// 51 telescoping (ND), 52 power law (DD), 53 geometric (NN)
    #[arg(long, value_parser = ["51", "52", "53"])]
    pub id: String,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub q: f64,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Comma-separated truncations N
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,
    /// Write the report stream here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub n: usize,
    /// Output file; `.csv` selects CSV, anything else JSON
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Bounds(args) => {
            let report = cmd_bounds(&args)?;
            emit_one(args.out.as_deref(), &report)
        }
        Command::Estimate(args) => {
            let report = cmd_estimate(&args)?;
            emit_one(args.bounds.out.as_deref(), &report)
        }
        Command::Example(args) => {
            let reports = cmd_example(&args)?;
            emit_stream(args.out.as_deref(), &reports)
        }
        Command::Generate(args) => cmd_generate(&args),
    }
}

fn millis(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn load(args: &BoundsArgs) -> Result<(Exponents, WeightedInterval)> {
    let e = Exponents::new(args.p, args.q)?;
    let file = read_weights(&args.weights)?;
    let w = file.interval(&e).map_err(|source| CliError::Weights { path: args.weights.clone(), source })?;
    Ok((e, w))
}

fn bounds_report(case: Case, w: &WeightedInterval, e: &Exponents, params: Params) -> Result<Report> {
    let t = Instant::now();
    let b = bounds::report(case, w, e)?;
    Ok(Report::from_bounds(&b, params, millis(t)))
}

pub fn cmd_bounds(args: &BoundsArgs) -> Result<Report> {
    let (e, w) = load(args)?;
    let params = Params {
        command: "bounds",
        weights: Some(args.weights.display().to_string()),
        len: Some(w.len()),
        ..Params::default()
    };
    bounds_report(args.case.into(), &w, &e, params)
}

pub fn cmd_estimate(args: &EstimateArgs) -> Result<Report> {
    if args.oracle && !(args.bounds.p == 2.0 && args.bounds.q == 2.0) {
        return Err(CliError::Args(format!(
            "--oracle needs p = q = 2, got p = {}, q = {}",
            args.bounds.p, args.bounds.q
        )));
    }
    let (e, w) = load(&args.bounds)?;
    let case = args.bounds.case.into();
    let params = Params {
        command: "estimate",
        weights: Some(args.bounds.weights.display().to_string()),
        len: Some(w.len()),
        restarts: Some(args.restarts),
        seed: Some(args.seed),
        oracle: Some(args.oracle),
        ..Params::default()
    };
    let mut report = bounds_report(case, &w, &e, params)?;
    let cfg = EstimateConfig { restarts: args.restarts, seed: args.seed, ..EstimateConfig::default() };
    let t = Instant::now();
    let est = estimate_a(case, &w, &e, &cfg)?;
    report.timings.estimate_ms = Some(millis(t));
    report.a_hat = Some(est.a_hat);
    if args.oracle {
        let oracle = est.oracle_value.ok_or(hardy_core::HardyError::NotDiagonal)?;
        report.oracle_value = Some(oracle);
        report.oracle_gap = Some((oracle - est.a_hat).abs() / oracle);
    }
    report.sandwich_ok = report.check_sandwich();
    Ok(report)
}

fn required(value: Option<f64>, flag: &str, id: &str) -> Result<f64> {
    value.ok_or_else(|| CliError::Args(format!("example {id} needs --{flag}")))
}

fn family(args: &FamilyArgs) -> Result<(Case, ExampleParams, Params)> {
    let mut params = Params { id: Some(args.id.parse().expect("validated by clap")), ..Params::default() };
    let (case, family) = match args.id.as_str() {
        "51" => (Case::ND, ExampleParams::Telescoping),
        "52" => {
            let (alpha, beta) = (required(args.alpha, "alpha", "52")?, required(args.beta, "beta", "52")?);
            (params.alpha, params.beta) = (Some(alpha), Some(beta));
            (Case::DD, ExampleParams::PowerLaw { alpha, beta })
        }
        _ => {
            let (r, b) = (required(args.r, "r", "53")?, required(args.b, "b", "53")?);
            (params.r, params.b) = (Some(r), Some(b));
            (Case::NN, ExampleParams::Geometric { r, b })
        }
    };
    Ok((case, family, params))
}

pub fn cmd_example(args: &ExampleArgs) -> Result<Vec<Report>> {
    let e = Exponents::new(args.family.p, args.family.q)?;
    let (case, params, echo) = family(&args.family)?;
    let classification = match params {
        ExampleParams::PowerLaw { alpha, beta } if e.is_ordered() => {
            let c = ex52_classify(alpha, beta, &e);
            let word = |d: bool| if d { "divergent" } else { "bounded" };
            Some(Classification {
                verdict: word(c.divergent),
                predicted: word(c.predicted_divergent),
                agrees: c.agrees(),
                growth_low: c.growth_low,
                growth_high: c.growth_high,
            })
        }
        _ => None,
    };
    let mut reports = Vec::with_capacity(args.n_list.len());
    for &n in &args.n_list {
        let spec = ExampleSpec { params, exponents: e, n };
        let w = spec.weights()?;
        let mut report = bounds_report(case, &w, &e, Params { command: "example", n: Some(n), ..echo.clone() })?;
        let half = ExampleSpec { n: n / 2, ..spec };
        if half.n >= case.min_len() {
            if let Ok(b) = half.weights().and_then(|w| bounds::report(case, &w, &e)) {
                report.tail_increment = Some(report.b_lower - b.b_lower);
            }
        }
        report.classification = classification.clone();
        if let ExampleParams::Geometric { r, b } = params {
            if let Some(upper_scan) = report.b_upper {
                let upper = ex53_display_upper(r, b, &e, n);
                let lower = ex53_display_lower(r, b, &e, n);
                let close = |a: f64, b: f64| (a - b).abs() <= CLOSED_FORM_TOL * b.abs().max(1.0);
                report.closed_form = Some(ClosedForm {
                    upper,
                    lower,
                    upper_matches: close(upper_scan, upper),
                    lower_matches: close(report.b_lower, lower),
                    tol: CLOSED_FORM_TOL,
                });
            }
        }
        reports.push(report);
    }
    Ok(reports)
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<()> {
    let e = Exponents::new(args.family.p, args.family.q)?;
    let (_, params, _) = family(&args.family)?;
    let w = ExampleSpec { params, exponents: e, n: args.n }.weights()?;
    write_weights(&args.out, &WeightFile::from_interval(&w))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
        }
    }
}

fn emit_one<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("report serialises");
    text.push('\n');
    write_out(path, &text)
}

/// One compact JSON object per line.
fn emit_stream<T: Serialize>(path: Option<&Path>, values: &[T]) -> Result<()> {
    let mut text = String::new();
    for v in values {
        text.push_str(&serde_json::to_string(v).expect("report serialises"));
        text.push('\n');
    }
    write_out(path, &text)
}
