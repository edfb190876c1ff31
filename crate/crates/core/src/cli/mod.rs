//! The `qpa` command-line front end.
//!
//! Exit codes: 0 success, 2 usage, 3 invalid spectrum or zero gap,
//! 4 enumeration cap exceeded, 5 a verification check failed.

mod output;
mod parse;

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::error::QpaError;
use crate::fidelity::{fidelity, fidelity_lower_bound, fidelity_via_cg, DeltaVector};
use crate::montecarlo::{check_lemmas, estimate, EstimationResult};
use crate::oracle::{exact_event_probability, exact_expected_fidelity, exact_mean_overhang_sum, exact_row_moments};
use crate::scalar::{parse_rational, Rational, Scalar};
use crate::spectrum::{
    coarse_rate, concentration_bound, fine_grained_rate, first_row_bound, first_row_excess_bound,
    qubit_asymptotic_infidelity, required_samples, second_row_bound, RunParameters, Spectrum,
};
use crate::tableaux::{lis_weak, overhangs, rsk, Caps};

pub use output::{Format, SCHEMA_VERSION};
pub use parse::{parse_grid, parse_letters, parse_spectrum, parse_tableau, parse_word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SPECTRUM: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;
pub const EXIT_VERIFICATION: i32 = 5;

const SIMULATION_COLUMNS: &[&str] = &[
    "n",
    "k",
    "delta",
    "trials",
    "seed",
    "mean_fidelity",
    "ci_halfwidth",
    "scaled_infidelity",
    "event_failure_rate",
    "event_failure_wilson_low",
    "event_failure_wilson_high",
    "mean_lambda1",
    "second_row_moment",
    "mean_overhang_sum",
    "fallback_rate",
    "coarse_rate",
    "fine_grained_rate",
    "qubit_rate",
];

const SIMULATION_HELP: &str = "\
CSV columns (simulate and sweep):
  n, k, delta (empty unless taken from --delta-grid), trials, seed,
  mean_fidelity, ci_halfwidth (95% normal), scaled_infidelity = n(1 - mean_fidelity),
  event_failure_rate with 95% Wilson bounds, mean_lambda1, second_row_moment,
  mean_overhang_sum, fallback_rate, coarse_rate = (1-p_d)/g^2,
  fine_grained_rate = sum p_i/(p_d-p_i)^2, qubit_rate = p_1/g^2 (d = 2 only).";

#[derive(Debug, Parser)]
#[command(name = "qpa", version, about = "Simulate k-copy quantum purity amplification")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run RSK on a word and print both tableaux.
    Rsk(RskArgs),
    /// Evaluate the fidelity of one tableau by both formulas.
    Fidelity(FidelityArgs),
    /// Monte Carlo estimate at one copy count.
    #[command(after_help = SIMULATION_HELP)]
    Simulate(SimulateArgs),
    /// Monte Carlo estimates over a grid of copy counts or target infidelities.
    #[command(after_help = SIMULATION_HELP)]
    Sweep(SweepArgs),
    /// Exact enumeration checks at small n.
    Oracle(OracleArgs),
    /// Copy count sufficient for fidelity 1 - delta, with rate diagnostics.
    Bounds(BoundsArgs),
    /// Empirical checks of the row-length and gap-event bounds.
    Lemmas(LemmasArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SamplingArgs {
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Debug, Args)]
pub struct RskArgs {
    /// Letters; read from standard input when omitted.
    pub word: Vec<String>,
    /// Alphabet size; defaults to the largest letter.
    #[arg(long)]
    pub d: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FidelityArgs {
    /// Rows separated by '/', e.g. "1 1 2 3/2 2 3/3".
    #[arg(long)]
    pub tableau: String,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Comma-separated probabilities or "depolarizing:d=3,eta=0.3".
    #[arg(long)]
    pub spectrum: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub spectrum: String,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    /// Copy counts, e.g. "250,500,1000".
    #[arg(long, conflicts_with = "delta_grid", required_unless_present = "delta_grid")]
    pub n_grid: Option<String>,
    /// Target infidelities; each row runs at the copy count the bound prescribes.
    #[arg(long)]
    pub delta_grid: Option<String>,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Exact probabilities (decimals are read as exact fractions).
    #[arg(long)]
    pub spectrum: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    /// Largest n accepted for exhaustive enumeration.
    #[arg(long, default_value_t = 10)]
    pub cap: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub spectrum: String,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long)]
    pub delta: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct LemmasArgs {
    #[arg(long)]
    pub spectrum: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// A failure carrying its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(err: impl std::fmt::Display) -> Self {
        Self {
            code: 1,
            message: err.to_string(),
        }
    }
}

impl From<QpaError> for CliError {
    fn from(err: QpaError) -> Self {
        let code = match err {
            QpaError::InvalidSpectrum(_) | QpaError::ZeroGap => EXIT_SPECTRUM,
            QpaError::ResourceLimit { .. } => EXIT_RESOURCE,
            QpaError::InvalidLetter { .. } | QpaError::Parse(_) | QpaError::Domain(_) | QpaError::Inconsistent(_) => {
                EXIT_USAGE
            }
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(config) => config,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(&config.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("qpa: {}", err.message);
            err.code
        }
    }
}

fn dispatch(command: &Command) -> Result<i32, CliError> {
    match command {
        Command::Rsk(args) => cmd_rsk(args),
        Command::Fidelity(args) => cmd_fidelity(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Lemmas(args) => cmd_lemmas(args),
    }
}

fn to_usize(value: u64) -> Result<usize, CliError> {
    usize::try_from(value).map_err(|_| CliError::usage(format!("{value} is too large")))
}

fn render(
    command: &str,
    format: Format,
    header: &[&str],
    rows: &[impl Serialize],
    extra: serde_json::Value,
) -> Result<String, CliError> {
    match format {
        Format::Csv => output::csv_table(header, rows),
        Format::Json => {
            let mut body = extra;
            body["rows"] = serde_json::to_value(rows).map_err(CliError::io)?;
            output::json_document(command, body)
        }
    }
}

pub fn cmd_rsk(args: &RskArgs) -> Result<i32, CliError> {
    let text = if args.word.is_empty() {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(CliError::io)?;
        buf
    } else {
        args.word.join(" ")
    };
    let word = parse_word(&text, args.d)?;
    if word.is_empty() {
        return Err(CliError::usage("the word is empty"));
    }
    let out = rsk(&word)?;
    let lis = lis_weak(&word);
    let d = word.alphabet_size();
    let mu = out.insertion.restrict_below(d as u32)?.shape();
    let b = if d >= 2 {
        Some(overhangs(&out.shape, &mu, d)?)
    } else {
        None
    };
    let doc = json!({
        "word": word.letters(),
        "d": d,
        "shape": out.shape,
        "insertion": out.insertion,
        "recording": out.recording,
        "type": word.histogram(),
        "lis_weak": lis,
        "lis_matches_first_row": lis == out.shape.get(0),
        "restricted_shape": mu,
        "overhangs": b,
    });
    let text = match args.output.format {
        Some(Format::Json) => output::json_document("rsk", doc)?,
        Some(Format::Csv) => {
            #[derive(Serialize)]
            struct Row {
                word: String,
                d: usize,
                shape: String,
                lis_weak: usize,
                lis_matches_first_row: bool,
            }
            output::csv_table(
                &["word", "d", "shape", "lis_weak", "lis_matches_first_row"],
                &[Row {
                    word: word.to_string(),
                    d,
                    shape: out.shape.to_string(),
                    lis_weak: lis,
                    lis_matches_first_row: lis == out.shape.get(0),
                }],
            )?
        }
        None => format!(
            "word: {word}\nshape: {}\ninsertion tableau T:\n{}\nrecording tableau S:\n{}\n{}",
            out.shape,
            out.insertion,
            out.recording,
            output::json_document("rsk", doc)?
        ),
    };
    output::emit(&text, args.output.out.as_deref())?;
    Ok(EXIT_OK)
}

pub fn cmd_fidelity(args: &FidelityArgs) -> Result<i32, CliError> {
    let tableau = parse_tableau(&args.tableau, args.d)?;
    let k = to_usize(args.k)?;
    let d = tableau.alphabet_size();
    let shape = tableau.shape();
    let mu = tableau.restrict_below(d as u32)?.shape();
    let b = overhangs(&shape, &mu, d)?;
    let f = fidelity::<Rational>(&shape, &tableau, k)?;
    let (via_cg, lower) = if f.fallback_used {
        (None, None)
    } else {
        let via = fidelity_via_cg(&shape, &tableau, k)?;
        let lb: Rational = fidelity_lower_bound(&shape, &b, k)?;
        (Some(via), Some(lb))
    };
    let doc = json!({
        "d": d,
        "k": k,
        "shape": shape,
        "restricted_shape": mu,
        "overhangs": b,
        "delta": DeltaVector::new(&shape, d)?,
        "fidelity": f.value.to_string(),
        "fidelity_float": f.value.to_f64_lossy(),
        "fallback_used": f.fallback_used,
        "fidelity_via_cg": via_cg.as_ref().map(ToString::to_string),
        "routes_agree": via_cg.as_ref().map(|v| *v == f.value),
        "lower_bound": lower.as_ref().map(ToString::to_string),
    });
    let text = match args.output.format {
        Some(Format::Json) => output::json_document("fidelity", doc)?,
        Some(Format::Csv) => {
            #[derive(Serialize)]
            struct Row {
                d: usize,
                k: usize,
                shape: String,
                restricted_shape: String,
                fidelity: String,
                fidelity_float: f64,
                fallback_used: bool,
                fidelity_via_cg: Option<String>,
                lower_bound: Option<String>,
            }
            output::csv_table(
                &[
                    "d",
                    "k",
                    "shape",
                    "restricted_shape",
                    "fidelity",
                    "fidelity_float",
                    "fallback_used",
                    "fidelity_via_cg",
                    "lower_bound",
                ],
                &[Row {
                    d,
                    k,
                    shape: shape.to_string(),
                    restricted_shape: mu.to_string(),
                    fidelity: f.value.to_string(),
                    fidelity_float: f.value.to_f64_lossy(),
                    fallback_used: f.fallback_used,
                    fidelity_via_cg: via_cg.as_ref().map(ToString::to_string),
                    lower_bound: lower.as_ref().map(ToString::to_string),
                }],
            )?
        }
        None => format!(
            "tableau:\n{tableau}\nshape: {shape}  mu: {mu}  overhangs: {:?}\nfidelity: {}{}\n{}",
            b.values(),
            f.value,
            if f.fallback_used {
                " (maximally mixed fallback)"
            } else {
                ""
            },
            output::json_document("fidelity", doc)?
        ),
    };
    output::emit(&text, args.output.out.as_deref())?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Serialize)]
struct SimulationRow {
    n: usize,
    k: usize,
    delta: Option<f64>,
    trials: usize,
    seed: u64,
    mean_fidelity: f64,
    ci_halfwidth: Option<f64>,
    scaled_infidelity: f64,
    event_failure_rate: f64,
    event_failure_wilson_low: f64,
    event_failure_wilson_high: f64,
    mean_lambda1: f64,
    second_row_moment: f64,
    mean_overhang_sum: f64,
    fallback_rate: f64,
    coarse_rate: Option<f64>,
    fine_grained_rate: Option<f64>,
    qubit_rate: Option<f64>,
}

struct Rates {
    coarse: Option<f64>,
    fine: Option<f64>,
    qubit: Option<f64>,
}

impl Rates {
    fn of(p: &Spectrum<Rational>) -> Self {
        Self {
            coarse: coarse_rate(p).ok().map(|r| r.to_f64_lossy()),
            fine: fine_grained_rate(p).ok().map(|r| r.to_f64_lossy()),
            qubit: qubit_asymptotic_infidelity(p, 1).ok().map(|r| r.to_f64_lossy()),
        }
    }
}

fn simulation_row(est: &EstimationResult, delta: Option<f64>, seed: u64, rates: &Rates) -> SimulationRow {
    SimulationRow {
        n: est.n,
        k: est.k,
        delta,
        trials: est.trials,
        seed,
        mean_fidelity: est.mean_fidelity,
        ci_halfwidth: est.ci_halfwidth,
        scaled_infidelity: est.n as f64 * (1.0 - est.mean_fidelity),
        event_failure_rate: est.event_failure_rate,
        event_failure_wilson_low: est.event_failure_wilson_low,
        event_failure_wilson_high: est.event_failure_wilson_high,
        mean_lambda1: est.mean_lambda1,
        second_row_moment: est.second_row_moment,
        mean_overhang_sum: est.mean_overhang_sum,
        fallback_rate: est.fallback_rate,
        coarse_rate: rates.coarse,
        fine_grained_rate: rates.fine,
        qubit_rate: rates.qubit,
    }
}

fn run_grid(
    command: &str,
    p: &Spectrum<Rational>,
    k: usize,
    points: &[(usize, Option<f64>)],
    sampling: &SamplingArgs,
    output: &OutputArgs,
) -> Result<i32, CliError> {
    let floats = p.to_f64();
    let rates = Rates::of(p);
    let trials = to_usize(sampling.trials)?;
    let mut rows = Vec::with_capacity(points.len());
    for &(n, delta) in points {
        let params = RunParameters::new(n, k, delta.unwrap_or(1.0))?;
        let est = estimate(&floats, &params, trials, sampling.seed, sampling.workers)?;
        rows.push(simulation_row(&est, delta, sampling.seed, &rates));
    }
    let spectrum: Vec<String> = p.probabilities().iter().map(ToString::to_string).collect();
    let text = render(
        command,
        output.format.unwrap_or(Format::Csv),
        SIMULATION_COLUMNS,
        &rows,
        json!({ "spectrum": spectrum }),
    )?;
    output::emit(&text, output.out.as_deref())?;
    Ok(EXIT_OK)
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<i32, CliError> {
    let p = parse_spectrum(&args.spectrum)?;
    let points = [(to_usize(args.n)?, None)];
    run_grid("simulate", &p, to_usize(args.k)?, &points, &args.sampling, &args.output)
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<i32, CliError> {
    let p = parse_spectrum(&args.spectrum)?;
    let k = to_usize(args.k)?;
    let points: Vec<(usize, Option<f64>)> = match (&args.n_grid, &args.delta_grid) {
        (Some(grid), _) => parse_grid(grid, |t| t.parse::<usize>().ok().filter(|&n| n > 0))?
            .into_iter()
            .map(|n| (n, None))
            .collect(),
        (None, Some(grid)) => parse_grid(grid, parse_rational)?
            .into_iter()
            .map(|delta| {
                let n = required_samples(&p, k, &delta)?;
                let n = usize::try_from(n).map_err(|_| QpaError::Domain(format!("n = {n} is too large")))?;
                Ok((n, Some(delta.to_f64_lossy())))
            })
            .collect::<Result<_, QpaError>>()?,
        (None, None) => return Err(CliError::usage("one of --n-grid or --delta-grid is required")),
    };
    run_grid("sweep", &p, k, &points, &args.sampling, &args.output)
}

#[derive(Debug, Serialize)]
struct ExactCheck {
    check: &'static str,
    exact: String,
    value: f64,
    bound: Option<String>,
    passed: bool,
}

impl ExactCheck {
    fn bounded(check: &'static str, value: &Rational, bound: &Rational) -> Self {
        Self {
            check,
            exact: value.to_string(),
            value: value.to_f64_lossy(),
            bound: Some(bound.to_string()),
            passed: value <= bound,
        }
    }
}

pub fn cmd_oracle(args: &OracleArgs) -> Result<i32, CliError> {
    let p = parse_spectrum(&args.spectrum)?;
    let caps = Caps::with_max_boxes(args.cap);
    let (n, k) = (args.n, to_usize(args.k)?);
    if n == 0 {
        return Err(CliError::usage("n must be positive"));
    }
    let expected = exact_expected_fidelity(&p, n, k, &caps)?;
    let mut checks = vec![ExactCheck {
        check: "expected_fidelity_routes_agree",
        exact: expected.word_sum.to_string(),
        value: expected.word_sum.to_f64_lossy(),
        bound: Some(expected.pair_sum.to_string()),
        passed: expected.routes_agree(),
    }];
    let moments = exact_row_moments(&p, n, &caps)?;
    let mean_b = exact_mean_overhang_sum(&p, n, &caps)?;
    let identity = &moments.mean_lambda1 - p.largest() * Rational::from_usize(n);
    checks.push(ExactCheck {
        check: "overhang_sum_identity",
        exact: mean_b.to_string(),
        value: mean_b.to_f64_lossy(),
        bound: Some(identity.to_string()),
        passed: mean_b == identity,
    });
    if p.require_gap().is_ok() {
        checks.push(ExactCheck::bounded(
            "first_row_mean",
            &moments.mean_lambda1,
            &first_row_bound(&p, n)?,
        ));
        checks.push(ExactCheck::bounded(
            "overhang_mean",
            &mean_b,
            &first_row_excess_bound(&p),
        ));
        checks.push(ExactCheck::bounded(
            "second_row_moment",
            &moments.second_row_moment,
            &second_row_bound(&p, n),
        ));
        let failure = Rational::from_int(1) - exact_event_probability(&p, n, &caps)?;
        checks.push(ExactCheck::bounded(
            "gap_event_failure",
            &failure,
            &concentration_bound(&p, n)?,
        ));
    } else {
        checks.push(ExactCheck::bounded(
            "second_row_moment",
            &moments.second_row_moment,
            &second_row_bound(&p, n),
        ));
    }
    let passed = checks.iter().all(|c| c.passed);
    let text = render(
        "oracle",
        args.output.format.unwrap_or(Format::Csv),
        &["check", "exact", "value", "bound", "passed"],
        &checks,
        json!({ "n": n, "k": k, "expected_fidelity": expected.word_sum.to_string(), "passed": passed }),
    )?;
    output::emit(&text, args.output.out.as_deref())?;
    Ok(if passed { EXIT_OK } else { EXIT_VERIFICATION })
}

pub fn cmd_bounds(args: &BoundsArgs) -> Result<i32, CliError> {
    let p = parse_spectrum(&args.spectrum)?;
    let k = to_usize(args.k)?;
    let delta = parse_rational(&args.delta).ok_or_else(|| CliError::usage(format!("bad delta {:?}", args.delta)))?;
    let n = required_samples(&p, k, &delta)?;

    #[derive(Serialize)]
    struct Row {
        d: usize,
        k: usize,
        delta: String,
        required_samples: u64,
        coarse_rate: f64,
        fine_grained_rate: f64,
        qubit_rate: Option<f64>,
    }
    let row = Row {
        d: p.dimension(),
        k,
        delta: delta.to_string(),
        required_samples: n,
        coarse_rate: coarse_rate(&p)?.to_f64_lossy(),
        fine_grained_rate: fine_grained_rate(&p)?.to_f64_lossy(),
        qubit_rate: qubit_asymptotic_infidelity(&p, 1).ok().map(|r| r.to_f64_lossy()),
    };
    let text = render(
        "bounds",
        args.output.format.unwrap_or(Format::Csv),
        &[
            "d",
            "k",
            "delta",
            "required_samples",
            "coarse_rate",
            "fine_grained_rate",
            "qubit_rate",
        ],
        &[row],
        json!({}),
    )?;
    output::emit(&text, args.output.out.as_deref())?;
    Ok(EXIT_OK)
}

pub fn cmd_lemmas(args: &LemmasArgs) -> Result<i32, CliError> {
    let p = parse_spectrum(&args.spectrum)?;
    let report = check_lemmas(
        &p,
        to_usize(args.n)?,
        to_usize(args.sampling.trials)?,
        args.sampling.seed,
        args.sampling.workers,
    )?;
    let passed = report.passed();
    let text = render(
        "lemmas",
        args.output.format.unwrap_or(Format::Csv),
        &["check", "empirical", "bound", "sigma", "threshold", "passed"],
        &report.checks,
        json!({ "n": report.n, "trials": report.trials, "seed": args.sampling.seed, "passed": passed }),
    )?;
    output::emit(&text, args.output.out.as_deref())?;
    Ok(if passed { EXIT_OK } else { EXIT_VERIFICATION })
}
