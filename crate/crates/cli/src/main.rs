//! `riesz`: evaluate the polygon Riesz potential, list equilibria, run
//! sweeps and the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad arguments or
//! domain error, 3 numerical failure.

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use riesz_core::charges::{regular_polygon, PolarPoint, RieszExponent};
use riesz_core::experiments::{continuation_beta1, sweep_beta, sweep_n, SweepRecord};
use riesz_core::potential::{closed_form_beta1, potential_direct};
use riesz_core::solver::{enumerate_equilibria, SolveOptions};
use riesz_core::specfun::{build_rule, integral_potential, DEFAULT_NODE_COUNT};
use riesz_core::verify::{all_passed, run_suite, Suite, VerifyOptions};
use riesz_core::Error;

const NODES_ENV: &str = "RIESZ_QUAD_NODES";

#[derive(Parser)]
#[command(name = "riesz", version, about = "Riesz potential of unit charges on a regular polygon")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate U_beta(r, theta).
    Eval(EvalArgs),
    /// List all equilibrium points.
    Equilibria(EquilibriaArgs),
    /// Sweep n or beta, or continue in beta around 1, writing CSV.
    Scan(ScanArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Direct,
    Integral,
    Closed,
}

#[derive(clap::Args)]
struct EvalArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    r: f64,
    #[arg(long, allow_hyphen_values = true)]
    theta: f64,
    /// Read --theta in degrees.
    #[arg(long)]
    degrees: bool,
    #[arg(long, value_enum, default_value = "direct")]
    method: Method,
    /// Quadrature nodes for --method integral.
    #[arg(long)]
    nodes: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct EquilibriaArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    beta: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    N,
    Beta,
    Continuation,
}

#[derive(clap::Args)]
struct ScanArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    /// Polygon size for beta and continuation scans.
    #[arg(long)]
    n: Option<usize>,
    /// Exponent for n scans.
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    from: Option<f64>,
    #[arg(long)]
    to: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Comma-separated grid, instead of --from/--to/--steps.
    #[arg(long, value_delimiter = ',')]
    list: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0.1)]
    half_width: f64,
    #[arg(long, default_value_t = 0.01)]
    step: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
    suite: String,
    /// Residual limit for roots.
    #[arg(long)]
    tol: Option<f64>,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_domain() { 2 } else { 3 };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn io_failure(e: impl std::fmt::Display) -> Failure {
    Failure { code: 3, message: format!("i/o error: {e}") }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Equilibria(a) => cmd_equilibria(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("riesz: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn node_count(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(NODES_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| usage(format!("{NODES_ENV} must be a positive integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_NODE_COUNT),
    }
}

#[derive(Serialize)]
struct EvalOutput {
    n: usize,
    beta: f64,
    r: f64,
    theta: f64,
    method: Method,
    value: f64,
}

fn cmd_eval(a: EvalArgs) -> Result<u8, Failure> {
    let theta = if a.degrees { a.theta.to_radians() } else { a.theta };
    let cfg = regular_polygon::<f64>(a.n)?;
    let beta = RieszExponent::new(a.beta)?;
    let p = PolarPoint::new(a.r, theta)?;
    let value = match a.method {
        Method::Direct => potential_direct(&cfg, &beta, p),
        Method::Integral => {
            beta.require_fractional()?;
            let rule = build_rule(a.beta, node_count(a.nodes)?)?;
            integral_potential(&cfg, &beta, p, &rule)?
        }
        Method::Closed => {
            beta.require_unit()?;
            closed_form_beta1(&cfg, p)
        }
    };
    if !value.is_finite() {
        return Err(Failure { code: 3, message: format!("non-finite potential {value}") });
    }
    let out = EvalOutput { n: a.n, beta: a.beta, r: a.r, theta, method: a.method, value };
    println!("{}", serde_json::to_string(&out).map_err(io_failure)?);
    Ok(0)
}

#[derive(Serialize)]
struct EquilibriumRow {
    r: f64,
    theta: f64,
    #[serde(rename = "type")]
    kind: &'static str,
    residual: f64,
}

#[derive(Serialize)]
struct EquilibriaOutput {
    n: usize,
    beta: f64,
    count: usize,
    maxwell_bound: usize,
    equilibria: Vec<EquilibriumRow>,
}

#[derive(Serialize)]
struct EquilibriumCsvRow {
    n: usize,
    beta: f64,
    r: f64,
    theta: f64,
    #[serde(rename = "type")]
    kind: &'static str,
    residual: f64,
}

fn cmd_equilibria(a: EquilibriaArgs) -> Result<u8, Failure> {
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(usage(format!("--tol must be positive, got {}", a.tol)));
    }
    let cfg = regular_polygon::<f64>(a.n)?;
    let beta = RieszExponent::new(a.beta)?;
    let opts = SolveOptions { tol: a.tol, ..SolveOptions::default() };
    let set = enumerate_equilibria(&cfg, &beta, &opts)?;
    let rows = set.points.iter().map(|p| EquilibriumRow {
        r: p.r,
        theta: p.theta,
        kind: p.classification.as_str(),
        residual: p.residual,
    });
    match a.format {
        Format::Json => {
            let out = EquilibriaOutput {
                n: a.n,
                beta: a.beta,
                count: set.count,
                maxwell_bound: set.maxwell_bound,
                equilibria: rows.collect(),
            };
            println!("{}", serde_json::to_string(&out).map_err(io_failure)?);
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            for row in rows {
                w.serialize(EquilibriumCsvRow {
                    n: a.n,
                    beta: a.beta,
                    r: row.r,
                    theta: row.theta,
                    kind: row.kind,
                    residual: row.residual,
                })
                .map_err(io_failure)?;
            }
            w.flush().map_err(io_failure)?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct ScanRow {
    n: usize,
    beta: f64,
    r_star: f64,
    roots_per_bisector: usize,
    r_lower: f64,
    r_upper: f64,
    residual: f64,
}

impl From<&SweepRecord> for ScanRow {
    fn from(r: &SweepRecord) -> Self {
        ScanRow {
            n: r.n,
            beta: r.beta,
            r_star: r.r_star,
            roots_per_bisector: r.roots_per_bisector,
            r_lower: r.r_lower,
            r_upper: r.r_upper,
            residual: r.residual,
        }
    }
}

/// Grid from `--list` or `--from/--to/--steps` (inclusive, evenly spaced).
fn grid(a: &ScanArgs) -> Result<Vec<f64>, Failure> {
    if let Some(list) = &a.list {
        if a.from.is_some() || a.to.is_some() || a.steps.is_some() {
            return Err(usage("--list cannot be combined with --from/--to/--steps"));
        }
        if list.is_empty() || list.iter().any(|x| !x.is_finite()) {
            return Err(usage("--list must hold finite numbers"));
        }
        return Ok(list.clone());
    }
    let (Some(from), Some(to), Some(steps)) = (a.from, a.to, a.steps) else {
        return Err(usage("give either --list or all of --from, --to and --steps"));
    };
    if steps == 0 || !from.is_finite() || !to.is_finite() || (steps == 1 && from != to) || from > to {
        return Err(usage(format!("bad grid: from {from} to {to} in {steps} steps")));
    }
    if steps == 1 {
        return Ok(vec![from]);
    }
    let h = (to - from) / (steps - 1) as f64;
    Ok((0..steps).map(|i| if i + 1 == steps { to } else { from + h * i as f64 }).collect())
}

fn to_sizes(values: &[f64]) -> Result<Vec<usize>, Failure> {
    values
        .iter()
        .map(|&x| {
            if x.fract() == 0.0 && (3.0..=1e6).contains(&x) {
                Ok(x as usize)
            } else {
                Err(usage(format!("polygon size must be an integer >= 3, got {x}")))
            }
        })
        .collect()
}

fn cmd_scan(a: ScanArgs) -> Result<u8, Failure> {
    let opts = SolveOptions::default();
    let (records, footer) = match a.mode {
        Mode::N => {
            let beta = a.beta.ok_or_else(|| usage("--mode n needs --beta"))?;
            let ns = to_sizes(&grid(&a)?)?;
            if !ns.windows(2).all(|w| w[0] < w[1]) {
                return Err(usage("n grid must be strictly ascending"));
            }
            (sweep_n(beta, &ns, &opts)?, None)
        }
        Mode::Beta => {
            let n = a.n.ok_or_else(|| usage("--mode beta needs --n"))?;
            (sweep_beta(n, &grid(&a)?, &opts)?, None)
        }
        Mode::Continuation => {
            let n = a.n.ok_or_else(|| usage("--mode continuation needs --n"))?;
            let res = continuation_beta1(n, a.half_width, a.step, &opts)?;
            let footer = format!(
                "# uniform_count={},beta_lo={},beta_hi={},step={}",
                res.uniform_count, res.beta_lo, res.beta_hi, res.step
            );
            (res.records, Some(footer))
        }
    };
    write_atomic(&a.out, &records, footer.as_deref())?;
    Ok(0)
}

/// Writes the CSV to a temporary file next to `path` and renames it into
/// place, so a failed run never leaves a partial file.
fn write_atomic(path: &Path, records: &[SweepRecord], footer: Option<&str>) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_failure)?;
    {
        let mut w = csv::Writer::from_writer(tmp.as_file_mut());
        for rec in records {
            w.serialize(ScanRow::from(rec)).map_err(io_failure)?;
        }
        w.flush().map_err(io_failure)?;
    }
    if let Some(line) = footer {
        writeln!(tmp.as_file_mut(), "{line}").map_err(io_failure)?;
    }
    tmp.as_file().sync_all().map_err(io_failure)?;
    tmp.persist(path).map_err(|e| io_failure(e.error))?;
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<u8, Failure> {
    let suite: Suite = a.suite.parse()?;
    let mut opts = VerifyOptions::default();
    if let Some(tol) = a.tol {
        if tol.is_nan() || tol <= 0.0 {
            return Err(usage(format!("--tol must be positive, got {tol}")));
        }
        opts.residual_tol = tol;
    }
    let checks = run_suite(suite, &opts)?;
    let mut out = io::stdout().lock();
    for c in &checks {
        writeln!(out, "{c}").map_err(io_failure)?;
    }
    Ok(if all_passed(&checks) { 0 } else { 1 })
}
