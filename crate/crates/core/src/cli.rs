//! The `fracnabla` command line: `apply`, `verify`, `solve` and `sweep`.
//!
//! Exit codes: 0 success, 1 verification or convergence failure (and domain
//! errors), 2 usage or parse errors.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::grid::GridFn;
use crate::identities::{default_sizes, run_suite, TrialRecord, DEFAULT_ALPHAS};
use crate::numerics::{parse_rational, Backend, FracOrder, Rational, Scalar};
use crate::operators::{OperatorSpec, Side};
use crate::variational::{solve, write_solution, ProblemConfig, SolutionSidecar};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fracnabla", version, about = "Discrete nabla fractional calculus: operators, summation-by-parts checks, variational solvers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply a fractional operator to a CSV grid function.
    Apply(ApplyArgs),
    /// Run the summation-by-parts and shift-property suite on random inputs.
    Verify(VerifyArgs),
    /// Solve a variational problem given as JSON.
    Solve(SolveArgs),
    /// Solve one problem for each order in a list and tabulate the results.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct ApplyArgs {
    /// Operator name, e.g. nabla-left-sum, nabla-right-riemann, caputo-left,
    /// delta-left-sum.
    #[arg(long)]
    pub op: String,
    #[arg(long)]
    pub alpha: String,
    /// Left anchor (defaults to the first input point).
    #[arg(long)]
    pub a: Option<String>,
    /// Right anchor (defaults to the last input point).
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long, default_value = "float")]
    pub backend: String,
    #[arg(long)]
    pub input: PathBuf,
    /// Output CSV (stdout if omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "rational")]
    pub backend: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Comma-separated orders replacing the built-in lattice.
    #[arg(long)]
    pub alpha_list: Option<String>,
    /// JSON-lines report file (stdout if omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Problem JSON.
    #[arg(long)]
    pub input: PathBuf,
    /// Solution CSV; the summary goes next to it with extension .json.
    #[arg(long)]
    pub output: PathBuf,
    /// Overrides the problem's order.
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long, default_value = "float")]
    pub backend: String,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Problem JSON (its order is replaced by each listed order). Defaults to
    /// the Caputo problem with quadratic potential on N = 8.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Comma-separated orders.
    #[arg(long)]
    pub alpha_list: String,
    /// Table CSV (stdout if omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value = "float")]
    pub backend: String,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
}

/// Problem used by `sweep` without `--input`.
pub const DEFAULT_SWEEP_PROBLEM: &str = r#"{
  "alpha": "1/2", "a": 0, "b": 8, "formulation": "caputo",
  "boundary": {"A": "1", "B": "1/2"},
  "lagrangian": {"name": "quadratic_potential", "omega": "1/2"}
}"#;

fn usage(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Config(_) | Error::Io(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

fn open_output<'w>(path: Option<&Path>, stdout: &'w mut dyn Write) -> Result<Box<dyn Write + 'w>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p)?)),
        None => Box::new(stdout),
    })
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let result = match &cli.command {
        Command::Apply(a) => cmd_apply(a, stdout),
        Command::Verify(v) => cmd_verify(v, stdout, stderr),
        Command::Solve(s) => cmd_solve(s, stdout),
        Command::Sweep(s) => cmd_sweep(s, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn backend(text: &str) -> Result<Backend> {
    text.parse().map_err(|_| usage(format!("unknown backend '{text}'")))
}

pub fn cmd_apply(args: &ApplyArgs, stdout: &mut dyn Write) -> Result<i32> {
    match backend(&args.backend)? {
        Backend::Float => apply_with::<f64>(args, stdout),
        Backend::Rational => apply_with::<Rational>(args, stdout),
    }
}

fn apply_with<S: Scalar>(args: &ApplyArgs, stdout: &mut dyn Write) -> Result<i32> {
    let (calculus, side, kind) = OperatorSpec::<S>::parse_name(&args.op)?;
    let order = FracOrder::<S>::parse(&args.alpha).map_err(|e| usage(e.to_string()))?;
    let file = fs::File::open(&args.input)?;
    let f = GridFn::<S>::read_csv(BufReader::new(file))?;
    let anchor = match side {
        Side::Left => args.a.as_deref(),
        Side::Right => args.b.as_deref(),
    };
    let anchor = match anchor {
        None => match side {
            Side::Left => f.lo(),
            Side::Right => f.hi(),
        },
        Some(text) => {
            let point = S::parse_text(text)?;
            (point.clone() - f.origin().clone())
                .as_integer()
                .ok_or_else(|| Error::Domain(format!("anchor {point} is not on the input lattice {} + Z", f.origin())))?
        }
    };
    let result = OperatorSpec::new(calculus, side, kind, order, anchor)?.apply(&f)?;
    let mut out = open_output(args.output.as_deref(), stdout)?;
    result.write_csv(&mut out)?;
    out.flush()?;
    Ok(EXIT_OK)
}

/// Parses a comma-separated order list, dropping duplicates (by exact value)
/// and reporting each dropped entry.
pub fn parse_alpha_list(text: &str, warnings: &mut dyn Write) -> Result<Vec<String>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let value = parse_rational(item).map_err(|e| usage(e.to_string()))?;
        if seen.insert(value) {
            out.push(item.to_string());
        } else {
            let _ = writeln!(warnings, "warning: duplicate order {item} ignored");
        }
    }
    if out.is_empty() {
        return Err(usage("the order list is empty"));
    }
    Ok(out)
}

pub fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    if args.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let alphas: Vec<String> = match &args.alpha_list {
        Some(list) => parse_alpha_list(list, stderr)?,
        None => DEFAULT_ALPHAS.iter().map(|(p, q)| format!("{p}/{q}")).collect(),
    };
    let b = backend(&args.backend)?;
    let records = match b {
        Backend::Float => verify_with::<f64>(&alphas, b, args)?,
        Backend::Rational => verify_with::<Rational>(&alphas, b, args)?,
    };
    let mut out = open_output(args.output.as_deref(), stdout)?;
    for r in &records {
        writeln!(out, "{}", serde_json::to_string(r).expect("plain record"))?;
    }
    out.flush()?;
    let failures: Vec<&TrialRecord> = records.iter().filter(|r| !r.pass).collect();
    for r in &failures {
        let _ = writeln!(stderr, "FAIL {} alpha={} a={} b={} seed={} residual={}", r.identity_id, r.alpha, r.a, r.b, r.seed, r.residual);
    }
    let _ = writeln!(stderr, "{} checks, {} failed", records.len(), failures.len());
    Ok(if failures.is_empty() { EXIT_OK } else { EXIT_FAILURE })
}

fn verify_with<S: Scalar>(alphas: &[String], b: Backend, args: &VerifyArgs) -> Result<Vec<TrialRecord>> {
    let orders = alphas
        .iter()
        .map(|a| FracOrder::<S>::parse(a).and_then(|o| o.require_non_integer().map(|_| o)).map_err(|e| usage(e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    run_suite(&orders, &default_sizes(b), args.trials, args.seed)
}

fn float_only(text: &str) -> Result<()> {
    match backend(text)? {
        Backend::Float => Ok(()),
        Backend::Rational => Err(usage("the Newton solver runs in the float backend only")),
    }
}

pub fn cmd_solve(args: &SolveArgs, stdout: &mut dyn Write) -> Result<i32> {
    float_only(&args.backend)?;
    let config = ProblemConfig::read(&args.input)?;
    let problem = match &args.alpha {
        Some(a) => config.build_with_alpha(FracOrder::<f64>::parse(a).map_err(|e| usage(e.to_string()))?),
        None => config.build::<f64>(),
    }
    .map_err(|e| usage(e.to_string()))?;
    let solution = solve(&problem, None, args.tol.unwrap_or(config.tol()), args.max_iter.unwrap_or(config.max_iter()))?;
    let sidecar = write_solution(&args.output, &solution)?;
    writeln!(stdout, "{}", serde_json::to_string(&SolutionSidecar::from(&solution)).expect("plain record"))?;
    writeln!(stdout, "wrote {} and {}", args.output.display(), sidecar.display())?;
    Ok(if solution.converged { EXIT_OK } else { EXIT_FAILURE })
}

pub fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    float_only(&args.backend)?;
    let alphas = parse_alpha_list(&args.alpha_list, stderr)?;
    let config = match &args.input {
        Some(p) => ProblemConfig::read(p)?,
        None => ProblemConfig::from_json(DEFAULT_SWEEP_PROBLEM)?,
    };
    let tol = args.tol.unwrap_or(config.tol());
    let max_iter = args.max_iter.unwrap_or(config.max_iter());
    let mut out = open_output(args.output.as_deref(), stdout)?;
    writeln!(out, "alpha,t,y,max_el_residual,gradient_norm,converged")?;
    let mut all_ok = true;
    for alpha in &alphas {
        let solved = FracOrder::<f64>::parse(alpha)
            .and_then(|o| config.build_with_alpha(o))
            .and_then(|p| solve(&p, None, tol, max_iter));
        match solved {
            Ok(s) => {
                all_ok &= s.converged;
                let (res, grad) = (s.max_el_residual().to_text(), s.gradient_norm.to_text());
                for (t, y) in s.f.points() {
                    writeln!(out, "{alpha},{},{},{res},{grad},{}", s.f.point(t).to_text(), y.to_text(), s.converged)?;
                }
            }
            Err(e) => {
                all_ok = false;
                let _ = writeln!(stderr, "alpha {alpha}: {e}");
                writeln!(out, "{alpha},,,,,false")?;
            }
        }
    }
    out.flush()?;
    Ok(if all_ok { EXIT_OK } else { EXIT_FAILURE })
}
