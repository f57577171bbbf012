//! The `qtw` command line: `solve`, `exponents` and `enumerate`.
//!
//! Output on stdout is `key=value` lines (plus vertex lists for `enumerate`).
//! Exit codes: 0 on success, 1 when an internal check fails, 2 when the input
//! graph cannot be parsed, 3 for invalid flags or queries.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use qtw_core::enumeration::{count_bound, enumerate_connected_sets, ConnectedSetQuery};
use qtw_core::error::Error;
use qtw_core::exponents::{balance_parameters, curve_csv, emit_curve, Variant, MAX_LAYERS, SYMMETRIC_LAMBDA};
use qtw_core::graph::Graph;
use qtw_core::io::{parse_gr, write_td};
use qtw_core::ordering::{ordering_to_decomposition, validate_decomposition};
use qtw_core::quantum::CostLedger;
use qtw_core::solve::{treewidth, Algorithm, SolveOptions};

pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// Graphs up to this size default to the subset DP.
pub const DP_DEFAULT_LIMIT: usize = 20;

#[derive(Debug, Parser)]
#[command(name = "qtw", version, about = "Exact treewidth solvers and their cost model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the treewidth of a PACE .gr graph.
    Solve(SolveArgs),
    /// Report balanced parameters and running-time bases.
    Exponents(ExponentsArgs),
    /// List the connected sets around an anchor vertex.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    /// dp, dnc, fv-poly, tradeoff, q-poly, q-dp or q-main.
    #[arg(long, value_parser = parse_algorithm)]
    algorithm: Option<Algorithm>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 3)]
    layers: usize,
    /// Print the witness elimination ordering (1-based).
    #[arg(long)]
    emit_ordering: bool,
    /// Write a validated tree decomposition in .td format.
    #[arg(long)]
    emit_td: Option<PathBuf>,
    /// Write the cost ledger as flat JSON (cost-model algorithms only).
    #[arg(long)]
    ledger: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Debug, Args)]
struct ExponentsArgs {
    /// classical, q-poly, q-dp or q-main.
    #[arg(long, value_parser = parse_variant, default_value = "classical")]
    variant: Variant,
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Write `T(λ₁)` for k = 0..=3 as CSV.
    #[arg(long)]
    curve: Option<PathBuf>,
    /// Largest spacing of the `λ₁` grid between 0.28448 and 1/2.
    #[arg(long, default_value_t = 0.01)]
    grid_step: f64,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    input: PathBuf,
    /// Anchor vertex, 1-based.
    #[arg(long)]
    anchor: usize,
    /// Vertices besides the anchor.
    #[arg(long)]
    b: usize,
    /// Neighbourhood size.
    #[arg(long)]
    f: usize,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameter(_)
            | Error::InvalidLayers(_)
            | Error::Unknown { .. }
            | Error::VertexOutOfRange { .. }
            | Error::BoundOverflow(_) => EXIT_USAGE,
            _ => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve(a) => solve(&a, out, err),
        Command::Exponents(a) => exponents(&a, out),
        Command::Enumerate(a) => enumerate(&a, out),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    parse_gr(&text).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("{}: {e}", path.display()),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn check_fraction(name: &str, x: Option<f64>) -> Result<(), Failure> {
    match x {
        Some(v) if !(0.0..=0.5).contains(&v) => Err(Failure::usage(format!("--{name} {v} is outside [0, 0.5]"))),
        _ => Ok(()),
    }
}

/// Flat JSON object of the ledger counters.
pub fn ledger_json(ledger: &CostLedger) -> String {
    let map: serde_json::Map<String, serde_json::Value> = ledger
        .flat()
        .into_iter()
        .map(|(k, v)| {
            let value = match u64::try_from(v) {
                Ok(v) => serde_json::Value::from(v),
                Err(_) => serde_json::Value::from(v.to_string()),
            };
            (k, value)
        })
        .collect();
    serde_json::to_string_pretty(&serde_json::Value::Object(map)).expect("plain map serializes")
}

fn solve(a: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    check_fraction("beta", a.beta)?;
    check_fraction("alpha", a.alpha)?;
    if a.layers > MAX_LAYERS {
        return Err(Failure::usage(format!("--layers {} exceeds {MAX_LAYERS}", a.layers)));
    }
    if a.threads == 0 {
        return Err(Failure::usage("--threads must be at least 1"));
    }
    let g = read_graph(&a.input)?;
    let algorithm = a.algorithm.unwrap_or(if g.n() <= DP_DEFAULT_LIMIT {
        Algorithm::Dp
    } else {
        Algorithm::FvPoly
    });
    if a.ledger.is_some() && !algorithm.is_quantum() {
        return Err(Failure::usage(format!(
            "--ledger needs a cost-model algorithm, not {}",
            algorithm.name()
        )));
    }
    let opts = SolveOptions {
        beta: a.beta,
        alpha: a.alpha,
        layers: a.layers,
        threads: a.threads,
        ..Default::default()
    };

    let start = Instant::now();
    let sol = treewidth(&g, algorithm, &opts)?;
    let elapsed = start.elapsed();

    if let Some(path) = &a.emit_td {
        let td = ordering_to_decomposition(&g, &sol.ordering);
        match validate_decomposition(&g, &td) {
            Ok(w) if w == sol.width => write_file(path, &write_td(&td, g.n()))?,
            Ok(w) => {
                return Err(Failure::internal(format!(
                    "decomposition has width {w}, expected {}",
                    sol.width
                )))
            }
            Err(v) => return Err(Failure::internal(format!("invalid decomposition: {v}"))),
        }
    }
    if let (Some(path), Some(ledger)) = (&a.ledger, &sol.ledger) {
        write_file(path, &ledger_json(ledger))?;
    }

    let io = |e: std::io::Error| Failure::internal(e.to_string());
    writeln!(out, "algorithm={}", algorithm.name()).map_err(io)?;
    writeln!(out, "n={}", g.n()).map_err(io)?;
    writeln!(out, "width={}", sol.width).map_err(io)?;
    if let Some(ledger) = &sol.ledger {
        writeln!(out, "ledger_total={}", ledger.total()).map_err(io)?;
    }
    if a.emit_ordering {
        let order: Vec<String> = sol.ordering.as_slice().iter().map(|v| (v + 1).to_string()).collect();
        writeln!(out, "ordering={}", order.join(" ")).map_err(io)?;
    }
    let _ = writeln!(err, "elapsed_s={:.6}", elapsed.as_secs_f64());
    Ok(())
}

/// Evenly spaced `λ₁` values from the symmetric split point to 1/2, both
/// included, at most `step` apart.
pub fn curve_grid(step: f64) -> Vec<f64> {
    let span = 0.5 - SYMMETRIC_LAMBDA;
    let intervals = ((span / step) - 1e-9).ceil().max(1.0) as usize;
    (0..=intervals)
        .map(|i| SYMMETRIC_LAMBDA + span * i as f64 / intervals as f64)
        .collect()
}

fn exponents(a: &ExponentsArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if a.k > MAX_LAYERS {
        return Err(Failure::usage(format!("--k {} exceeds {MAX_LAYERS}", a.k)));
    }
    if !(a.grid_step > 0.0 && a.grid_step <= 0.5) {
        return Err(Failure::usage(format!(
            "--grid-step {} is outside (0, 0.5]",
            a.grid_step
        )));
    }
    let r = balance_parameters(a.variant, a.k)?;
    let io = |e: std::io::Error| Failure::internal(e.to_string());
    writeln!(out, "variant={}", r.variant.name()).map_err(io)?;
    if r.variant == Variant::QuantumMain {
        writeln!(out, "k={}", r.k).map_err(io)?;
    }
    writeln!(out, "alpha={:.5}", r.alpha).map_err(io)?;
    writeln!(out, "beta={:.5}", r.beta).map_err(io)?;
    writeln!(out, "base={:.5}", r.time_base).map_err(io)?;
    match r.space_base {
        Some(s) => writeln!(out, "space_base={s:.5}").map_err(io)?,
        None => writeln!(out, "space=polynomial").map_err(io)?,
    }
    if let Some(path) = &a.curve {
        let rows = emit_curve(&[0, 1, 2, 3], &curve_grid(a.grid_step))?;
        write_file(path, &curve_csv(&rows))?;
        writeln!(out, "curve_rows={}", rows.len()).map_err(io)?;
    }
    Ok(())
}

fn enumerate(a: &EnumerateArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let g = read_graph(&a.input)?;
    if a.anchor == 0 || a.anchor > g.n() {
        return Err(Failure::usage(format!(
            "--anchor {} is not a vertex of a graph on {} vertices",
            a.anchor,
            g.n()
        )));
    }
    let bound = count_bound(a.b, a.f);
    if bound.saturated {
        return Err(Failure::usage(format!(
            "C({}, {}) does not fit in 64 bits",
            a.b + a.f,
            a.b
        )));
    }
    let q = ConnectedSetQuery::new(a.anchor - 1, a.b, a.f);
    let mut sets: Vec<Vec<usize>> = enumerate_connected_sets(&g, q)?
        .map(|s| s.iter().map(|v| v + 1).collect())
        .collect();
    sets.sort();
    let io = |e: std::io::Error| Failure::internal(e.to_string());
    for s in &sets {
        let line: Vec<String> = s.iter().map(usize::to_string).collect();
        writeln!(out, "{}", line.join(" ")).map_err(io)?;
    }
    writeln!(out, "count={} bound={}", sets.len(), bound.value).map_err(io)?;
    Ok(())
}
