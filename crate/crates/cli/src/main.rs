//! `ssspx`: solve, verify, generate and benchmark shortest-path instances.
//! Vertex ids are 1-based on every external surface.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use ssspx_core::bmssp::{reference_distances, DebugReport, ExecStats, Method, ParamChoice, SolveParams};
use ssspx_core::graph::dimacs::{self, ParseError};
use ssspx_core::harness::bench::{run_bench, write_csv, write_json, BenchError};
use ssspx_core::harness::{generate, Family, GenError, GenSpec, WeightModel};
use ssspx_core::{solve, FallbackMode, Graph, Solution, SolveConfig, SolveError};

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("source vertex {vertex} out of range 1..={n}")]
    SourceOutOfRange { vertex: u64, n: usize },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Bench(#[from] BenchError),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
    #[error("encoding json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Parser)]
#[command(name = "ssspx", version, about = "Single-source shortest paths on DIMACS graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the distance of every vertex from the source.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        /// Emit one JSON document with distances, stats and parameters.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Compare the solver against plain Dijkstra; exit 1 on any mismatch.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Corrupt one solver distance before comparing.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Write a generated graph in DIMACS form.
    Gen {
        #[command(flatten)]
        spec: SpecArgs,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve every family x size x weight model cell and record counters.
    Bench {
        #[arg(long = "family", value_delimiter = ',', default_value = "random-m")]
        families: Vec<Family>,
        #[arg(short = 'n', long = "n", value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Edges per vertex; each family's default when omitted.
        #[arg(long)]
        m_per_n: Option<f64>,
        #[arg(long = "weights", value_delimiter = ',', default_value = "int")]
        weights: Vec<WeightModel>,
        #[arg(long, default_value_t = 1)]
        reps: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check every run against Dijkstra.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Output file; stdout when omitted. A `.json` name selects JSON.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Args)]
struct InputArgs {
    /// DIMACS `.gr` file.
    file: PathBuf,
    #[arg(short, long, default_value_t = 1)]
    source: u64,
}

#[derive(Args)]
struct SolverArgs {
    /// Run frame-level invariant checks; exit 2 if any fails.
    #[arg(long, env = "SSSPX_DEBUG_CHECKS", value_parser = clap::builder::BoolishValueParser::new())]
    debug_checks: bool,
    #[arg(long)]
    force_t: Option<u32>,
    #[arg(long)]
    force_k: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
    force_delta: Option<u64>,
    #[arg(long, value_enum, default_value_t = Fallback::Auto)]
    fallback: Fallback,
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long, default_value = "random-m")]
    family: Family,
    #[arg(short = 'n', long = "n")]
    n: usize,
    /// Edge count; the family's default when omitted.
    #[arg(short = 'm', long = "m")]
    m: Option<usize>,
    #[arg(long, default_value = "int")]
    weights: WeightModel,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fallback {
    Auto,
    Never,
    Always,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl SolverArgs {
    fn config(&self, track_edges: bool) -> SolveConfig {
        SolveConfig {
            debug_checks: self.debug_checks,
            track_edge_relaxations: track_edges,
            force_t: self.force_t,
            force_k: self.force_k,
            force_delta: self.force_delta.map(|d| d as usize),
            fallback: match self.fallback {
                Fallback::Auto => FallbackMode::Auto,
                Fallback::Never => FallbackMode::Never,
                Fallback::Always => FallbackMode::Always,
            },
        }
    }
}

#[derive(Serialize)]
struct SolveDoc<'a> {
    source: u64,
    distances: &'a [Option<f64>],
    method: Method,
    choice: ParamChoice,
    params: Option<SolveParams>,
    stats: &'a ExecStats,
    debug: Option<&'a DebugReport>,
}

fn load(input: &InputArgs) -> Result<(Graph, u32), CliError> {
    let path = &input.file;
    let file = File::open(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
    let g = dimacs::parse(BufReader::new(file)).map_err(|source| CliError::Parse { path: path.clone(), source })?;
    if input.source == 0 || input.source > g.n() as u64 {
        return Err(CliError::SourceOutOfRange { vertex: input.source, n: g.n() });
    }
    Ok((g, (input.source - 1) as u32))
}

fn fmt_dist(d: Option<f64>) -> String {
    d.map_or_else(|| "inf".to_string(), |x| x.to_string())
}

fn summary(sol: &Solution) -> String {
    let s = &sol.stats;
    let method = match sol.method {
        Method::Bmssp => "bmssp".to_string(),
        Method::Dijkstra(reason) => format!("dijkstra ({reason:?})").to_lowercase(),
    };
    let params = sol.params.map_or(String::new(), |p| {
        format!(" t={} k={} delta={} levels={} reduced_n={}", p.t, p.k, p.delta, p.l_max, s.reduced_vertices)
    });
    format!("c method {method}{params} comparisons={} additions={}", s.comparisons, s.additions)
}

/// Reports debug-check results on stderr; false if any check failed.
fn debug_ok(sol: &Solution) -> bool {
    let Some(report) = &sol.debug else { return true };
    eprintln!(
        "c debug checks: {} frames, oracle {}, {} violations",
        report.frames_checked,
        if report.oracle_checked { "on" } else { "skipped" },
        report.violation_count
    );
    for v in &report.violations {
        eprintln!("c violation: {v}");
    }
    report.is_clean()
}

fn with_output<F>(path: Option<&Path>, write: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
{
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|source| CliError::Io { path: p.to_path_buf(), source })?;
            let mut out = BufWriter::new(file);
            write(&mut out)?;
            out.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            write(&mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn cmd_solve(input: &InputArgs, json: bool, solver: &SolverArgs) -> Result<ExitCode, CliError> {
    let (g, source) = load(input)?;
    let sol = solve(&g, source, &solver.config(false))?;
    with_output(None, |out| {
        if json {
            let doc = SolveDoc {
                source: input.source,
                distances: &sol.dist,
                method: sol.method,
                choice: sol.choice,
                params: sol.params,
                stats: &sol.stats,
                debug: sol.debug.as_ref(),
            };
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)?;
        } else {
            for (v, d) in sol.dist.iter().enumerate() {
                writeln!(out, "{} {}", v + 1, fmt_dist(*d))?;
            }
        }
        Ok(())
    })?;
    if !json {
        eprintln!("{}", summary(&sol));
    }
    Ok(if debug_ok(&sol) { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_verify(input: &InputArgs, solver: &SolverArgs, inject_fault: bool) -> Result<ExitCode, CliError> {
    let (g, source) = load(input)?;
    let mut sol = solve(&g, source, &solver.config(true))?;
    if inject_fault {
        // push the farthest reachable vertex one unit further away
        let far = (0..g.n())
            .filter(|&v| sol.dist[v].is_some())
            .max_by(|&a, &b| sol.dist[a].partial_cmp(&sol.dist[b]).expect("distances are finite"));
        if let Some(v) = far {
            sol.dist[v] = sol.dist[v].map(|d| d + 1.0);
        }
    }
    let want = reference_distances(&g, source);
    let mismatches: Vec<usize> =
        (0..g.n()).filter(|&v| sol.dist[v].map(f64::to_bits) != want[v].map(f64::to_bits)).collect();
    eprintln!("{}", summary(&sol));
    let checks_ok = debug_ok(&sol);
    if let Some(max) = sol.stats.max_direct_inserts_per_edge {
        println!("c max direct inserts per edge: {max}");
    }
    if mismatches.is_empty() {
        println!("ok: {} vertices match", g.n());
        return Ok(if checks_ok { ExitCode::SUCCESS } else { ExitCode::from(2) });
    }
    for &v in &mismatches {
        println!("mismatch {}: solver {} oracle {}", v + 1, fmt_dist(sol.dist[v]), fmt_dist(want[v]));
    }
    println!("{} of {} vertices differ", mismatches.len(), g.n());
    Ok(ExitCode::from(1))
}

fn cmd_gen(spec: &SpecArgs, output: Option<&Path>) -> Result<ExitCode, CliError> {
    let spec = GenSpec { family: spec.family, n: spec.n, m: spec.m, weights: spec.weights, seed: spec.seed };
    let g = generate(&spec)?;
    let comment = format!("family {} n {} weights {} seed {}", spec.family, spec.n, spec.weights, spec.seed);
    with_output(output, |out| Ok(dimacs::write(&g, out, Some(&comment))?))?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    families: &[Family],
    sizes: &[usize],
    m_per_n: Option<f64>,
    weights: &[WeightModel],
    reps: u32,
    seed: u64,
    verify: bool,
    format: Option<Format>,
    output: Option<&Path>,
    solver: &SolverArgs,
) -> Result<ExitCode, CliError> {
    let mut specs = Vec::new();
    for &family in families {
        for &n in sizes {
            for &w in weights {
                let m = m_per_n.map(|r| (r * n as f64).round() as usize);
                specs.push(GenSpec { family, n, m, weights: w, seed });
            }
        }
    }
    let records = run_bench(&specs, reps, &solver.config(false), verify)?;
    let json = format == Some(Format::Json)
        || (format.is_none() && output.is_some_and(|p| p.extension().is_some_and(|e| e == "json")));
    with_output(output, |out| {
        if json {
            write_json(&records, &mut *out)?;
            writeln!(out)?;
        } else {
            write_csv(&records, out)?;
        }
        Ok(())
    })?;
    let failed = records.iter().filter(|r| r.oracle_match == Some(false)).count();
    if failed > 0 {
        eprintln!("{failed} runs disagreed with the oracle");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match &cli.command {
        Command::Solve { input, json, solver } => cmd_solve(input, *json, solver),
        Command::Verify { input, solver, inject_fault } => cmd_verify(input, solver, *inject_fault),
        Command::Gen { spec, output } => cmd_gen(spec, output.as_deref()),
        Command::Bench { families, sizes, m_per_n, weights, reps, seed, verify, format, output, solver } => {
            cmd_bench(families, sizes, *m_per_n, weights, *reps, *seed, *verify, *format, output.as_deref(), solver)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
