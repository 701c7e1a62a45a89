//! `gdom`: construct, verify, analyze and solve dominating sets of `G_{l,k}`.
//!
//! Exit codes: 0 ok, 1 verification failed, 2 budget exhausted, 64 usage,
//! 65 domain, 66 parse or unreadable input.

mod commands;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{RunReport, Timing};

pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DOMAIN: u8 = 65;
pub const EXIT_PARSE: u8 = 66;

/// Relative `--out` paths are resolved against this directory when it is set.
pub const OUT_DIR_VAR: &str = "GDOM_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "gdom", version, about = "Dominating sets in subset-inclusion graphs G_{l,k}")]
pub struct Cli {
    /// Print the run report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,
    /// Where to write the artifact (graph, set family or dominating set).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build one of the fixed constructions.
    Construct(ConstructArgs),
    /// Check files for domination, independence, well-coveredness or minimality.
    Verify {
        kind: VerifyKind,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Triangle and uncovered-edge certificate of a graph file.
    Analyze { file: PathBuf },
    /// Exact minimum (independent) dominating set.
    Solve(SolveArgs),
    /// Closed-form bounds.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Exhaustive or sampled small cases.
    #[command(subcommand)]
    Exhaustive(ExhaustiveCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builder {
    Kplus,
    H5a,
    H5b,
    H9,
    Star,
    Sts,
    Packing,
    Base,
    Layered,
    #[value(name = "fig4-left")]
    Fig4Left,
    #[value(name = "fig4-right")]
    Fig4Right,
    Example1,
    Example2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PackerArg {
    Auto,
    Greedy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Hypergraph,
    Dompair,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    pub which: Builder,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Order of a Steiner triple system.
    #[arg(long)]
    pub v: Option<usize>,
    /// Ground set of a packing.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    /// Split ratio of a layered construction (default: the optimizing root).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Explicit part sizes of a layered construction, e.g. `19,7,4`.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value = "auto")]
    pub packer: PackerArg,
    /// Artifact for `base` and `layered`.
    #[arg(long, value_enum, default_value = "hypergraph")]
    pub emit: Emit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Dominating,
    Independent,
    Wellcovered,
    Minimal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Gamma,
    I,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub l: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    /// Soft time limit in seconds.
    #[arg(long)]
    pub budget: Option<f64>,
    /// Dominating-set files used as initial incumbents.
    #[arg(long)]
    pub warm: Vec<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum BoundsCommand {
    /// Asymptotic lower and upper bounds on i(G_{k+1,k}) / C(n,k).
    Table1 {
        /// Override a Turán density, e.g. `--tk 3=0.5936`.
        #[arg(long = "tk", value_parser = parse_tk)]
        tk: Vec<(u32, f64)>,
    },
    /// Optimizing split ratio and the resulting upper bound.
    Theorem3 {
        #[arg(long)]
        k: u32,
    },
    /// Exact value of i(G_{3,2}) = γ(G_{3,2}).
    Gamma32 {
        #[arg(long)]
        n: u64,
    },
    /// Lower bound on γ(G_{l,k}) / C(n,k) from a Turán density.
    General {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: f64,
    },
    /// Leading coefficient of γ(G_{l,2}) / C(n,2).
    GammaL2 {
        #[arg(long)]
        l: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExhaustiveCommand {
    /// Every minimum dominating set of G_{3,2} on [n], n <= 6.
    Optimal32 {
        #[arg(long)]
        n: usize,
    },
    /// Random relabelings of optimal classes of G_{3,2} on [n], 5 <= n <= 9.
    Sample32 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 25)]
        count: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Maximum of |E| - |T| - |E0|/2 over all graphs on [n], n <= 7.
    GraphsF {
        #[arg(long)]
        n: usize,
    },
}

fn parse_tk(s: &str) -> Result<(u32, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected k=value, got `{s}`"))?;
    let k: u32 = k.trim().parse().map_err(|e| format!("bad k in `{s}`: {e}"))?;
    let v: f64 = v.trim().parse().map_err(|e| format!("bad value in `{s}`: {e}"))?;
    if !(0.0..=1.0).contains(&v) {
        return Err(format!("density {v} outside [0, 1]"));
    }
    Ok((k, v))
}

/// Failures that end a run without a report.
#[derive(Debug)]
pub enum CliError {
    Core(gdom::Error),
    Usage(String),
    Io { path: PathBuf, source: std::io::Error },
    /// A library error raised while reading `path`.
    File { path: PathBuf, source: gdom::Error },
}

impl From<gdom::Error> for CliError {
    fn from(e: gdom::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use gdom::Error::*;
        match self {
            CliError::Usage(_) | CliError::Core(Argument(_) | Range { .. }) => EXIT_USAGE,
            CliError::Core(Domain(_) | Precondition(_)) => EXIT_DOMAIN,
            CliError::Core(Parse { .. }) | CliError::Io { .. } => EXIT_PARSE,
            CliError::Core(Internal(_)) => 1,
            CliError::File { source, .. } => CliError::Core(source.clone()).exit_code(),
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Usage(m) => format!("usage: {m}"),
            CliError::Io { path, source } => format!("{}: {source}", path.display()),
            CliError::File { path, source } => format!("{}: {source}", path.display()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Reads `path` and parses it, attributing parse errors to the file.
pub fn parse_file<T>(path: &Path, parse: impl Fn(&str) -> gdom::Result<T>) -> CliResult<T> {
    parse(&read_file(path)?).map_err(|source| CliError::File { path: path.to_path_buf(), source })
}

pub fn write_file(path: &Path, text: &str) -> CliResult<()> {
    let target = resolve_out(path);
    if let Some(parent) = target.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|source| CliError::Io { path: parent.to_path_buf(), source })?;
    }
    std::fs::write(&target, text).map_err(|source| CliError::Io { path: target, source })
}

fn subcommand_name(cmd: &Command) -> String {
    match cmd {
        Command::Construct(a) => format!("construct {}", a.which.to_possible_value().expect("named").get_name()),
        Command::Verify { kind, .. } => format!("verify {}", kind.to_possible_value().expect("named").get_name()),
        Command::Analyze { .. } => "analyze".into(),
        Command::Solve(_) => "solve".into(),
        Command::Bounds(b) => format!(
            "bounds {}",
            match b {
                BoundsCommand::Table1 { .. } => "table1",
                BoundsCommand::Theorem3 { .. } => "theorem3",
                BoundsCommand::Gamma32 { .. } => "gamma32",
                BoundsCommand::General { .. } => "general",
                BoundsCommand::GammaL2 { .. } => "gamma-l2",
            }
        ),
        Command::Exhaustive(e) => format!(
            "exhaustive {}",
            match e {
                ExhaustiveCommand::Optimal32 { .. } => "optimal32",
                ExhaustiveCommand::Sample32 { .. } => "sample32",
                ExhaustiveCommand::GraphsF { .. } => "graphs-f",
            }
        ),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        gdom::par::set_threads(t as usize);
    }
    let start = Instant::now();
    let outcome = match commands::run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("gdom: {}", e.message());
            return ExitCode::from(e.exit_code());
        }
    };
    let report = RunReport {
        tool: "gdom",
        version: env!("CARGO_PKG_VERSION"),
        subcommand: subcommand_name(&cli.command),
        command: argv.iter().skip(1).cloned().collect(),
        inputs: outcome.inputs,
        outputs: outcome.outputs,
        status: outcome.status,
        timing: Timing { elapsed_ms: start.elapsed().as_secs_f64() * 1000.0, nodes_explored: outcome.nodes_explored },
    };
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text(outcome.table.as_deref()));
    }
    ExitCode::from(report.status.exit_code() as u8)
}
