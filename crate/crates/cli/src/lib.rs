//! The `fropin` command-line tool.

pub mod bench;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fropin::analysis::{cayley_graph, export_dot, green_counts};
use fropin::closure::closure;
use fropin::concurrent::{concurrent_froidure_pin, ConcurrentOptions};
use fropin::{parse_generators, Element, Side, Snapshot, Word, UNLIMITED};

pub use report::{Engine, RunReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Input {
        context: String,
        #[source]
        source: fropin::Error,
    },
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input { .. } | CliError::File { .. } | CliError::Io(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn input(context: impl Into<String>) -> impl FnOnce(fropin::Error) -> CliError {
        let context = context.into();
        move |source| match source {
            fropin::Error::Precondition(msg) => CliError::Internal(format!("{context}: {msg}")),
            source => CliError::Input { context, source },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn file_error(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::File {
        path: path.display().to_string(),
        source,
    }
}

#[derive(Debug, Parser)]
#[command(name = "fropin", version, about = "Enumerate finite semigroups of transformations and Boolean matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate the semigroup generated by a generator file.
    Enum(EnumArgs),
    /// Add generators to a saved snapshot.
    Closure(ClosureArgs),
    /// Green's class counts and Cayley graph export.
    Analyze(AnalyzeArgs),
    /// Benchmark suites writing CSV.
    Bench(bench::BenchArgs),
}

#[derive(Debug, Args)]
pub struct EnumArgs {
    /// Generator file.
    #[arg(long, required_unless_present = "resume")]
    pub gens: Option<PathBuf>,
    /// Stop once at least this many elements are known.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub limit: Option<u64>,
    /// Use the concurrent engine with this many fragments.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub fragments: Option<u64>,
    /// Seed of the fragment hash.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Multiply queued words again instead of reusing their values.
    #[arg(long)]
    pub recompute: bool,
    /// Write the snapshot to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Continue from a saved snapshot.
    #[arg(long, conflicts_with = "gens")]
    pub resume: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    /// Saved snapshot of the semigroup to extend.
    #[arg(long)]
    pub resume: PathBuf,
    /// Generator file with the extra generators.
    #[arg(long)]
    pub extra: PathBuf,
    /// Finish enumerating the larger semigroup.
    #[arg(long)]
    pub complete: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Right,
    Left,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long, required_unless_present = "resume", conflicts_with = "resume")]
    pub gens: Option<PathBuf>,
    /// Saved snapshot; enumeration is completed first if needed.
    #[arg(long)]
    pub resume: Option<PathBuf>,
    /// Write the Cayley graph as a DOT document.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Write the Cayley graph as `i a j` lines.
    #[arg(long)]
    pub edges: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SideArg::Right)]
    pub side: SideArg,
    /// Label DOT vertices with their reduced words.
    #[arg(long)]
    pub labels: bool,
}

/// Parses `args`, runs the command and maps the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let outcome = std::panic::catch_unwind(move || run(cli, &mut stdout.lock()));
    match outcome {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
        Err(_) => ExitCode::from(3),
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Enum(a) => cmd_enum(&a, out).map(|_| ()),
        Command::Closure(a) => cmd_closure(&a, out).map(|_| ()),
        Command::Analyze(a) => cmd_analyze(&a, out),
        Command::Bench(a) => bench::cmd_bench(&a, out),
    }
}

pub fn read_generators(path: &Path) -> CliResult<Vec<Element>> {
    let text = fs::read_to_string(path).map_err(file_error(path))?;
    parse_generators(&text).map_err(CliError::input(path.display().to_string()))
}

fn load(path: &Path) -> CliResult<Snapshot> {
    Snapshot::load_from_path(path).map_err(CliError::input(path.display().to_string()))
}

fn save(s: &Snapshot, path: &Path) -> CliResult<()> {
    s.save_to_path(path).map_err(CliError::input(path.display().to_string()))
}

fn check(s: &Snapshot) -> CliResult<()> {
    let report = s.validate(false);
    if report.ok() {
        Ok(())
    } else {
        Err(CliError::Internal(report.to_string()))
    }
}

pub fn cmd_enum(a: &EnumArgs, out: &mut dyn Write) -> CliResult<RunReport> {
    let limit = a.limit.map_or(UNLIMITED, |m| m as usize);
    let (s, engine, fragments, elapsed) = match (&a.resume, a.fragments) {
        (Some(_), Some(k)) if k > 1 => {
            return Err(CliError::Usage("--resume cannot be combined with more than one fragment".into()))
        }
        (Some(path), _) => {
            let mut s = load(path)?;
            let start = Instant::now();
            s.froidure_pin(limit).map_err(CliError::input("enumeration"))?;
            (s, Engine::Sequential, 1, start.elapsed())
        }
        (None, Some(k)) => {
            let gens = read_generators(a.gens.as_deref().expect("clap requires --gens"))?;
            let opts = ConcurrentOptions {
                fragments: k as usize,
                limit,
                seed: a.seed,
                recompute: a.recompute,
                audit: false,
            };
            let start = Instant::now();
            let run = concurrent_froidure_pin(gens, opts).map_err(CliError::input("enumeration"))?;
            (run.snapshot, Engine::Concurrent, k as usize, start.elapsed())
        }
        (None, None) => {
            let gens = read_generators(a.gens.as_deref().expect("clap requires --gens"))?;
            let start = Instant::now();
            let mut s = Snapshot::minimal(gens).map_err(CliError::input("generators"))?;
            s.froidure_pin(limit).map_err(CliError::input("enumeration"))?;
            (s, Engine::Sequential, 1, start.elapsed())
        }
    };
    let report = RunReport::new(&s, engine, fragments, a.limit, elapsed);
    check(&s)?;
    if let Some(path) = &a.out {
        save(&s, path)?;
    }
    writeln!(out, "{report}")?;
    Ok(report)
}

pub fn cmd_closure(a: &ClosureArgs, out: &mut dyn Write) -> CliResult<RunReport> {
    let old = load(&a.resume)?;
    let extra = read_generators(&a.extra)?;
    let start = Instant::now();
    let outcome = closure(&old, &extra).map_err(|e| match e {
        fropin::Error::KindMismatch { .. } => CliError::Input {
            context: a.extra.display().to_string(),
            source: e,
        },
        e => CliError::input("closure")(e),
    })?;
    let mut s = outcome.snapshot;
    if a.complete {
        s.froidure_pin(UNLIMITED).map_err(CliError::input("enumeration"))?;
    }
    let report = RunReport::new(&s, Engine::Sequential, 1, None, start.elapsed());
    check(&s)?;
    if let Some(path) = &a.out {
        save(&s, path)?;
    }
    writeln!(out, "{report}")?;
    Ok(report)
}

pub fn cmd_analyze(a: &AnalyzeArgs, out: &mut dyn Write) -> CliResult<()> {
    let mut s = match (&a.gens, &a.resume) {
        (_, Some(path)) => load(path)?,
        (Some(path), None) => Snapshot::minimal(read_generators(path)?).map_err(CliError::input("generators"))?,
        (None, None) => return Err(CliError::Usage("one of --gens and --resume is required".into())),
    };
    s.froidure_pin(UNLIMITED).map_err(CliError::input("enumeration"))?;
    let g = green_counts(&s).map_err(CliError::input("analysis"))?;
    writeln!(out, "size={} R={} L={} H={} D={}", s.len(), g.r, g.l, g.h, g.d)?;
    if a.dot.is_some() || a.edges.is_some() {
        let side = match a.side {
            SideArg::Right => Side::Right,
            SideArg::Left => Side::Left,
        };
        let graph = cayley_graph(&s, side).map_err(CliError::input("analysis"))?;
        if let Some(path) = &a.dot {
            let words: Option<Vec<Word>> = a
                .labels
                .then(|| (0..s.len()).map(|i| s.word_of(i).expect("index in range")).collect());
            let doc = export_dot(&graph, words.as_deref()).map_err(CliError::input("analysis"))?;
            fs::write(path, doc).map_err(file_error(path))?;
        }
        if let Some(path) = &a.edges {
            fs::write(path, graph.to_edge_list()).map_err(file_error(path))?;
        }
    }
    Ok(())
}
