//! The `gmlab` command line: argument parsing, configuration, the vector
//! field search cache, and one module per command group.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub mod cache;
pub mod commands;
pub mod config;
pub mod report;

use config::{Emit, RunConfig};
use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(String),
}

impl CliError {
    pub fn core(e: impl std::fmt::Display) -> Self {
        CliError::Core(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "gmlab", version, about = "Exact computations around Gushel-Mukai varieties")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub emit: Option<Emit>,
    /// Seed for the randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for parallel scans (0: one per core).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// TOML file overriding the defaults; flags override the file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology of homogeneous bundles on Gr(2,5).
    #[command(subcommand)]
    Bott(commands::bott::BottCmd),
    /// Hodge diamonds and tangent cohomology of Gr, Y and X.
    #[command(subcommand)]
    Hodge(commands::hodge::HodgeCmd),
    /// The diagonal vector field search on quadric sections.
    #[command(subcommand)]
    Vf(commands::vf::VfCmd),
    /// GM data and Lagrangian data.
    #[command(subcommand)]
    Gm(commands::gm::GmCmd),
    /// Lattice computations.
    #[command(subcommand)]
    Lattice(commands::lattice::LatticeCmd),
    /// Chow-Kunneth projectors.
    #[command(subcommand)]
    Ck(commands::ck::CkCmd),
    /// Every acceptance criterion.
    All,
}

/// What a run produced: the exit code and the text for stdout.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: String) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: msg,
        }
    }
}

pub fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(e) = cli.emit {
        cfg.emit = e;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(j) = cli.jobs {
        cfg.jobs = j;
    }
    Ok(cfg)
}

/// Run the given arguments (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::usage(text)
            };
        }
    };
    let cfg = match resolve_config(&cli) {
        Ok(c) => c,
        Err(e) => return Outcome::usage(format!("error: {e}\n")),
    };
    let mut log = Vec::new();
    let result = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))
        .and_then(|pool| pool.install(|| dispatch(&cli.command, &cfg, &mut log)));
    let stderr = String::from_utf8_lossy(&log).into_owned();
    match result {
        Ok(report) => Outcome {
            code: report.exit_code(),
            stdout: report.render(cfg.emit),
            stderr,
        },
        Err(e) => Outcome::usage(format!("{stderr}error: {e}\n")),
    }
}

fn dispatch(cmd: &Command, cfg: &RunConfig, log: &mut dyn Write) -> Result<Report, CliError> {
    match cmd {
        Command::Bott(c) => commands::bott::run(c),
        Command::Hodge(c) => commands::hodge::run(c),
        Command::Vf(c) => commands::vf::run(c, cfg, log),
        Command::Gm(c) => commands::gm::run(c, cfg),
        Command::Lattice(c) => commands::lattice::run(c),
        Command::Ck(c) => commands::ck::run(c),
        Command::All => commands::all::run(cfg, log),
    }
}
