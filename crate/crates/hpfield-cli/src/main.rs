//! Batch entry point: verification suites and example solves with one-line
//! summaries per check, versioned JSON reports, and plot-ready CSV grids.
//! Exit codes: 0 all checks pass, 1 a check or solve failed (the report is
//! still written), 2 usage or config error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod config;
mod report;
mod suites;
mod tasks;

use config::{parse_grid, RunConfig, UsageError};

#[derive(Parser)]
#[command(
    name = "hpfield",
    version,
    about = "Variational field-theory toolkit: verification suites, example solves, reports"
)]
struct Cli {
    /// RNG seed for the sampled suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory for reports and CSV grids.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Config file: one key=value per line, `#` comments.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Grid extents, e.g. `64x64` (marched solves take one extent; `solve
    /// shear` reads it as the step count).
    #[arg(long, global = true)]
    grid: Option<String>,
    /// Tolerance override for the primary residual of the subcommand.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Sample count per identity or bidegree.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Restrict verify-dirac to one base dimension n.
    #[arg(long, global = true)]
    n: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the seeded exterior-algebra identity suite (dims 2-6).
    VerifyAlgebra,
    /// Run the graded isotropy suite on the bundled charts (n = 0, 1, 2).
    VerifyDirac,
    /// Solve or march one bundled example and write its section as CSV.
    Solve { example: String },
    /// Pointwise energy and flux diagnostics of reference sections.
    EnergyReport { example: Option<String> },
    /// Residual, membership, and invariant checks of one example.
    Residual { example: String },
}

fn merged_config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.out = out.clone();
    }
    if let Some(grid) = &cli.grid {
        cfg.grid = Some(parse_grid(grid)?);
    }
    if let Some(tol) = cli.tol {
        cfg.tol = Some(tol);
    }
    if let Some(samples) = cli.samples {
        cfg.samples = Some(samples);
    }
    if let Some(n) = cli.n {
        cfg.n = Some(n);
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let cfg = merged_config(cli)?;
    match &cli.command {
        Command::VerifyAlgebra => suites::verify_algebra(&cfg),
        Command::VerifyDirac => suites::verify_dirac(&cfg),
        Command::Solve { example } => tasks::solve(&cfg, example),
        Command::EnergyReport { example } => tasks::energy(&cfg, example.as_deref()),
        Command::Residual { example } => tasks::residual(&cfg, example),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            if err.is::<UsageError>() {
                eprintln!("error: {err}");
            } else {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(2)
        }
    }
}
