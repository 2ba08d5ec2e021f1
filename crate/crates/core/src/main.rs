use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use structclust::cli::{self, Mode, RunConfig};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Inmem,
    Outofcore,
}

/// Structural graph clustering: cores, clusters, hubs and outliers.
#[derive(Debug, Parser)]
#[command(name = "structclust", version)]
struct Args {
    /// Edge list, one `u v` pair per line; `#` starts a comment line.
    #[arg(long)]
    input: PathBuf,
    /// Similarity threshold in (0, 1], as a decimal.
    #[arg(long)]
    epsilon: String,
    /// Minimum ε-neighborhood size for a core (at least 2).
    #[arg(long)]
    mu: u32,
    #[arg(long, value_enum, default_value = "inmem")]
    mode: ModeArg,
    /// Memory budget in bytes per partition (outofcore only).
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Single worker and reproducible member attachment.
    #[arg(long)]
    deterministic: bool,
    /// Cross-check the result against the serial reference implementation.
    #[arg(long)]
    verify: bool,
    /// Result file (`id<TAB>role<TAB>cluster`); stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Stats file (`key=value` lines).
    #[arg(long)]
    stats: Option<PathBuf>,
    /// Directory for partition files; a temporary directory when omitted.
    #[arg(long)]
    spill_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    // usage errors are input errors; exit code 2 is reserved for --verify
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { cli::EXIT_INPUT as u8 } else { 0 });
        }
    };
    let cfg = RunConfig {
        input: args.input,
        epsilon: args.epsilon,
        mu: args.mu,
        mode: match args.mode {
            ModeArg::Inmem => Mode::InMem,
            ModeArg::Outofcore => Mode::OutOfCore,
        },
        budget_bytes: args.budget,
        workers: args.workers,
        deterministic: args.deterministic,
        verify: args.verify,
        output: args.output,
        stats: args.stats,
        spill_dir: args.spill_dir,
    };
    ExitCode::from(cli::run(&cfg) as u8)
}
