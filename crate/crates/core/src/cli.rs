//! Command-line front end: load an edge list, cluster it in memory or out of
//! core, optionally cross-check against the oracle, and write the result and
//! stats files.
//!
//! Exit codes: 0 success, 1 input or parse error, 2 oracle mismatch under
//! `--verify`, 3 infeasible out-of-core budget.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::graph::{EdgeList, Graph};
use crate::oracle::{results_equivalent, serial_scan};
use crate::params::{Epsilon, Params};
use crate::partition::run_out_of_core;
use crate::scan::{scan_in_memory, ClusteringResult, ScanOptions, StatsReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    InMem,
    OutOfCore,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: PathBuf,
    /// Kept as the decimal string the user typed so the threshold stays exact.
    pub epsilon: String,
    pub mu: u32,
    pub mode: Mode,
    pub budget_bytes: Option<u64>,
    pub workers: usize,
    pub deterministic: bool,
    pub verify: bool,
    /// Result file; standard output when absent.
    pub output: Option<PathBuf>,
    pub stats: Option<PathBuf>,
    /// Where partition files go; a temporary directory when absent.
    pub spill_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, epsilon: &str, mu: u32) -> Self {
        RunConfig {
            input: input.into(),
            epsilon: epsilon.to_string(),
            mu,
            mode: Mode::InMem,
            budget_bytes: None,
            workers: 1,
            deterministic: false,
            verify: false,
            output: None,
            stats: None,
            spill_dir: None,
        }
    }

    pub fn params(&self) -> Result<Params> {
        Params::new(self.mu, Epsilon::parse(&self.epsilon)?)
    }

    pub fn options(&self) -> Result<ScanOptions> {
        if self.workers == 0 {
            return Err(Error::InvalidParameter("workers must be at least 1".into()));
        }
        Ok(if self.deterministic {
            ScanOptions::deterministic()
        } else {
            ScanOptions::parallel(self.workers)
        })
    }

    fn validate(&self) -> Result<(Params, ScanOptions)> {
        let params = self.params()?;
        let options = self.options()?;
        if self.mode == Mode::OutOfCore && self.budget_bytes.is_none() {
            return Err(Error::InvalidParameter(
                "outofcore mode requires --budget".into(),
            ));
        }
        Ok((params, options))
    }
}

/// Everything a successful run produced, before it is written out.
#[derive(Debug)]
pub struct RunOutput {
    pub result: ClusteringResult,
    pub stats: StatsReport,
    pub original_ids: Vec<u64>,
}

/// Runs the configuration and maps the outcome to an exit code, reporting
/// problems on stderr.
pub fn run(cfg: &RunConfig) -> i32 {
    match execute(cfg) {
        Ok(out) => match write_outputs(cfg, &out) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_INPUT
            }
        },
        Err(Failure::Mismatch(msg)) => {
            eprintln!("verify failed: {msg}");
            EXIT_MISMATCH
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InfeasibleBudget { .. } => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

#[derive(Debug)]
pub enum Failure {
    Error(Error),
    /// `--verify` found a disagreement with the oracle.
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

/// Loads, clusters and (optionally) verifies without writing anything.
pub fn execute(cfg: &RunConfig) -> std::result::Result<RunOutput, Failure> {
    let (params, options) = cfg.validate()?;
    let list = load(&cfg.input)?;
    let graph = Graph::from_edge_list(&list);

    let (result, stats) = match cfg.mode {
        Mode::InMem => scan_in_memory(&graph, params, options)?,
        Mode::OutOfCore => {
            let budget = cfg.budget_bytes.unwrap_or_default();
            let run = match &cfg.spill_dir {
                Some(dir) => {
                    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
                    run_out_of_core(&graph, budget, params, options, dir)?
                }
                None => {
                    let dir = tempfile::tempdir().map_err(|e| Error::io("spill directory", e))?;
                    run_out_of_core(&graph, budget, params, options, dir.path())?
                }
            };
            (run.result, run.stats)
        }
    };

    if cfg.verify {
        let oracle = serial_scan(&graph, params);
        if let Err(m) = results_equivalent(&result, &oracle) {
            return Err(Failure::Mismatch(m.to_string()));
        }
    }

    Ok(RunOutput {
        result,
        stats,
        original_ids: list.original_ids().to_vec(),
    })
}

fn load(path: &Path) -> Result<EdgeList> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    EdgeList::parse(BufReader::new(file)).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

fn write_outputs(cfg: &RunConfig, out: &RunOutput) -> Result<()> {
    match &cfg.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| Error::io(path, e))?;
            let mut w = BufWriter::new(file);
            out.result
                .write_tsv(&mut w, Some(&out.original_ids))
                .and_then(|_| w.flush())
                .map_err(|e| Error::io(path, e))?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            out.result
                .write_tsv(&mut w, Some(&out.original_ids))
                .and_then(|_| w.flush())
                .map_err(|e| Error::io("<stdout>", e))?;
        }
    }
    if let Some(path) = &cfg.stats {
        std::fs::write(path, out.stats.to_string()).map_err(|e| Error::io(path, e))?;
    }
    Ok(())
}
