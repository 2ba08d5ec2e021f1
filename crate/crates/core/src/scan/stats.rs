//! Operation counters and the `key=value` stats report.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

#[derive(Debug, Default)]
pub struct Counters {
    pub(crate) sim_evals: AtomicU64,
    pub(crate) adj_probes: AtomicU64,
    pub(crate) union_retries: AtomicU64,
}

impl Counters {
    #[inline]
    pub(crate) fn record_eval(&self, probes: u64) {
        self.sim_evals.fetch_add(1, Ordering::Relaxed);
        self.adj_probes.fetch_add(probes, Ordering::Relaxed);
    }

    pub fn sim_evals(&self) -> u64 {
        self.sim_evals.load(Ordering::Relaxed)
    }

    pub fn adj_probes(&self) -> u64 {
        self.adj_probes.load(Ordering::Relaxed)
    }

    pub fn union_retries(&self) -> u64 {
        self.union_retries.load(Ordering::Relaxed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StatsReport {
    pub n: usize,
    pub m: usize,
    pub workers: usize,
    pub sim_evals: u64,
    pub adj_probes: u64,
    pub union_retries: u64,
    pub partitions: Option<usize>,
    /// Phase name and wall time in microseconds, in execution order.
    pub timings: Vec<(&'static str, u128)>,
}

impl StatsReport {
    pub(crate) fn new(n: usize, m: usize, workers: usize, counters: &Counters) -> Self {
        StatsReport {
            n,
            m,
            workers,
            sim_evals: counters.sim_evals(),
            adj_probes: counters.adj_probes(),
            union_retries: counters.union_retries(),
            partitions: None,
            timings: Vec::new(),
        }
    }

    pub fn timing(&self, phase: &str) -> Option<u128> {
        self.timings.iter().find(|(p, _)| *p == phase).map(|&(_, t)| t)
    }
}

impl fmt::Display for StatsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "m={}", self.m)?;
        writeln!(f, "workers={}", self.workers)?;
        writeln!(f, "sim_evals={}", self.sim_evals)?;
        writeln!(f, "adj_probes={}", self.adj_probes)?;
        writeln!(f, "union_retries={}", self.union_retries)?;
        if let Some(k) = self.partitions {
            writeln!(f, "partitions={k}")?;
        }
        for (phase, us) in &self.timings {
            writeln!(f, "{phase}_us={us}")?;
        }
        Ok(())
    }
}

/// Collects per-phase wall times.
pub(crate) struct PhaseTimer {
    start: Instant,
    pub(crate) timings: Vec<(&'static str, u128)>,
}

impl PhaseTimer {
    pub(crate) fn new() -> Self {
        PhaseTimer {
            start: Instant::now(),
            timings: Vec::new(),
        }
    }

    pub(crate) fn lap(&mut self, phase: &'static str) {
        let now = Instant::now();
        self.timings.push((phase, (now - self.start).as_micros()));
        self.start = now;
    }
}
