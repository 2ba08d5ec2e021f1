//! In-memory clustering pipeline.
//!
//! Phases, separated by barriers:
//! edge sweep -> bound cleanup -> known unions -> unknown unions -> flatten
//! -> member attachment -> hub/outlier pass.

mod classify;
mod cluster;
mod core;
mod result;
mod similarity;
mod state;
mod stats;

pub use cluster::{find_root, union_roots};
pub use result::ClusteringResult;
pub use similarity::{check_sim, check_sim_counted, probe_bound, structural_similarity, SimProbe};
pub use state::{
    init_state, ClusterState, Role, SimArray, SimilarityStatus, VertexState, HUB, UNCLUSTERED,
};
pub use stats::{Counters, StatsReport};

pub(crate) use classify::classify_vertex;
pub(crate) use cluster::{attach_edge, flatten, init_forest, union_known_edge, union_unknown_edge};
pub(crate) use self::core::{identify_edge, resolve_all, settle_vertex};
pub(crate) use stats::PhaseTimer;

use crate::error::Result;
use crate::exec::Executor;
use crate::graph::Graph;
use crate::params::Params;
use crate::{EdgeId, VertexId};

/// Execution settings shared by the in-memory and out-of-core engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub workers: usize,
    /// Single worker, fixed edge order, smallest-root member attachment.
    pub deterministic: bool,
}

impl ScanOptions {
    pub fn deterministic() -> Self {
        ScanOptions {
            workers: 1,
            deterministic: true,
        }
    }

    pub fn parallel(workers: usize) -> Self {
        ScanOptions {
            workers,
            deterministic: false,
        }
    }

    pub(crate) fn executor(&self) -> Result<Executor> {
        Executor::new(if self.deterministic { 1 } else { self.workers })
    }

    pub(crate) fn attach_rule(&self) -> AttachRule {
        if self.deterministic {
            AttachRule::SmallestRoot
        } else {
            AttachRule::FirstWriter
        }
    }
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions::deterministic()
    }
}

/// Which cluster a non-core vertex similar to several clusters keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum AttachRule {
    FirstWriter,
    SmallestRoot,
}

/// A graph (or loaded partition) plus the edge statuses that go with it.
pub(crate) struct View<'a> {
    pub graph: &'a Graph,
    /// Local -> global vertex ids; `None` when they coincide.
    pub global: Option<&'a [VertexId]>,
    /// Edges this view is responsible for; `None` means all.
    pub owned: Option<&'a [bool]>,
    pub sim: &'a SimArray,
}

impl View<'_> {
    #[inline]
    pub fn gid(&self, v: VertexId) -> VertexId {
        match self.global {
            Some(map) => map[v as usize],
            None => v,
        }
    }

    #[inline]
    pub fn owns(&self, e: usize) -> bool {
        self.owned.is_none_or(|o| o[e])
    }
}

pub(crate) struct Ctx<'a> {
    pub view: View<'a>,
    pub vs: &'a VertexState,
    pub params: &'a Params,
    pub counters: &'a Counters,
    pub exec: &'a Executor,
    pub attach: AttachRule,
}

impl Ctx<'_> {
    pub fn for_each_edge(&self, f: impl Fn(&Self, usize) + Sync + Send) {
        self.exec.for_each(self.view.graph.m(), |e| f(self, e));
    }
}

/// Runs the clustering phases over one in-memory graph.
pub struct Scanner<'g> {
    graph: &'g Graph,
    params: Params,
    exec: Executor,
    attach: AttachRule,
    counters: Counters,
}

impl<'g> Scanner<'g> {
    pub fn new(graph: &'g Graph, params: Params, options: ScanOptions) -> Result<Self> {
        Ok(Scanner {
            graph,
            params,
            exec: options.executor()?,
            attach: options.attach_rule(),
            counters: Counters::default(),
        })
    }

    pub fn init_state(&self) -> ClusterState {
        init_state(self.graph)
    }

    pub fn counters(&self) -> &Counters {
        &self.counters
    }

    fn ctx<'a>(&'a self, st: &'a ClusterState) -> Ctx<'a> {
        Ctx {
            view: View {
                graph: self.graph,
                global: None,
                owned: None,
                sim: &st.sim,
            },
            vs: &st.vertices,
            params: &self.params,
            counters: &self.counters,
            exec: &self.exec,
            attach: self.attach,
        }
    }

    /// Edge sweep followed by the cleanup sweep. Afterwards every role is
    /// `Core` or `NonCore`.
    pub fn identify_core(&self, st: &ClusterState) -> Result<()> {
        let cx = self.ctx(st);
        cx.for_each_edge(identify_edge);
        self.cleanup(&cx)
    }

    /// Sequential edge sweep that calls `observer` after every edge task,
    /// then the cleanup sweep.
    pub fn identify_core_observed(
        &self,
        st: &ClusterState,
        mut observer: impl FnMut(EdgeId, &ClusterState),
    ) -> Result<()> {
        let cx = self.ctx(st);
        for e in 0..self.graph.m() {
            identify_edge(&cx, e);
            observer(e as EdgeId, st);
        }
        self.cleanup(&cx)
    }

    fn cleanup(&self, cx: &Ctx<'_>) -> Result<()> {
        for v in resolve_all(cx) {
            settle_vertex(cx, v)?;
        }
        Ok(())
    }

    /// Builds the cluster forest over cores and attaches similar non-cores.
    pub fn detect_clusters(&self, st: &ClusterState) {
        let cx = self.ctx(st);
        init_forest(cx.vs, cx.exec);
        cx.for_each_edge(union_known_edge);
        cx.for_each_edge(union_unknown_edge);
        flatten(cx.vs, cx.exec);
        cx.for_each_edge(attach_edge);
    }

    pub fn classify_hub_outlier(&self, st: &ClusterState) {
        let cx = self.ctx(st);
        self.exec
            .for_each(self.graph.n(), |v| classify_vertex(&cx, v as VertexId));
    }

    pub fn run(&self) -> Result<(ClusteringResult, StatsReport)> {
        let mut timer = PhaseTimer::new();
        let st = self.init_state();
        timer.lap("init");
        let cx = self.ctx(&st);
        cx.for_each_edge(identify_edge);
        timer.lap("identify_core");
        self.cleanup(&cx)?;
        timer.lap("cleanup");
        init_forest(cx.vs, cx.exec);
        cx.for_each_edge(union_known_edge);
        timer.lap("union_known");
        cx.for_each_edge(union_unknown_edge);
        timer.lap("union_unknown");
        flatten(cx.vs, cx.exec);
        timer.lap("flatten");
        cx.for_each_edge(attach_edge);
        timer.lap("attach_members");
        self.classify_hub_outlier(&st);
        timer.lap("classify");

        let mut stats = StatsReport::new(
            self.graph.n(),
            self.graph.m(),
            self.exec.workers(),
            &self.counters,
        );
        stats.timings = timer.timings;
        Ok((ClusteringResult::from_state(&st.vertices), stats))
    }
}

/// Runs the whole pipeline on `g`.
pub fn scan_in_memory(
    g: &Graph,
    params: Params,
    options: ScanOptions,
) -> Result<(ClusteringResult, StatsReport)> {
    Scanner::new(g, params, options)?.run()
}

/// Phase 1 as a free function; see [`Scanner::identify_core`].
pub fn identify_core(g: &Graph, params: Params, st: &ClusterState) -> Result<()> {
    Scanner::new(g, params, ScanOptions::deterministic())?.identify_core(st)
}

/// Phase 2 as a free function; see [`Scanner::detect_clusters`].
pub fn detect_clusters(g: &Graph, params: Params, st: &ClusterState) -> Result<()> {
    Scanner::new(g, params, ScanOptions::deterministic())?.detect_clusters(st);
    Ok(())
}

/// Phase 3 as a free function; see [`Scanner::classify_hub_outlier`].
pub fn classify_hub_outlier(g: &Graph, params: Params, st: &ClusterState) -> Result<()> {
    Scanner::new(g, params, ScanOptions::deterministic())?.classify_hub_outlier(st);
    Ok(())
}
