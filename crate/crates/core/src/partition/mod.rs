//! Out-of-core clustering over edge-extended subgraphs.
//!
//! The edge set is split into partitions whose layout, together with the
//! resident per-vertex state (15 bytes per vertex), fits a byte budget.
//! Partitions are spilled to disk and streamed through the clustering
//! phases one at a time; only per-vertex state stays resident.

mod plan;
mod spill;
mod subgraph;

use std::path::Path;

pub use plan::{partition_graph, PartitionPlan};
pub use spill::{SpillSet, MANIFEST_NAME, PARTITION_MAGIC, PARTITION_VERSION};
pub use subgraph::{estimate_memory, layout_bytes, EdgeExtendedSubgraph, STATE_BYTES_PER_VERTEX};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::Params;
use crate::scan::{
    attach_edge, classify_vertex, flatten, identify_edge, init_forest, resolve_all,
    union_known_edge, union_unknown_edge, ClusteringResult, Counters, Ctx, PhaseTimer,
    ScanOptions, SimArray, StatsReport, VertexState, View,
};
use crate::VertexId;

/// What the resident side needs to know about the full graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMeta {
    pub n: usize,
    pub m: usize,
    pub degrees: Vec<u32>,
}

impl GraphMeta {
    pub fn of(g: &Graph) -> Self {
        GraphMeta {
            n: g.n(),
            m: g.m(),
            degrees: (0..g.n() as VertexId).map(|v| g.degree(v) as u32).collect(),
        }
    }

    /// Counts degrees from a stream of undirected edges over `[0, n)`.
    pub fn from_edges<I: IntoIterator<Item = (VertexId, VertexId)>>(n: usize, edges: I) -> Self {
        let mut degrees = vec![0u32; n];
        let mut m = 0;
        for (u, v) in edges {
            degrees[u as usize] += 1;
            degrees[v as usize] += 1;
            m += 1;
        }
        GraphMeta { n, m, degrees }
    }
}

/// Result of an out-of-core run.
#[derive(Debug, Clone)]
pub struct OutOfCoreRun {
    pub result: ClusteringResult,
    pub stats: StatsReport,
    pub estimates: Vec<u64>,
}

/// Runs the three phases partition by partition against resident vertex
/// state. Passes: core identification, global cleanup, unions, global
/// flatten, member attachment, global unclustered default, hub detection.
pub fn scan_out_of_core(
    meta: &GraphMeta,
    spill: &SpillSet,
    params: Params,
    options: ScanOptions,
) -> Result<(ClusteringResult, StatsReport)> {
    if spill.n() != meta.n {
        return Err(Error::Contract(format!(
            "plan covers {} vertices, graph has {}",
            spill.n(),
            meta.n
        )));
    }
    let exec = options.executor()?;
    let counters = Counters::default();
    let vs = VertexState::from_degrees(meta.degrees.iter().copied());
    let mut timer = PhaseTimer::new();
    let mut owned_total = 0usize;

    let pass = |phase: &dyn Fn(&Ctx<'_>, &EdgeExtendedSubgraph), owned_total: Option<&mut usize>| -> Result<()> {
        let mut owned_seen = 0;
        for i in 0..spill.len() {
            let part = spill.load(i)?;
            check_partition(meta, &part, i)?;
            owned_seen += part.owned.len();
            let sim = SimArray::from_bytes(&part.sim);
            let cx = Ctx {
                view: View {
                    graph: &part.local,
                    global: Some(&part.vertices),
                    owned: Some(&part.owned_mask),
                    sim: &sim,
                },
                vs: &vs,
                params: &params,
                counters: &counters,
                exec: &exec,
                attach: options.attach_rule(),
            };
            phase(&cx, &part);
            spill.store_sim(i, &sim.to_bytes())?;
        }
        if let Some(total) = owned_total {
            *total = owned_seen;
        }
        Ok(())
    };

    pass(&|cx, _| cx.for_each_edge(identify_edge), Some(&mut owned_total))?;
    if owned_total != meta.m {
        return Err(Error::Contract(format!(
            "partitions own {owned_total} edges, graph has {}",
            meta.m
        )));
    }
    timer.lap("identify_core");

    // Only vertex state is resident here; with every edge task done, an
    // undecided vertex never had an edge skipped, so its bounds are exact
    // and the bound rule always decides it.
    let resident = Ctx {
        view: View {
            graph: &Graph::from_parts(vec![0], vec![], vec![], vec![])?,
            global: None,
            owned: None,
            sim: &SimArray::new(0),
        },
        vs: &vs,
        params: &params,
        counters: &counters,
        exec: &exec,
        attach: options.attach_rule(),
    };
    let unresolved = resolve_all(&resident);
    if let Some(v) = unresolved.first() {
        return Err(Error::Internal(format!(
            "vertex {v} undecided after core identification"
        )));
    }
    timer.lap("cleanup");

    init_forest(&vs, &exec);
    pass(
        &|cx, _| {
            cx.for_each_edge(union_known_edge);
            cx.for_each_edge(union_unknown_edge);
        },
        None,
    )?;
    timer.lap("unions");
    flatten(&vs, &exec);
    timer.lap("flatten");
    pass(&|cx, _| cx.for_each_edge(attach_edge), None)?;
    timer.lap("attach_members");

    // default label for everything outside a cluster, isolated vertices
    // included; hubs are upgraded per partition below
    exec.for_each(vs.n(), |v| {
        let v = v as VertexId;
        if vs.parent(v) < 0 {
            vs.store_parent(v, crate::scan::UNCLUSTERED);
            vs.store_role(v, crate::scan::Role::Outlier);
        }
    });
    pass(
        &|cx, part| {
            let complete = part.complete_vertices();
            cx.exec
                .for_each(complete.len(), |i| classify_vertex(cx, complete[i]));
        },
        None,
    )?;
    timer.lap("classify");

    let mut stats = StatsReport::new(meta.n, meta.m, exec.workers(), &counters);
    stats.partitions = Some(spill.len());
    stats.timings = timer.timings;
    Ok((ClusteringResult::from_state(&vs), stats))
}

fn check_partition(meta: &GraphMeta, part: &EdgeExtendedSubgraph, i: usize) -> Result<()> {
    for v in part.complete_vertices() {
        let g = part.vertices[v as usize];
        if g as usize >= meta.n || part.local.degree(v) != meta.degrees[g as usize] as usize {
            return Err(Error::Contract(format!(
                "partition {i}: vertex {g} does not carry its full adjacency"
            )));
        }
    }
    if part.edges.iter().any(|&e| e as usize >= meta.m) {
        return Err(Error::Contract(format!("partition {i}: edge id out of range")));
    }
    Ok(())
}

/// Plans, spills and clusters `g` under `budget_bytes`, with partition files
/// placed in `spill_dir`.
pub fn run_out_of_core(
    g: &Graph,
    budget_bytes: u64,
    params: Params,
    options: ScanOptions,
    spill_dir: &Path,
) -> Result<OutOfCoreRun> {
    let plan = partition_graph(g, budget_bytes)?;
    let estimates = plan.estimates();
    let spill = SpillSet::write(&plan, spill_dir)?;
    drop(plan);
    let (result, stats) = scan_out_of_core(&GraphMeta::of(g), &spill, params, options)?;
    Ok(OutOfCoreRun {
        result,
        stats,
        estimates,
    })
}

