//! Core identification with bound pruning.
//!
//! Each undirected edge is one task. A task is skipped when both endpoints
//! already have a decided role; otherwise its similarity is computed and the
//! endpoints' bounds move: `lower` up on a similar edge, `upper` down on a
//! dissimilar one. A vertex is a core as soon as `lower >= mu` and a non-core
//! as soon as `upper < mu`.

use std::sync::atomic::Ordering;

use super::similarity::probe;
use super::state::{Role, SimilarityStatus, VertexState};
use super::Ctx;
use crate::error::{Error, Result};
use crate::{EdgeId, VertexId};

pub(crate) fn identify_edge(cx: &Ctx<'_>, e: usize) {
    if !cx.view.owns(e) {
        return;
    }
    let (a, b) = cx.view.graph.edge(e as EdgeId);
    let (ga, gb) = (cx.view.gid(a), cx.view.gid(b));
    if cx.vs.role(ga) != Role::Unknown && cx.vs.role(gb) != Role::Unknown {
        return;
    }
    if cx.view.sim.get(e) != SimilarityStatus::Unknown {
        return;
    }
    evaluate_and_bound(cx, e, a, b);
}

/// Computes the similarity of local edge `e = (a, b)`, records it and moves
/// both endpoints' bounds. Only the worker that decides the status updates
/// bounds, so no edge is counted twice.
fn evaluate_and_bound(cx: &Ctx<'_>, e: usize, a: VertexId, b: VertexId) {
    let p = probe(cx.view.graph, a, b, &cx.params.epsilon);
    cx.counters.record_eval(p.probes);
    if cx.view.sim.decide(e, SimilarityStatus::from_bool(p.similar)) {
        let mu = cx.params.mu;
        for x in [cx.view.gid(a), cx.view.gid(b)] {
            apply_bound(cx.vs, mu, x, p.similar);
        }
    }
}

#[inline]
fn apply_bound(vs: &VertexState, mu: u32, v: VertexId, similar: bool) {
    if similar {
        let lower = vs.lower[v as usize].fetch_add(1, Ordering::AcqRel) + 1;
        if lower >= mu {
            vs.decide_role(v, Role::Core);
        }
    } else {
        let upper = vs.upper[v as usize].fetch_sub(1, Ordering::AcqRel) - 1;
        if upper < mu {
            vs.decide_role(v, Role::NonCore);
        }
    }
}

/// Decides `v`'s role from its bounds if they allow it. Returns whether the
/// role is decided afterwards.
pub(crate) fn resolve_by_bounds(vs: &VertexState, mu: u32, v: VertexId) -> bool {
    if vs.role(v) != Role::Unknown {
        return true;
    }
    if vs.lower(v) >= mu {
        vs.decide_role(v, Role::Core);
    } else if vs.upper(v) < mu {
        vs.decide_role(v, Role::NonCore);
    } else {
        return false;
    }
    true
}

/// Vertex sweep run after the edge sweep. Returns vertices the bounds could
/// not decide.
pub(crate) fn resolve_all(cx: &Ctx<'_>) -> Vec<VertexId> {
    let mu = cx.params.mu;
    cx.exec.for_each(cx.vs.n(), |v| {
        resolve_by_bounds(cx.vs, mu, v as VertexId);
    });
    (0..cx.vs.n() as VertexId)
        .filter(|&v| cx.vs.role(v) == Role::Unknown)
        .collect()
}

/// Evaluates every still-unknown edge around `v` (local id, complete
/// adjacency required) and re-applies the bound rule.
pub(crate) fn settle_vertex(cx: &Ctx<'_>, v: VertexId) -> Result<()> {
    let g = cx.view.graph;
    for (&w, &e) in g.neighbors(v).iter().zip(g.neighbor_edges(v)) {
        let e = e as usize;
        if cx.view.sim.get(e) == SimilarityStatus::Unknown {
            evaluate_and_bound(cx, e, v, w);
        }
    }
    if resolve_by_bounds(cx.vs, cx.params.mu, cx.view.gid(v)) {
        Ok(())
    } else {
        Err(Error::Internal(format!(
            "vertex {} undecided with all incident edges evaluated",
            cx.view.gid(v)
        )))
    }
}
