//! Cluster forest over core vertices.
//!
//! Each vertex has one 64-bit link word holding `(height, parent)`. Links
//! always go from the smaller `(height, -id)` key to the larger one and are
//! installed with a single CAS on the child's word, so the forest stays
//! acyclic under any interleaving.

use std::cmp::Reverse;
use std::sync::atomic::Ordering;

use super::similarity::probe;
use super::state::{height_of, pack, parent_of, Role, SimilarityStatus, VertexState, UNCLUSTERED};
use super::{AttachRule, Ctx};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::{EdgeId, VertexId};

/// Follows parent links from `u` to its root. Read-only.
pub fn find_root(vs: &VertexState, u: VertexId) -> Result<VertexId> {
    if vs.parent(u) < 0 {
        return Err(Error::Contract(format!("vertex {u} is not in the forest")));
    }
    Ok(root_of(vs, u))
}

#[inline]
pub(crate) fn root_of(vs: &VertexState, u: VertexId) -> VertexId {
    let mut p = vs.parent(u);
    loop {
        let next = vs.parent(p as VertexId);
        if next == p {
            return p as VertexId;
        }
        p = next;
    }
}

/// Merges the trees containing `u` and `v` by height. Returns `true` if two
/// distinct trees were joined.
pub fn union_roots(vs: &VertexState, u: VertexId, v: VertexId) -> bool {
    union_counted(vs, u, v).0
}

/// As [`union_roots`], also returning how many times a CAS or root check
/// had to be retried.
pub(crate) fn union_counted(vs: &VertexState, u: VertexId, v: VertexId) -> (bool, u64) {
    let mut retries = 0;
    let (mut x, mut y) = (u, v);
    loop {
        x = root_of(vs, x);
        y = root_of(vs, y);
        if x == y {
            return (false, retries);
        }
        let (wx, wy) = (vs.load_link(x), vs.load_link(y));
        if parent_of(wx) != x as i32 || parent_of(wy) != y as i32 {
            retries += 1;
            continue;
        }
        let (child, child_word, root) =
            if (height_of(wx), Reverse(x)) < (height_of(wy), Reverse(y)) {
                (x, wx, y)
            } else {
                (y, wy, x)
            };
        let child_height = height_of(child_word);
        if vs
            .cas_link(child, child_word, pack(child_height, root as i32))
            .is_err()
        {
            retries += 1;
            continue;
        }
        // The surviving root must stay strictly taller than the tree it absorbed.
        loop {
            let w = vs.load_link(root);
            if parent_of(w) != root as i32 || height_of(w) > child_height {
                break;
            }
            if vs.cas_link(root, w, pack(child_height + 1, root as i32)).is_ok() {
                break;
            }
        }
        return (true, retries);
    }
}

/// Every core becomes a singleton tree; everything else leaves the forest.
pub(crate) fn init_forest(vs: &VertexState, exec: &Executor) {
    exec.for_each(vs.n(), |v| {
        let v = v as VertexId;
        let parent = if vs.role(v) == Role::Core { v as i32 } else { UNCLUSTERED };
        vs.link[v as usize].store(pack(1, parent), Ordering::Release);
    });
}

#[inline]
fn core_pair(cx: &Ctx<'_>, e: usize) -> Option<(VertexId, VertexId)> {
    if !cx.view.owns(e) {
        return None;
    }
    let (a, b) = cx.view.graph.edge(e as EdgeId);
    let (ga, gb) = (cx.view.gid(a), cx.view.gid(b));
    (cx.vs.role(ga) == Role::Core && cx.vs.role(gb) == Role::Core).then_some((ga, gb))
}

fn union(cx: &Ctx<'_>, a: VertexId, b: VertexId) {
    let (_, retries) = union_counted(cx.vs, a, b);
    if retries > 0 {
        cx.counters.union_retries.fetch_add(retries, Ordering::Relaxed);
    }
}

/// Joins cores whose edge is already known to be similar.
pub(crate) fn union_known_edge(cx: &Ctx<'_>, e: usize) {
    if let Some((ga, gb)) = core_pair(cx, e) {
        if cx.view.sim.get(e) == SimilarityStatus::Similar {
            union(cx, ga, gb);
        }
    }
}

/// Core-core edge of unknown similarity: evaluated only while its
/// endpoints are in different trees.
pub(crate) fn union_unknown_edge(cx: &Ctx<'_>, e: usize) {
    let Some((ga, gb)) = core_pair(cx, e) else {
        return;
    };
    if cx.view.sim.get(e) != SimilarityStatus::Unknown {
        return;
    }
    let (ra, rb) = (root_of(cx.vs, ga), root_of(cx.vs, gb));
    if ra == rb {
        return;
    }
    let (a, b) = cx.view.graph.edge(e as EdgeId);
    let p = probe(cx.view.graph, a, b, &cx.params.epsilon);
    cx.counters.record_eval(p.probes);
    cx.view.sim.decide(e, SimilarityStatus::from_bool(p.similar));
    if p.similar {
        union(cx, ra, rb);
    }
}

/// Points every core directly at its root.
pub(crate) fn flatten(vs: &VertexState, exec: &Executor) {
    exec.for_each(vs.n(), |v| {
        let v = v as VertexId;
        if vs.role(v) == Role::Core {
            vs.store_parent(v, root_of(vs, v) as i32);
        }
    });
}

/// Core/non-core edge: settle its similarity and, if similar, attach the
/// non-core endpoint to the core's cluster.
pub(crate) fn attach_edge(cx: &Ctx<'_>, e: usize) {
    if !cx.view.owns(e) {
        return;
    }
    let (a, b) = cx.view.graph.edge(e as EdgeId);
    let (ga, gb) = (cx.view.gid(a), cx.view.gid(b));
    let outside = |r: Role| matches!(r, Role::NonCore | Role::Member);
    let (ra, rb) = (cx.vs.role(ga), cx.vs.role(gb));
    let (core, other) = if ra == Role::Core && outside(rb) {
        (ga, gb)
    } else if rb == Role::Core && outside(ra) {
        (gb, ga)
    } else {
        return;
    };
    let mut status = cx.view.sim.get(e);
    if status == SimilarityStatus::Unknown {
        let p = probe(cx.view.graph, a, b, &cx.params.epsilon);
        cx.counters.record_eval(p.probes);
        cx.view.sim.decide(e, SimilarityStatus::from_bool(p.similar));
        status = cx.view.sim.get(e);
    }
    if status == SimilarityStatus::Similar {
        let root = cx.vs.parent(core);
        debug_assert!(root >= 0);
        attach(cx.vs, other, root, cx.attach);
        cx.vs.store_role(other, Role::Member);
    }
}

fn attach(vs: &VertexState, v: VertexId, root: i32, rule: AttachRule) {
    loop {
        let w = vs.load_link(v);
        let current = parent_of(w);
        if current == root {
            return;
        }
        if current >= 0 {
            vs.shared[v as usize].store(true, Ordering::Release);
            if rule == AttachRule::FirstWriter || root > current {
                return;
            }
        }
        if vs.cas_link(v, w, pack(height_of(w), root)).is_ok() {
            return;
        }
    }
}
