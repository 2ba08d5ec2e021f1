use std::collections::BTreeSet;

use crate::graph::{build_graph, EdgeList, Graph};
use crate::{EdgeId, VertexId};

/// Bytes of resident per-vertex state: 2 (lower) + 4 (upper) + 1 (role)
/// + 4 (parent) + 4 (height).
pub const STATE_BYTES_PER_VERTEX: u64 = 15;

/// Layout bytes for a partition with `edges` undirected edges over
/// `vertices` vertices: per edge two adjacency slots, two edge-id slots and
/// one oriented pair (24 bytes) plus a similarity byte; per vertex a 4-byte
/// offset.
#[inline]
pub fn layout_bytes(edges: u64, vertices: u64) -> u64 {
    25 * edges + 4 * vertices
}

/// An owned edge set together with every edge touching one of its
/// endpoints, so that the similarity of each owned edge can be computed
/// locally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeExtendedSubgraph {
    /// Global ids of the edges this partition is responsible for, sorted.
    pub(crate) owned: Vec<EdgeId>,
    pub(crate) local: Graph,
    /// Local -> global vertex id, increasing.
    pub(crate) vertices: Vec<VertexId>,
    /// Local -> global edge id.
    pub(crate) edges: Vec<EdgeId>,
    /// Per local edge: owned here?
    pub(crate) owned_mask: Vec<bool>,
    /// Per local edge similarity status byte, persisted between passes.
    pub(crate) sim: Vec<u8>,
}

impl EdgeExtendedSubgraph {
    /// Closure of `owned` in `g`.
    pub fn from_owned(g: &Graph, owned: &[EdgeId]) -> Self {
        let mut owned: Vec<EdgeId> = owned.to_vec();
        owned.sort_unstable();
        owned.dedup();
        let mut closure: BTreeSet<EdgeId> = BTreeSet::new();
        for &e in &owned {
            let (u, v) = g.edge(e);
            closure.extend(g.neighbor_edges(u));
            closure.extend(g.neighbor_edges(v));
        }
        Self::from_closure(g, owned, closure.into_iter().collect())
    }

    /// `owned` and `closure` sorted, `owned` a subset of `closure`.
    pub(crate) fn from_closure(g: &Graph, owned: Vec<EdgeId>, closure: Vec<EdgeId>) -> Self {
        let mut vertices: Vec<VertexId> = closure
            .iter()
            .flat_map(|&e| {
                let (a, b) = g.edge(e);
                [a, b]
            })
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        let local_id = |v: VertexId| vertices.binary_search(&v).unwrap() as VertexId;
        let el = EdgeList::from_pairs(
            vertices.len(),
            closure.iter().map(|&e| {
                let (a, b) = g.edge(e);
                (local_id(a), local_id(b))
            }),
        )
        .expect("closure endpoints are in range");
        let local = build_graph(&el);
        let edges: Vec<EdgeId> = local
            .edges()
            .iter()
            .map(|&(a, b)| {
                g.edge_index(vertices[a as usize], vertices[b as usize])
                    .expect("local edge exists globally")
            })
            .collect();
        let owned_mask = edges
            .iter()
            .map(|e| owned.binary_search(e).is_ok())
            .collect();
        let sim = vec![0; edges.len()];
        EdgeExtendedSubgraph {
            owned,
            local,
            vertices,
            edges,
            owned_mask,
            sim,
        }
    }

    pub fn owned_edges(&self) -> &[EdgeId] {
        &self.owned
    }

    pub fn local_graph(&self) -> &Graph {
        &self.local
    }

    pub fn global_vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn global_edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn owned_mask(&self) -> &[bool] {
        &self.owned_mask
    }

    pub fn sim_bytes(&self) -> &[u8] {
        &self.sim
    }

    pub fn global_vertex(&self, local: VertexId) -> VertexId {
        self.vertices[local as usize]
    }

    pub fn local_vertex(&self, global: VertexId) -> Option<VertexId> {
        self.vertices
            .binary_search(&global)
            .ok()
            .map(|i| i as VertexId)
    }

    /// Local ids of endpoints of owned edges; their adjacency is complete.
    pub fn complete_vertices(&self) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self
            .local
            .edges()
            .iter()
            .zip(&self.owned_mask)
            .filter(|(_, &owned)| owned)
            .flat_map(|(&(a, b), _)| [a, b])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// `25 |E_s| + 4 |V_s|` for the subgraph's local layout.
pub fn estimate_memory(s: &EdgeExtendedSubgraph) -> u64 {
    layout_bytes(s.local.m() as u64, s.local.n() as u64)
}
