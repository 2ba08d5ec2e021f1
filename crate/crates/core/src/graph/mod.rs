//! Immutable CSR layout with an edge-id index and a degree-oriented edge array.
//!
//! Every undirected edge `{u, v}` has two adjacency slots (one in each
//! endpoint's run) and a single entry in the edge array. The edge array
//! stores it as `(a, b)` with `deg(a) < deg(b)`, ties broken by id, so
//! per-edge work can always iterate the cheaper endpoint.

pub(crate) mod cache;
mod edge_list;

use std::ops::Range;

pub use cache::{read_cache, read_graph_cache, write_cache, write_graph_cache, CACHE_MAGIC, CACHE_VERSION};
pub use edge_list::{parse_edge_list, EdgeList, MAX_VERTICES};

use crate::error::{Error, Result};
use crate::{EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<u64>,
    adjacency: Vec<VertexId>,
    edge_ids: Vec<EdgeId>,
    edges: Vec<(VertexId, VertexId)>,
}

/// Builds the CSR layout. Deterministic for a given edge set regardless of
/// the order edges were supplied in.
pub fn build_graph(el: &EdgeList) -> Graph {
    let n = el.n();
    let mut degree = vec![0u64; n];
    for &(u, v) in el.edges() {
        degree[u as usize] += 1;
        degree[v as usize] += 1;
    }

    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0u64);
    for d in &degree {
        offsets.push(offsets.last().unwrap() + d);
    }

    let mut cursor: Vec<u64> = offsets[..n].to_vec();
    let mut adjacency = vec![0 as VertexId; 2 * el.m()];
    for &(u, v) in el.edges() {
        adjacency[cursor[u as usize] as usize] = v;
        cursor[u as usize] += 1;
        adjacency[cursor[v as usize] as usize] = u;
        cursor[v as usize] += 1;
    }
    for v in 0..n {
        adjacency[offsets[v] as usize..offsets[v + 1] as usize].sort_unstable();
    }

    let mut edges: Vec<(VertexId, VertexId)> = el
        .edges()
        .iter()
        .map(|&(u, v)| {
            if (degree[u as usize], u) < (degree[v as usize], v) {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect();
    edges.sort_unstable();

    let mut g = Graph {
        offsets,
        adjacency,
        edge_ids: vec![0; 2 * el.m()],
        edges,
    };
    for e in 0..g.edges.len() {
        let (a, b) = g.edges[e];
        let sa = g.slot_of(a, b).expect("edge endpoint missing from adjacency");
        let sb = g.slot_of(b, a).expect("edge endpoint missing from adjacency");
        g.edge_ids[sa] = e as EdgeId;
        g.edge_ids[sb] = e as EdgeId;
    }
    g
}

impl Graph {
    pub fn from_edge_list(el: &EdgeList) -> Self {
        build_graph(el)
    }

    /// Reassembles a graph from raw arrays, checking every layout invariant.
    pub fn from_parts(
        offsets: Vec<u64>,
        adjacency: Vec<VertexId>,
        edge_ids: Vec<EdgeId>,
        edges: Vec<(VertexId, VertexId)>,
    ) -> Result<Self> {
        let g = Graph {
            offsets,
            adjacency,
            edge_ids,
            edges,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.offsets.len().saturating_sub(1)
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        (self.offsets[v as usize + 1] - self.offsets[v as usize]) as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n() as VertexId)
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    #[inline]
    pub fn slots(&self, v: VertexId) -> Range<usize> {
        self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize
    }

    /// Sorted neighbors of `v`.
    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[self.slots(v)]
    }

    /// Edge ids parallel to [`Graph::neighbors`].
    #[inline]
    pub fn neighbor_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.edge_ids[self.slots(v)]
    }

    /// Degree-oriented endpoints `(a, b)` of edge `e`.
    #[inline]
    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e as usize]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn adjacency(&self) -> &[VertexId] {
        &self.adjacency
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edge_ids
    }

    /// Looks up the undirected edge `{u, v}` by binary search in `u`'s run.
    pub fn edge_index(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        if u as usize >= self.n() || v as usize >= self.n() {
            return None;
        }
        self.slot_of(u, v).map(|s| self.edge_ids[s])
    }

    fn slot_of(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let range = self.slots(u);
        let start = range.start;
        self.adjacency[range].binary_search(&v).ok().map(|i| start + i)
    }

    /// Whether `(a, b)` respects the degree-oriented ordering.
    #[inline]
    pub fn is_oriented(&self, a: VertexId, b: VertexId) -> bool {
        (self.degree(a), a) < (self.degree(b), b)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Format(msg));
        if self.offsets.is_empty() {
            return bad("offset array is empty".into());
        }
        let n = self.n();
        let m = self.m();
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        if self.offsets[0] != 0 || *self.offsets.last().unwrap() != 2 * m as u64 {
            return bad("offsets do not span 2m adjacency slots".into());
        }
        if self.adjacency.len() != 2 * m || self.edge_ids.len() != 2 * m {
            return bad("adjacency or edge-id array length is not 2m".into());
        }
        if self.offsets.windows(2).any(|w| w[0] > w[1]) {
            return bad("offsets are not monotone".into());
        }
        for v in 0..n as VertexId {
            let run = self.neighbors(v);
            if run.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("adjacency of {v} is not strictly increasing"));
            }
            if run.iter().any(|&w| w as usize >= n || w == v) {
                return bad(format!("adjacency of {v} holds an invalid neighbor"));
            }
        }
        let mut seen = vec![0u8; m];
        for v in 0..n as VertexId {
            for (&w, &e) in self.neighbors(v).iter().zip(self.neighbor_edges(v)) {
                let Some(&(a, b)) = self.edges.get(e as usize) else {
                    return bad(format!("edge id {e} out of range"));
                };
                if !((a, b) == (v, w) || (a, b) == (w, v)) {
                    return bad(format!("slot ({v}, {w}) points at edge {e} = ({a}, {b})"));
                }
                seen[e as usize] += 1;
            }
        }
        if seen.iter().any(|&c| c != 2) {
            return bad("edge ids are not a 2-to-1 map onto [0, m)".into());
        }
        if self.edges.windows(2).any(|w| w[0] >= w[1]) {
            return bad("edge array is not grouped by source".into());
        }
        for &(a, b) in &self.edges {
            if !self.is_oriented(a, b) {
                return bad(format!("edge ({a}, {b}) violates degree orientation"));
            }
        }
        Ok(())
    }
}
