//! Streaming edge partitioner.
//!
//! Edges are taken in degree-oriented order. Each edge brings its closure
//! (all edges at either endpoint, and their endpoints); the edge joins the
//! current partition unless the grown partition plus resident vertex state
//! would exceed the budget, in which case the partition is sealed first.

use super::subgraph::{layout_bytes, estimate_memory, EdgeExtendedSubgraph, STATE_BYTES_PER_VERTEX};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::{EdgeId, VertexId};

#[derive(Debug, Clone)]
pub struct PartitionPlan {
    pub partitions: Vec<EdgeExtendedSubgraph>,
    pub budget_bytes: u64,
    pub n: usize,
}

impl PartitionPlan {
    pub fn global_state_bytes(&self) -> u64 {
        STATE_BYTES_PER_VERTEX * self.n as u64
    }

    pub fn estimates(&self) -> Vec<u64> {
        self.partitions.iter().map(estimate_memory).collect()
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    /// Every partition fits next to the resident state.
    pub fn within_budget(&self) -> bool {
        self.estimates()
            .iter()
            .all(|&b| b + self.global_state_bytes() <= self.budget_bytes)
    }
}

struct Open {
    stamp: u32,
    owned: Vec<EdgeId>,
    closure: Vec<EdgeId>,
    vertices: usize,
}

impl Open {
    fn bytes(&self) -> u64 {
        layout_bytes(self.closure.len() as u64, self.vertices as u64)
    }
}

pub fn partition_graph(g: &Graph, budget_bytes: u64) -> Result<PartitionPlan> {
    let state = STATE_BYTES_PER_VERTEX * g.n() as u64;
    // which open partition (by stamp) already holds a vertex/edge
    let mut vertex_in = vec![0u32; g.n()];
    let mut edge_in = vec![0u32; g.m()];
    // per-increment dedup
    let mut vertex_seen = vec![0u64; g.n()];
    let mut edge_seen = vec![0u64; g.m()];
    let mut tick = 0u64;

    let mut sealed: Vec<(Vec<EdgeId>, Vec<EdgeId>)> = Vec::new();
    let mut open = Open {
        stamp: 1,
        owned: Vec::new(),
        closure: Vec::new(),
        vertices: 0,
    };

    for e in 0..g.m() as EdgeId {
        let (u, v) = g.edge(e);
        let mut increment = |open: &Open, vertex_in: &[u32], edge_in: &[u32]| {
            tick += 1;
            let (mut new_v, mut new_e) = (0u64, 0u64);
            for x in [u, v] {
                if vertex_in[x as usize] != open.stamp && vertex_seen[x as usize] != tick {
                    vertex_seen[x as usize] = tick;
                    new_v += 1;
                }
                for (&w, &f) in g.neighbors(x).iter().zip(g.neighbor_edges(x)) {
                    if vertex_in[w as usize] != open.stamp && vertex_seen[w as usize] != tick {
                        vertex_seen[w as usize] = tick;
                        new_v += 1;
                    }
                    if edge_in[f as usize] != open.stamp && edge_seen[f as usize] != tick {
                        edge_seen[f as usize] = tick;
                        new_e += 1;
                    }
                }
            }
            layout_bytes(new_e, new_v)
        };

        let mut inc = increment(&open, &vertex_in, &edge_in);
        if open.bytes() + inc + state > budget_bytes {
            if !open.owned.is_empty() {
                let next = open.stamp + 1;
                let done = std::mem::replace(
                    &mut open,
                    Open {
                        stamp: next,
                        owned: Vec::new(),
                        closure: Vec::new(),
                        vertices: 0,
                    },
                );
                sealed.push((done.owned, done.closure));
                inc = increment(&open, &vertex_in, &edge_in);
            }
            if inc + state > budget_bytes {
                return Err(Error::InfeasibleBudget {
                    u,
                    v,
                    required: inc + state,
                    budget: budget_bytes,
                });
            }
        }

        open.owned.push(e);
        for x in [u, v] {
            mark_vertex(&mut open, &mut vertex_in, x);
            for (&w, &f) in g.neighbors(x).iter().zip(g.neighbor_edges(x)) {
                mark_vertex(&mut open, &mut vertex_in, w);
                if edge_in[f as usize] != open.stamp {
                    edge_in[f as usize] = open.stamp;
                    open.closure.push(f);
                }
            }
        }
    }
    if !open.owned.is_empty() {
        sealed.push((open.owned, open.closure));
    }

    let partitions = sealed
        .into_iter()
        .map(|(owned, mut closure)| {
            closure.sort_unstable();
            EdgeExtendedSubgraph::from_closure(g, owned, closure)
        })
        .collect();
    Ok(PartitionPlan {
        partitions,
        budget_bytes,
        n: g.n(),
    })
}

fn mark_vertex(open: &mut Open, vertex_in: &mut [u32], x: VertexId) {
    if vertex_in[x as usize] != open.stamp {
        vertex_in[x as usize] = open.stamp;
        open.vertices += 1;
    }
}
