#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use structclust::{EdgeList, Graph, Params, VertexId};

pub const TWO_CLUSTERS: &str = include_str!("../../data/two_clusters.txt");

pub fn two_clusters() -> Graph {
    Graph::from_edge_list(&structclust::parse_edge_list(TWO_CLUSTERS.as_bytes()).unwrap())
}

pub fn params(mu: u32, eps: &str) -> Params {
    Params::parse(mu, eps).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn graph(n: usize, edges: &[(VertexId, VertexId)]) -> Graph {
    Graph::from_edge_list(&EdgeList::from_pairs(n, edges.iter().copied()).unwrap())
}

/// Erdős–Rényi style graph with edge probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            if rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    graph(n, &pairs)
}

/// Dense groups joined by sparse noise, so that clusters, members, hubs and
/// outliers all show up at mid-range thresholds. Runs in O(n·group) time.
pub fn planted_graph(rng: &mut impl Rng, n: usize, group: usize, p_in: f64, noise: usize) -> Graph {
    let mut order: Vec<VertexId> = (0..n as VertexId).collect();
    order.shuffle(rng);
    let mut pairs = Vec::new();
    for chunk in order.chunks(group) {
        for i in 0..chunk.len() {
            for j in i + 1..chunk.len() {
                if rng.gen_bool(p_in) {
                    pairs.push((chunk[i], chunk[j]));
                }
            }
        }
    }
    for _ in 0..noise {
        let u = rng.gen_range(0..n as VertexId);
        let v = rng.gen_range(0..n as VertexId);
        pairs.push((u, v));
    }
    graph(n, &pairs)
}

/// The sweep instance family: n in [20, 200] with density varying by index.
pub fn sweep_instance(i: usize) -> Graph {
    let mut r = rng(0x5eed_0000 + i as u64);
    let n = r.gen_range(20..=200);
    if i.is_multiple_of(2) {
        let avg_deg = [2.0, 4.0, 8.0, 16.0][(i / 2) % 4];
        random_graph(&mut r, n, (avg_deg / n as f64).min(1.0))
    } else {
        let group = r.gen_range(4..=16);
        let noise = r.gen_range(0..=n);
        let p_in = r.gen_range(0.4..0.95);
        planted_graph(&mut r, n, group, p_in, noise)
    }
}

pub const EPSILONS: [&str; 7] = ["0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8"];
pub const MUS: [u32; 4] = [2, 3, 6, 10];

/// Applies a vertex permutation to a graph.
pub fn relabel(g: &Graph, perm: &[VertexId]) -> Graph {
    let pairs: Vec<_> = g
        .edges()
        .iter()
        .map(|&(u, v)| (perm[u as usize], perm[v as usize]))
        .collect();
    graph(g.n(), &pairs)
}
