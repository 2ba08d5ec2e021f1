//! Structural similarity between adjacent vertices.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::Epsilon;
use crate::VertexId;

/// Outcome of one instrumented similarity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimProbe {
    pub similar: bool,
    /// Neighbors shared by both endpoints, endpoints excluded.
    pub common: u32,
    /// Comparisons against adjacency entries made by the binary searches.
    pub probes: u64,
}

/// `|N[u] ∩ N[v]| / sqrt(|N[u]| |N[v]|)` with `N[x] = nbr(x) ∪ {x}`.
///
/// Works for any pair, adjacent or not.
pub fn structural_similarity(g: &Graph, u: VertexId, v: VertexId) -> f64 {
    let closed = |x: VertexId| {
        let mut c = g.neighbors(x).to_vec();
        let pos = c.partition_point(|&w| w < x);
        c.insert(pos, x);
        c
    };
    let (nu, nv) = (closed(u), closed(v));
    let (mut i, mut j, mut shared) = (0, 0, 0u64);
    while i < nu.len() && j < nv.len() {
        match nu[i].cmp(&nv[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                shared += 1;
                i += 1;
                j += 1;
            }
        }
    }
    shared as f64 / ((nu.len() * nv.len()) as f64).sqrt()
}

/// Decides whether the edge `{u, v}` is epsilon-similar.
pub fn check_sim(g: &Graph, u: VertexId, v: VertexId, epsilon: &Epsilon) -> Result<bool> {
    check_sim_counted(g, u, v, epsilon).map(|p| p.similar)
}

/// [`check_sim`] with the probe count exposed.
pub fn check_sim_counted(
    g: &Graph,
    u: VertexId,
    v: VertexId,
    epsilon: &Epsilon,
) -> Result<SimProbe> {
    if g.edge_index(u, v).is_none() {
        return Err(Error::Contract(format!("check_sim on non-edge ({u}, {v})")));
    }
    Ok(probe(g, u, v, epsilon))
}

/// Probes each neighbor of the lower-degree endpoint against the other
/// endpoint's sorted run. Caller guarantees `{u, v}` is an edge, so both
/// endpoints are in the intersection of the closed neighborhoods.
#[inline]
pub(crate) fn probe(g: &Graph, u: VertexId, v: VertexId, epsilon: &Epsilon) -> SimProbe {
    let (a, b) = if g.degree(u) <= g.degree(v) { (u, v) } else { (v, u) };
    let target = g.neighbors(b);
    let mut common = 0u32;
    let mut probes = 0u64;
    for &w in g.neighbors(a) {
        let (mut low, mut high) = (0usize, target.len());
        while low < high {
            let mid = (low + high) / 2;
            probes += 1;
            match w.cmp(&target[mid]) {
                Ordering::Less => high = mid,
                Ordering::Greater => low = mid + 1,
                Ordering::Equal => {
                    common += 1;
                    break;
                }
            }
        }
    }
    let similar = epsilon.admits(
        common as u64 + 2,
        g.degree(u) as u64 + 1,
        g.degree(v) as u64 + 1,
    );
    SimProbe {
        similar,
        common,
        probes,
    }
}

/// Upper bound on [`SimProbe::probes`] for an edge with endpoint degrees
/// `d_small <= d_large`: `d_small * ceil(log2(d_large) + 1)`.
pub fn probe_bound(d_small: usize, d_large: usize) -> u64 {
    if d_large == 0 {
        return 0;
    }
    let depth = (d_large as f64).log2() + 1.0;
    d_small as u64 * depth.ceil() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, EdgeList};

    fn path3() -> Graph {
        build_graph(&EdgeList::from_pairs(3, [(0, 1), (1, 2)]).unwrap())
    }

    #[test]
    fn self_similarity_is_one() {
        let g = path3();
        for v in 0..3 {
            assert!((structural_similarity(&g, v, v) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn path_similarity() {
        let g = path3();
        let s = structural_similarity(&g, 0, 1);
        assert!((s - 2.0 / 6f64.sqrt()).abs() < 1e-12);
        assert!((s - structural_similarity(&g, 1, 0)).abs() < 1e-15);
        assert!(!check_sim(&g, 0, 1, &Epsilon::parse("0.9").unwrap()).unwrap());
        assert!(check_sim(&g, 0, 1, &Epsilon::parse("0.8").unwrap()).unwrap());
    }

    #[test]
    fn isolated_edge_is_always_similar() {
        let g = build_graph(&EdgeList::from_pairs(2, [(0, 1)]).unwrap());
        assert!(check_sim(&g, 0, 1, &Epsilon::parse("1").unwrap()).unwrap());
        assert!((structural_similarity(&g, 0, 1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_edge_is_a_contract_error() {
        let g = path3();
        let eps = Epsilon::parse("0.5").unwrap();
        assert!(matches!(check_sim(&g, 0, 2, &eps), Err(Error::Contract(_))));
        assert!(matches!(check_sim(&g, 1, 1, &eps), Err(Error::Contract(_))));
    }

    #[test]
    fn probe_bound_values() {
        assert_eq!(probe_bound(1, 1), 1);
        assert_eq!(probe_bound(2, 4), 6);
        assert_eq!(probe_bound(3, 5), 12);
    }
}
