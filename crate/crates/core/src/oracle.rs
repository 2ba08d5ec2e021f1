//! Brute-force serial clustering straight from the definitions, and the
//! equivalence check used to compare engine output against it.
//!
//! Nothing here shares code with the engine beyond reading the graph's
//! adjacency: intersections use a sorted merge, thresholds are compared in
//! exact integer arithmetic, and clusters come from a breadth-first search.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::graph::Graph;
use crate::params::Params;
use crate::scan::{ClusteringResult, Role};
use crate::VertexId;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeSimilarity {
    pub similar: bool,
    pub value: f64,
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    /// Keyed by `(min, max)` endpoint.
    pub similarity: HashMap<(VertexId, VertexId), EdgeSimilarity>,
    pub is_core: Vec<bool>,
    /// Each cluster: its cores plus every non-core similar to one of them.
    /// Sorted; clusters are disjoint on cores but may share non-cores.
    pub clusters: Vec<Vec<VertexId>>,
    /// Cluster index of each core.
    pub core_cluster: Vec<Option<usize>>,
    /// Clusters each vertex belongs to.
    pub memberships: Vec<Vec<usize>>,
    pub hubs: BTreeSet<VertexId>,
    pub outliers: BTreeSet<VertexId>,
}

impl OracleResult {
    pub fn cores(&self) -> Vec<VertexId> {
        (0..self.is_core.len() as VertexId)
            .filter(|&v| self.is_core[v as usize])
            .collect()
    }

    pub fn similar(&self, u: VertexId, v: VertexId) -> Option<bool> {
        self.similarity.get(&(u.min(v), u.max(v))).map(|s| s.similar)
    }

    /// One cluster per line, members as sorted ids.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for c in &self.clusters {
            let line: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

fn closed_intersection(g: &Graph, u: VertexId, v: VertexId) -> u64 {
    let mut nu: Vec<VertexId> = g.neighbors(u).to_vec();
    nu.push(u);
    nu.sort_unstable();
    let mut nv: Vec<VertexId> = g.neighbors(v).to_vec();
    nv.push(v);
    nv.sort_unstable();
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < nu.len() && j < nv.len() {
        if nu[i] < nv[j] {
            i += 1;
        } else if nu[i] > nv[j] {
            j += 1;
        } else {
            count += 1;
            i += 1;
            j += 1;
        }
    }
    count
}

/// Serial clustering per the definitions.
pub fn serial_scan(g: &Graph, params: Params) -> OracleResult {
    let n = g.n();
    let (num, den) = params.epsilon.fraction();
    let (num2, den2) = ((num as u128).pow(2), (den as u128).pow(2));

    let mut similarity = HashMap::new();
    let mut eps_neighbors: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for u in 0..n as VertexId {
        for &v in g.neighbors(u) {
            if v < u {
                continue;
            }
            let shared = closed_intersection(g, u, v);
            let (su, sv) = (g.degree(u) as u128 + 1, g.degree(v) as u128 + 1);
            let similar = (shared as u128).pow(2) * den2 >= num2 * su * sv;
            let value = shared as f64 / ((su * sv) as f64).sqrt();
            similarity.insert((u, v), EdgeSimilarity { similar, value });
            if similar {
                eps_neighbors[u as usize].push(v);
                eps_neighbors[v as usize].push(u);
            }
        }
    }

    // |N_eps[v]| counts v itself
    let is_core: Vec<bool> = (0..n)
        .map(|v| eps_neighbors[v].len() + 1 >= params.mu as usize)
        .collect();

    let mut core_cluster: Vec<Option<usize>> = vec![None; n];
    let mut clusters: Vec<Vec<VertexId>> = Vec::new();
    let mut memberships: Vec<Vec<usize>> = vec![Vec::new(); n];
    for start in 0..n {
        if !is_core[start] || core_cluster[start].is_some() {
            continue;
        }
        let id = clusters.len();
        let mut members = BTreeSet::new();
        let mut queue = VecDeque::from([start as VertexId]);
        core_cluster[start] = Some(id);
        while let Some(u) = queue.pop_front() {
            members.insert(u);
            for &v in &eps_neighbors[u as usize] {
                if is_core[v as usize] {
                    if core_cluster[v as usize].is_none() {
                        core_cluster[v as usize] = Some(id);
                        queue.push_back(v);
                    }
                } else {
                    members.insert(v);
                }
            }
        }
        for &v in &members {
            memberships[v as usize].push(id);
        }
        clusters.push(members.into_iter().collect());
    }

    let mut hubs = BTreeSet::new();
    let mut outliers = BTreeSet::new();
    for u in 0..n as VertexId {
        if !memberships[u as usize].is_empty() {
            continue;
        }
        let seen: BTreeSet<usize> = g
            .neighbors(u)
            .iter()
            .flat_map(|&w| memberships[w as usize].iter().copied())
            .collect();
        if seen.len() >= 2 {
            hubs.insert(u);
        } else {
            outliers.insert(u);
        }
    }

    OracleResult {
        similarity,
        is_core,
        clusters,
        core_cluster,
        memberships,
        hubs,
        outliers,
    }
}

/// Which part of the equivalence contract failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    /// (a) core sets differ
    CoreSet,
    /// (b) same-cluster relation over cores differs
    CoreClusters,
    /// (c) a member is attached to a cluster it does not qualify for
    Membership,
    /// (d) unclustered vertices or their hub/outlier labels differ
    Unclustered,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::CoreSet => "(a) core set",
            Clause::CoreClusters => "(b) core clusters",
            Clause::Membership => "(c) membership",
            Clause::Unclustered => "(d) hubs/outliers",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub clause: Clause,
    pub witness: Vec<VertexId>,
    pub detail: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "clause {} violated at {:?}: {}", self.clause, self.witness, self.detail)
    }
}

impl std::error::Error for Mismatch {}

/// Checks an engine result against the oracle. A non-core vertex that
/// qualifies for several clusters may be reported in any one of them.
pub fn results_equivalent(r: &ClusteringResult, o: &OracleResult) -> Result<(), Mismatch> {
    let fail = |clause, witness: Vec<VertexId>, detail: String| {
        Err(Mismatch {
            clause,
            witness,
            detail,
        })
    };
    let n = o.is_core.len();
    if r.n() != n {
        return fail(
            Clause::CoreSet,
            vec![],
            format!("result has {} vertices, oracle {}", r.n(), n),
        );
    }

    for v in 0..n as VertexId {
        let engine_core = r.role(v) == Role::Core;
        if engine_core != o.is_core[v as usize] {
            return fail(
                Clause::CoreSet,
                vec![v],
                format!("engine core={engine_core}, oracle core={}", o.is_core[v as usize]),
            );
        }
    }

    // engine cluster id -> oracle cluster index, and back
    let mut forward: HashMap<VertexId, usize> = HashMap::new();
    let mut backward: HashMap<usize, VertexId> = HashMap::new();
    let mut witness_of: HashMap<usize, VertexId> = HashMap::new();
    for v in 0..n as VertexId {
        if !o.is_core[v as usize] {
            continue;
        }
        let Some(cid) = r.cluster(v) else {
            return fail(Clause::CoreClusters, vec![v], "core without a cluster".into());
        };
        let oid = o.core_cluster[v as usize].expect("oracle core without cluster");
        if let Some(&prev) = forward.get(&cid) {
            if prev != oid {
                return fail(
                    Clause::CoreClusters,
                    vec![witness_of[&prev], v],
                    "cores in one engine cluster belong to different clusters".into(),
                );
            }
        }
        if let Some(&prev) = backward.get(&oid) {
            if prev != cid {
                return fail(
                    Clause::CoreClusters,
                    vec![witness_of[&oid], v],
                    "cores of one cluster are split across engine clusters".into(),
                );
            }
        }
        forward.insert(cid, oid);
        backward.insert(oid, cid);
        witness_of.entry(oid).or_insert(v);
    }

    for v in 0..n as VertexId {
        if r.role(v) != Role::Member {
            continue;
        }
        let target = r.cluster(v).and_then(|c| forward.get(&c).copied());
        match target {
            Some(oid) if o.memberships[v as usize].contains(&oid) => {}
            _ => {
                return fail(
                    Clause::Membership,
                    vec![v],
                    format!(
                        "attached to engine cluster {:?}; allowed oracle clusters {:?}",
                        r.cluster(v),
                        o.memberships[v as usize]
                    ),
                )
            }
        }
    }

    for v in 0..n as VertexId {
        let oracle_label = if o.hubs.contains(&v) {
            Some(Role::Hub)
        } else if o.outliers.contains(&v) {
            Some(Role::Outlier)
        } else {
            None
        };
        let engine_label = match r.role(v) {
            Role::Hub | Role::Outlier => Some(r.role(v)),
            _ => None,
        };
        if oracle_label != engine_label {
            return fail(
                Clause::Unclustered,
                vec![v],
                format!("engine {engine_label:?}, oracle {oracle_label:?}"),
            );
        }
    }
    Ok(())
}
