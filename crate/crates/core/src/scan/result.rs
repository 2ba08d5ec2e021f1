use std::collections::BTreeMap;
use std::io::{self, Write};

use super::state::{Role, VertexState};
use crate::VertexId;

/// Final role of every vertex and the cluster (root vertex id) of every
/// clustered vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusteringResult {
    roles: Vec<Role>,
    clusters: Vec<Option<VertexId>>,
}

impl ClusteringResult {
    pub(crate) fn from_state(vs: &VertexState) -> Self {
        let n = vs.n() as VertexId;
        let roles: Vec<Role> = (0..n).map(|v| vs.role(v)).collect();
        let clusters = (0..n)
            .map(|v| {
                let p = vs.parent(v);
                (p >= 0).then_some(p as VertexId)
            })
            .collect();
        debug_assert!(roles
            .iter()
            .all(|r| matches!(r, Role::Core | Role::Member | Role::Hub | Role::Outlier)));
        ClusteringResult { roles, clusters }
    }

    /// Assembles a result from parts, e.g. to feed a hand-made labeling to
    /// the equivalence checker.
    pub fn from_parts(roles: Vec<Role>, clusters: Vec<Option<VertexId>>) -> Self {
        assert_eq!(roles.len(), clusters.len());
        ClusteringResult { roles, clusters }
    }

    pub fn n(&self) -> usize {
        self.roles.len()
    }

    pub fn role(&self, v: VertexId) -> Role {
        self.roles[v as usize]
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn cluster(&self, v: VertexId) -> Option<VertexId> {
        self.clusters[v as usize]
    }

    pub fn clusters(&self) -> &[Option<VertexId>] {
        &self.clusters
    }

    fn with_role(&self, role: Role) -> Vec<VertexId> {
        (0..self.n() as VertexId).filter(|&v| self.role(v) == role).collect()
    }

    pub fn cores(&self) -> Vec<VertexId> {
        self.with_role(Role::Core)
    }

    pub fn members(&self) -> Vec<VertexId> {
        self.with_role(Role::Member)
    }

    pub fn hubs(&self) -> Vec<VertexId> {
        self.with_role(Role::Hub)
    }

    pub fn outliers(&self) -> Vec<VertexId> {
        self.with_role(Role::Outlier)
    }

    pub fn cluster_count(&self) -> usize {
        self.core_partition().len()
    }

    /// Core vertices grouped by cluster. Groups are sorted and ordered by
    /// their smallest vertex, so the value does not depend on which vertex
    /// ended up as root.
    pub fn core_partition(&self) -> Vec<Vec<VertexId>> {
        let mut groups: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for v in self.cores() {
            if let Some(c) = self.cluster(v) {
                groups.entry(c).or_default().push(v);
            }
        }
        let mut out: Vec<Vec<VertexId>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Writes `id<TAB>role<TAB>cluster` per vertex, cluster `-1` for hubs and
    /// outliers. `ids` maps dense ids back to external ones.
    pub fn write_tsv<W: Write>(&self, w: &mut W, ids: Option<&[u64]>) -> io::Result<()> {
        let ext = |v: VertexId| ids.map_or(v as u64, |ids| ids[v as usize]);
        for v in 0..self.n() as VertexId {
            match self.cluster(v) {
                Some(c) => writeln!(w, "{}\t{}\t{}", ext(v), self.role(v).code(), ext(c))?,
                None => writeln!(w, "{}\t{}\t-1", ext(v), self.role(v).code())?,
            }
        }
        Ok(())
    }
}
