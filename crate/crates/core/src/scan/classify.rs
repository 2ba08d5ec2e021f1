use super::state::{Role, HUB, UNCLUSTERED};
use super::Ctx;
use crate::VertexId;

/// Labels local vertex `v` (whose adjacency must be complete in the view)
/// if it is outside every cluster: hub when its neighbors span two or more
/// clusters, outlier otherwise. Running it twice gives the same labels.
pub(crate) fn classify_vertex(cx: &Ctx<'_>, v: VertexId) {
    let vs = cx.vs;
    let gv = cx.view.gid(v);
    if vs.parent(gv) >= 0 {
        return;
    }
    vs.store_parent(gv, UNCLUSTERED);
    vs.store_role(gv, Role::Outlier);

    let mut seen: Option<i32> = None;
    for &w in cx.view.graph.neighbors(v) {
        let gw = cx.view.gid(w);
        let cluster = vs.parent(gw);
        if cluster < 0 {
            continue;
        }
        // a shared member alone already belongs to two clusters
        let spans_two = vs.is_shared(gw) || seen.is_some_and(|c| c != cluster);
        if spans_two {
            vs.store_parent(gv, HUB);
            vs.store_role(gv, Role::Hub);
            return;
        }
        seen = Some(cluster);
    }
}
