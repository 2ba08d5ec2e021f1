//! Golden results on the 14-vertex two-cluster sample graph and on a few
//! hand-built instances.

mod common;

use common::{graph, params, two_clusters};
use structclust::oracle::Clause;
use structclust::partition::{layout_bytes, EdgeExtendedSubgraph};
use structclust::scan::{check_sim, check_sim_counted, init_state, structural_similarity, Scanner};
use structclust::{
    results_equivalent, scan_in_memory, serial_scan, ClusteringResult, Role, ScanOptions,
};

#[test]
fn adjacency_matches_the_drawing() {
    let g = two_clusters();
    assert_eq!((g.n(), g.m()), (14, 22));
    assert_eq!(g.neighbors(0), &[1, 2, 3, 4, 5, 6, 7]);
    assert_eq!(g.neighbors(1), &[0, 2, 4, 7]);
    assert_eq!(g.neighbors(8), &[2, 9]);
}

#[test]
fn similarity_of_the_two_hubs_of_the_left_cluster() {
    let g = two_clusters();
    let s = structural_similarity(&g, 0, 1);
    assert!((s - 5.0 / 40f64.sqrt()).abs() < 1e-12);
    let p = check_sim_counted(&g, 0, 1, &params(3, "0.6").epsilon).unwrap();
    assert!(p.similar);
    assert_eq!(p.common, 3);
    assert_eq!(structural_similarity(&g, 3, 3), 1.0);
}

#[test]
fn golden_clustering() {
    let g = two_clusters();
    for options in [ScanOptions::deterministic(), ScanOptions::parallel(4)] {
        let (r, stats) = scan_in_memory(&g, params(3, "0.6"), options).unwrap();
        assert_eq!(r.cores(), vec![0, 1, 4, 7, 9, 10, 11, 12, 13]);
        assert_eq!(r.cluster_count(), 2);
        assert_eq!(
            r.core_partition(),
            vec![vec![0, 1, 4, 7], vec![9, 10, 11, 12, 13]]
        );
        assert_eq!(r.members(), vec![2]);
        assert_eq!(r.cluster(2), r.cluster(0));
        assert_eq!(r.hubs(), vec![8]);
        assert_eq!(r.outliers(), vec![3, 5, 6]);
        assert!(stats.sim_evals <= g.m() as u64);
        results_equivalent(&r, &serial_scan(&g, params(3, "0.6"))).unwrap();
    }
}

#[test]
fn golden_result_file() {
    let g = two_clusters();
    let (r, _) = scan_in_memory(&g, params(3, "0.6"), ScanOptions::deterministic()).unwrap();
    let mut out = Vec::new();
    r.write_tsv(&mut out, None).unwrap();
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 14);
    assert_eq!(lines[2], "2\tM\t0");
    assert_eq!(lines[3], "3\tO\t-1");
    assert_eq!(lines[8], "8\tH\t-1");
    assert_eq!(lines[13], "13\tC\t9");
}

#[test]
fn oracle_on_the_sample_graph() {
    let g = two_clusters();
    let o = serial_scan(&g, params(3, "0.6"));
    assert_eq!(o.cores(), vec![0, 1, 4, 7, 9, 10, 11, 12, 13]);
    assert_eq!(o.clusters, vec![vec![0, 1, 2, 4, 7], vec![9, 10, 11, 12, 13]]);
    assert_eq!(o.hubs.iter().copied().collect::<Vec<_>>(), vec![8]);
    assert_eq!(o.outliers.iter().copied().collect::<Vec<_>>(), vec![3, 5, 6]);
}

#[test]
fn phases_run_one_at_a_time() {
    let g = two_clusters();
    let scanner = Scanner::new(&g, params(3, "0.6"), ScanOptions::deterministic()).unwrap();
    let st = scanner.init_state();
    assert_eq!(st.vertices.upper(0), 8);
    assert_eq!(st.vertices.lower(0), 1);

    scanner.identify_core(&st).unwrap();
    let roles: Vec<Role> = (0..14).map(|v| st.vertices.role(v)).collect();
    assert!(roles.iter().all(|r| matches!(r, Role::Core | Role::NonCore)));

    scanner.detect_clusters(&st);
    // the left cluster picks up vertex 2 through its similar core neighbor
    assert_eq!(st.vertices.role(2), Role::Member);
    let root = st.vertices.parent(0);
    for v in [1, 2, 4, 7] {
        assert_eq!(st.vertices.parent(v), root);
    }
    assert!(st.vertices.parent(8) < 0);

    scanner.classify_hub_outlier(&st);
    assert_eq!(st.vertices.role(8), Role::Hub);
    // classification is idempotent
    scanner.classify_hub_outlier(&st);
    assert_eq!(st.vertices.role(8), Role::Hub);
    assert_eq!(st.vertices.role(3), Role::Outlier);
}

#[test]
fn closure_pulls_in_the_bridge_edge() {
    let g = two_clusters();
    let mut owned: Vec<u32> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, &(u, v))| u < 8 && v < 8)
        .map(|(e, _)| e as u32)
        .collect();
    owned.push(g.edge_index(8, 9).unwrap());
    owned.sort_unstable();
    let s = EdgeExtendedSubgraph::from_owned(&g, &owned);

    let bridge = g.edge_index(2, 8).unwrap();
    assert!(!owned.contains(&bridge));
    assert!(s.global_edges().contains(&bridge));
    // every owned edge keeps its exact similarity inside the subgraph
    for &e in &owned {
        let (u, v) = g.edge(e);
        let (lu, lv) = (s.local_vertex(u).unwrap(), s.local_vertex(v).unwrap());
        for eps in ["0.3", "0.5", "0.6", "0.8"] {
            let eps = params(2, eps).epsilon;
            assert_eq!(
                check_sim(s.local_graph(), lu, lv, &eps).unwrap(),
                check_sim(&g, u, v, &eps).unwrap()
            );
        }
    }
    assert_eq!(
        structclust::partition::estimate_memory(&s),
        layout_bytes(s.local_graph().m() as u64, s.local_graph().n() as u64)
    );
}

#[test]
fn path_similarities() {
    let g = graph(3, &[(0, 1), (1, 2)]);
    assert!((structural_similarity(&g, 0, 1) - 2.0 / 6f64.sqrt()).abs() < 1e-12);
    assert!(!check_sim(&g, 0, 1, &params(2, "0.9").epsilon).unwrap());
    let (r, _) = scan_in_memory(&g, params(2, "0.9"), ScanOptions::deterministic()).unwrap();
    assert!(r.cores().is_empty());
    assert_eq!(r.outliers(), vec![0, 1, 2]);
}

#[test]
fn triangle_is_one_cluster() {
    let g = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    let (r, _) = scan_in_memory(&g, params(2, "0.5"), ScanOptions::deterministic()).unwrap();
    assert_eq!(r.cores(), vec![0, 1, 2]);
    assert_eq!(r.cluster_count(), 1);
    assert!(r.hubs().is_empty() && r.outliers().is_empty());
}

#[test]
fn large_mu_leaves_only_outliers() {
    let g = two_clusters();
    let mu = g.max_degree() as u32 + 2;
    let (r, stats) = scan_in_memory(&g, params(mu, "0.2"), ScanOptions::deterministic()).unwrap();
    assert!(r.cores().is_empty());
    assert_eq!(r.outliers().len(), 14);
    assert!(stats.sim_evals <= g.m() as u64);
}

#[test]
fn empty_graph() {
    let g = graph(0, &[]);
    let (r, _) = scan_in_memory(&g, params(2, "0.5"), ScanOptions::deterministic()).unwrap();
    assert_eq!(r.n(), 0);
    results_equivalent(&r, &serial_scan(&g, params(2, "0.5"))).unwrap();
}

/// Vertex 5 touches two members of the same cluster and nothing else.
#[test]
fn neighbor_of_one_cluster_is_an_outlier() {
    // K4 on 0..3, 4 hangs off 0 and 1 (similar to both), 5 hangs off 4 and 2
    let g = graph(
        6,
        &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 0), (4, 1), (5, 4), (5, 2)],
    );
    let p = params(4, "0.6");
    let o = serial_scan(&g, p);
    let (r, _) = scan_in_memory(&g, p, ScanOptions::deterministic()).unwrap();
    results_equivalent(&r, &o).unwrap();
    assert_eq!(r.cluster_count(), 1);
    assert_eq!(r.role(5), Role::Outlier, "{}", o.dump());
}

/// Two triangles joined through vertex 6, which is similar to core 0 in one
/// and core 3 in the other but has too few similar neighbors to be a core.
fn overlap_instance() -> structclust::Graph {
    graph(
        7,
        &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (6, 0), (6, 3)],
    )
}

#[test]
fn overlapping_member_may_join_either_cluster() {
    let g = overlap_instance();
    let p = params(4, "0.5");
    let o = serial_scan(&g, p);
    assert_eq!(o.cores(), vec![0, 3]);
    assert_eq!(o.memberships[6].len(), 2, "{}", o.dump());

    let (r, _) = scan_in_memory(&g, p, ScanOptions::deterministic()).unwrap();
    results_equivalent(&r, &o).unwrap();

    let mut roles = r.roles().to_vec();
    let mut clusters = r.clusters().to_vec();
    roles[6] = Role::Member;
    for target in [0, 3] {
        clusters[6] = r.cluster(target);
        let alt = ClusteringResult::from_parts(roles.clone(), clusters.clone());
        results_equivalent(&alt, &o).unwrap();
    }
}

#[test]
fn mislabelled_hub_is_reported() {
    let g = two_clusters();
    let p = params(3, "0.6");
    let (r, _) = scan_in_memory(&g, p, ScanOptions::deterministic()).unwrap();
    let mut roles = r.roles().to_vec();
    roles[8] = Role::Outlier;
    let bad = ClusteringResult::from_parts(roles, r.clusters().to_vec());
    let m = results_equivalent(&bad, &serial_scan(&g, p)).unwrap_err();
    assert_eq!(m.clause, Clause::Unclustered);
    assert_eq!(m.witness, vec![8]);
}

#[test]
fn state_starts_from_degree_bounds() {
    let g = graph(4, &[(0, 1), (1, 2), (0, 2)]);
    let st = init_state(&g);
    assert_eq!((0..3).map(|v| st.vertices.upper(v)).collect::<Vec<_>>(), vec![3, 3, 3]);
    assert_eq!((st.vertices.lower(3), st.vertices.upper(3)), (1, 1));
}
