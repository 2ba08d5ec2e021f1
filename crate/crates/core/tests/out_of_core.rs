//! Partitioning, spill files and the out-of-core engine.

mod common;

use common::{graph, params, two_clusters};
use structclust::partition::{
    estimate_memory, layout_bytes, run_out_of_core, GraphMeta, SpillSet, STATE_BYTES_PER_VERTEX,
};
use structclust::scan::check_sim;
use structclust::{
    partition_graph, results_equivalent, scan_in_memory, scan_out_of_core, serial_scan, Error,
    Graph, PartitionPlan, ScanOptions, VertexId,
};

fn path(n: usize) -> Graph {
    let pairs: Vec<_> = (1..n as VertexId).map(|v| (v - 1, v)).collect();
    graph(n, &pairs)
}

fn state(g: &Graph) -> u64 {
    STATE_BYTES_PER_VERTEX * g.n() as u64
}

/// Owned sets are disjoint and cover E, every partition fits, and every
/// owned edge is evaluated identically inside its partition.
fn assert_plan_sound(g: &Graph, plan: &PartitionPlan) {
    let mut owner = vec![usize::MAX; g.m()];
    for (i, s) in plan.partitions.iter().enumerate() {
        assert!(estimate_memory(s) + state(g) <= plan.budget_bytes);
        for &e in s.owned_edges() {
            assert_eq!(owner[e as usize], usize::MAX, "edge {e} owned twice");
            owner[e as usize] = i;
            let (u, v) = g.edge(e);
            assert_eq!(
                s.local_graph().degree(s.local_vertex(u).unwrap()),
                g.degree(u)
            );
            assert_eq!(
                s.local_graph().degree(s.local_vertex(v).unwrap()),
                g.degree(v)
            );
        }
    }
    assert!(owner.iter().all(|&o| o != usize::MAX), "edge left unowned");
}

#[test]
fn layout_formula() {
    assert_eq!(layout_bytes(0, 0), 0);
    assert_eq!(layout_bytes(3, 3), 87);
    assert_eq!(layout_bytes(1, 2), 33);
}

#[test]
fn generous_budget_keeps_one_partition() {
    let g = two_clusters();
    let budget = layout_bytes(g.m() as u64, g.n() as u64) + state(&g);
    let plan = partition_graph(&g, budget).unwrap();
    assert_eq!(plan.len(), 1);
    assert_eq!(plan.partitions[0].local_graph(), &g);
    assert_plan_sound(&g, &plan);
}

#[test]
fn path_splits_under_a_tight_budget() {
    let g = path(64);
    let budget = state(&g) + layout_bytes(12, 12);
    let plan = partition_graph(&g, budget).unwrap();
    assert!(plan.len() >= 2, "got {} partitions", plan.len());
    assert!(plan.within_budget());
    assert_plan_sound(&g, &plan);
}

#[test]
fn budget_below_a_single_closure_is_rejected() {
    let g = two_clusters();
    let err = partition_graph(&g, state(&g) + 10).unwrap_err();
    match err {
        Error::InfeasibleBudget {
            required, budget, ..
        } => {
            assert!(required > budget);
            assert_eq!(budget, state(&g) + 10);
        }
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn spill_files_round_trip() {
    let g = two_clusters();
    let plan = partition_graph(&g, state(&g) + 400).unwrap();
    assert!(plan.len() >= 2);
    let dir = tempfile::tempdir().unwrap();
    let spill = SpillSet::write(&plan, dir.path()).unwrap();
    assert!(spill.manifest_path().exists());
    for (i, s) in plan.partitions.iter().enumerate() {
        let back = spill.load(i).unwrap();
        assert_eq!(back.owned_edges(), s.owned_edges());
        assert_eq!(back.global_vertices(), s.global_vertices());
        assert_eq!(back.global_edges(), s.global_edges());
        assert_eq!(back.local_graph(), s.local_graph());

        let sim: Vec<u8> = (0..s.global_edges().len()).map(|e| (e % 3) as u8).collect();
        spill.store_sim(i, &sim).unwrap();
        assert_eq!(spill.load(i).unwrap().sim_bytes(), sim.as_slice());
    }
    let reopened = SpillSet::open(dir.path()).unwrap();
    assert_eq!(reopened.len(), spill.len());
    assert_eq!(reopened.estimates(), spill.estimates());
    assert_eq!(reopened.budget_bytes(), spill.budget_bytes());
}

#[test]
fn single_partition_matches_in_memory_exactly() {
    let g = two_clusters();
    let p = params(3, "0.6");
    let dir = tempfile::tempdir().unwrap();
    let run = run_out_of_core(&g, 1 << 20, p, ScanOptions::deterministic(), dir.path()).unwrap();
    let (mem, mem_stats) = scan_in_memory(&g, p, ScanOptions::deterministic()).unwrap();
    assert_eq!(run.estimates.len(), 1);
    assert_eq!(run.result, mem);
    assert_eq!(run.stats.sim_evals, mem_stats.sim_evals);
}

#[test]
fn two_partitions_reproduce_the_sample_clustering() {
    let g = two_clusters();
    let p = params(3, "0.6");
    let dir = tempfile::tempdir().unwrap();
    let run = run_out_of_core(&g, state(&g) + 400, p, ScanOptions::parallel(3), dir.path()).unwrap();
    assert!(run.estimates.len() >= 2);
    assert_eq!(run.stats.partitions, Some(run.estimates.len()));
    let r = &run.result;
    assert_eq!(r.cores(), vec![0, 1, 4, 7, 9, 10, 11, 12, 13]);
    assert_eq!(r.hubs(), vec![8]);
    assert_eq!(r.outliers(), vec![3, 5, 6]);
    results_equivalent(r, &serial_scan(&g, p)).unwrap();
}

#[test]
fn random_graphs_agree_across_engines() {
    for seed in 0..12 {
        let mut rng = common::rng(seed);
        let g = common::planted_graph(&mut rng, 300, 8, 0.7, 200);
        let p = params(3 + (seed as u32 % 3), ["0.4", "0.5", "0.6"][seed as usize % 3]);
        let budget = state(&g) + layout_bytes(g.m() as u64, g.n() as u64) / 4;
        let plan = partition_graph(&g, budget).unwrap();
        assert!(plan.len() >= 3);
        assert_plan_sound(&g, &plan);

        let dir = tempfile::tempdir().unwrap();
        let spill = SpillSet::write(&plan, dir.path()).unwrap();
        let options = if seed % 2 == 0 {
            ScanOptions::deterministic()
        } else {
            ScanOptions::parallel(4)
        };
        let (r, stats) = scan_out_of_core(&GraphMeta::of(&g), &spill, p, options).unwrap();
        let o = serial_scan(&g, p);
        results_equivalent(&r, &o).unwrap();
        assert!(stats.sim_evals <= g.m() as u64);
        let (mem, _) = scan_in_memory(&g, p, options).unwrap();
        assert_eq!(mem.cores(), r.cores());
        assert_eq!(mem.hubs(), r.hubs());
        assert_eq!(mem.core_partition(), r.core_partition());

        // owned-edge similarity is exact inside each partition
        for s in &plan.partitions {
            for &e in s.owned_edges() {
                let (u, v) = g.edge(e);
                let local = check_sim(
                    s.local_graph(),
                    s.local_vertex(u).unwrap(),
                    s.local_vertex(v).unwrap(),
                    &p.epsilon,
                )
                .unwrap();
                assert_eq!(Some(local), o.similar(u, v));
            }
        }
    }
}

#[test]
fn mismatched_metadata_is_rejected() {
    let g = two_clusters();
    let plan = partition_graph(&g, 1 << 20).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let spill = SpillSet::write(&plan, dir.path()).unwrap();
    let meta = GraphMeta::of(&path(5));
    let err = scan_out_of_core(&meta, &spill, params(3, "0.6"), ScanOptions::deterministic());
    assert!(matches!(err, Err(Error::Contract(_))));
}

#[test]
fn metadata_from_an_edge_stream() {
    let g = two_clusters();
    let meta = GraphMeta::from_edges(g.n(), g.edges().iter().copied());
    assert_eq!(meta, GraphMeta::of(&g));
}
