//! Cluster a graph under a memory budget: plan partitions, spill them to a
//! directory, and stream them through the phases.
//!
//!     cargo run --release --example out_of_core -- [budget_bytes]

use structclust::partition::{layout_bytes, STATE_BYTES_PER_VERTEX};
use structclust::{
    partition_graph, results_equivalent, scan_in_memory, scan_out_of_core, EdgeList, Graph,
    GraphMeta, Params, ScanOptions, SpillSet,
};

/// Cliques of six in a ring. Consecutive cliques are joined through a
/// bridge vertex (a hub at these thresholds), and every third clique has a
/// pendant vertex (an outlier).
fn ring_of_cliques(count: u32) -> structclust::Result<Graph> {
    let mut pairs = Vec::new();
    let mut next = count * 6;
    for c in 0..count {
        let base = c * 6;
        for i in 0..6 {
            for j in i + 1..6 {
                pairs.push((base + i, base + j));
            }
        }
        let bridge = next;
        next += 1;
        pairs.push((base + 5, bridge));
        pairs.push((bridge, ((c + 1) % count) * 6));
        if c % 3 == 0 {
            pairs.push((base + 2, next));
            next += 1;
        }
    }
    Ok(Graph::from_edge_list(&EdgeList::from_pairs(next as usize, pairs)?))
}

fn main() -> structclust::Result<()> {
    let g = ring_of_cliques(500)?;
    let state = STATE_BYTES_PER_VERTEX * g.n() as u64;
    let budget = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("budget in bytes"))
        .unwrap_or(state + layout_bytes(g.m() as u64, g.n() as u64) / 5);
    println!("n={} m={} budget={budget} bytes", g.n(), g.m());

    let plan = partition_graph(&g, budget)?;
    let dir = tempfile::tempdir().map_err(|e| structclust::Error::Internal(e.to_string()))?;
    let spill = SpillSet::write(&plan, dir.path())?;
    println!("{} partitions, manifest at {}", spill.len(), spill.manifest_path().display());
    for (i, est) in spill.estimates().iter().enumerate().take(5) {
        println!("  partition {i}: {est} bytes + {state} resident");
    }

    let params = Params::parse(4, "0.55")?;
    let options = ScanOptions::parallel(4);
    let (result, stats) = scan_out_of_core(&GraphMeta::of(&g), &spill, params, options)?;
    println!(
        "{} clusters, {} hubs, {} outliers",
        result.cluster_count(),
        result.hubs().len(),
        result.outliers().len()
    );
    print!("{stats}");

    let (in_memory, _) = scan_in_memory(&g, params, options)?;
    assert_eq!(in_memory.core_partition(), result.core_partition());
    assert_eq!(in_memory.hubs(), result.hubs());
    results_equivalent(&result, &structclust::serial_scan(&g, params)).expect("matches reference");
    println!("matches the in-memory engine and the reference");
    Ok(())
}
