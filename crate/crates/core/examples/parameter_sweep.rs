//! How the clustering of the sample graph changes across thresholds, and how
//! much similarity work the bound pruning saves.

use structclust::{build_graph, parse_edge_list, scan_in_memory, Params, ScanOptions};

const SAMPLE: &str = include_str!("../data/two_clusters.txt");

fn main() -> structclust::Result<()> {
    let g = build_graph(&parse_edge_list(SAMPLE.as_bytes())?);
    println!("eps  mu  cores  clusters  hubs  outliers  sim_evals/m");
    for eps in ["0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8"] {
        for mu in [2, 3, 4, 6] {
            let (r, stats) = scan_in_memory(&g, Params::parse(mu, eps)?, ScanOptions::deterministic())?;
            println!(
                "{eps}  {mu:>2}  {:>5}  {:>8}  {:>4}  {:>8}  {:>3}/{}",
                r.cores().len(),
                r.cluster_count(),
                r.hubs().len(),
                r.outliers().len(),
                stats.sim_evals,
                stats.m
            );
        }
    }
    Ok(())
}
