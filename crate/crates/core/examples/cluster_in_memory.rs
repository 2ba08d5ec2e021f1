//! Cluster the bundled two-cluster sample graph and print each vertex's role.
//!
//!     cargo run --example cluster_in_memory -- [epsilon] [mu] [workers]

use structclust::{build_graph, parse_edge_list, scan_in_memory, Params, ScanOptions};

const SAMPLE: &str = include_str!("../data/two_clusters.txt");

fn main() -> structclust::Result<()> {
    let mut args = std::env::args().skip(1);
    let epsilon = args.next().unwrap_or_else(|| "0.6".into());
    let mu = args.next().map_or(3, |s| s.parse().expect("mu is an integer"));
    let workers = args.next().map_or(1, |s| s.parse().expect("workers is an integer"));

    let graph = build_graph(&parse_edge_list(SAMPLE.as_bytes())?);
    let params = Params::parse(mu, &epsilon)?;
    let options = if workers > 1 {
        ScanOptions::parallel(workers)
    } else {
        ScanOptions::deterministic()
    };
    let (result, stats) = scan_in_memory(&graph, params, options)?;

    println!("{} clusters", result.cluster_count());
    for group in result.core_partition() {
        println!("  cores {group:?}");
    }
    println!("members  {:?}", result.members());
    println!("hubs     {:?}", result.hubs());
    println!("outliers {:?}", result.outliers());
    println!("similarity checks: {} of {} edges", stats.sim_evals, stats.m);
    Ok(())
}
