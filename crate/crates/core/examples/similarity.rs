//! Structural similarity of every edge in the sample graph, and the exact
//! threshold check the engines use.

use structclust::scan::{check_sim_counted, structural_similarity};
use structclust::{build_graph, parse_edge_list, Epsilon};

const SAMPLE: &str = include_str!("../data/two_clusters.txt");

fn main() -> structclust::Result<()> {
    let g = build_graph(&parse_edge_list(SAMPLE.as_bytes())?);
    let eps: Epsilon = "0.6".parse()?;
    println!("edge      sigma   >= {eps}  shared  probes");
    for &(u, v) in g.edges() {
        let probe = check_sim_counted(&g, u, v, &eps)?;
        println!(
            "({u:>2},{v:>2})  {:.4}  {:<7}  {:>6}  {:>6}",
            structural_similarity(&g, u, v),
            probe.similar,
            probe.common,
            probe.probes
        );
    }
    Ok(())
}
