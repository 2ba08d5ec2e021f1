//! Save a parsed graph in the binary CSR cache format and load it back.

use structclust::graph::{read_graph_cache, write_graph_cache, CACHE_MAGIC};
use structclust::{build_graph, parse_edge_list};

const SAMPLE: &str = include_str!("../data/two_clusters.txt");

fn main() -> structclust::Result<()> {
    let edges = parse_edge_list(SAMPLE.as_bytes())?;
    let g = build_graph(&edges);

    let dir = tempfile::tempdir().map_err(|e| structclust::Error::Internal(e.to_string()))?;
    let path = dir.path().join("sample.csr");
    write_graph_cache(&path, &g)?;
    let size = std::fs::metadata(&path).map(|m| m.len()).unwrap_or(0);
    println!("wrote {} ({size} bytes, magic {:?})", path.display(), String::from_utf8_lossy(&CACHE_MAGIC));

    let back = read_graph_cache(&path)?;
    assert_eq!(back, g);
    println!("n={} m={} max degree {}", back.n(), back.m(), back.max_degree());
    for v in 0..back.n() as u32 {
        println!("  {v:>2}: {:?}", back.neighbors(v));
    }
    Ok(())
}
