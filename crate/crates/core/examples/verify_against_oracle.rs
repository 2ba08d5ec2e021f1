//! Compare the parallel engine with the serial reference on random graphs.
//!
//!     cargo run --release --example verify_against_oracle -- [graphs] [workers]

use structclust::{results_equivalent, scan_in_memory, serial_scan, EdgeList, Graph, Params, ScanOptions};

/// Small xorshift generator so the example has no extra dependencies.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn random_graph(rng: &mut XorShift, n: u32, m: usize) -> structclust::Result<Graph> {
    let pairs: Vec<(u32, u32)> = (0..m)
        .map(|_| (rng.below(n as u64) as u32, rng.below(n as u64) as u32))
        .collect();
    Ok(Graph::from_edge_list(&EdgeList::from_pairs(n as usize, pairs)?))
}

fn main() -> structclust::Result<()> {
    let mut args = std::env::args().skip(1);
    let graphs: usize = args.next().map_or(50, |s| s.parse().expect("graph count"));
    let workers: usize = args.next().map_or(4, |s| s.parse().expect("worker count"));

    let mut rng = XorShift(0x9e37_79b9_7f4a_7c15);
    let mut checked = 0;
    for i in 0..graphs {
        let n = 20 + rng.below(300) as u32;
        let g = random_graph(&mut rng, n, n as usize * (2 + i % 6))?;
        for eps in ["0.3", "0.5", "0.7"] {
            for mu in [2, 4, 8] {
                let params = Params::parse(mu, eps)?;
                let (r, _) = scan_in_memory(&g, params, ScanOptions::parallel(workers))?;
                if let Err(m) = results_equivalent(&r, &serial_scan(&g, params)) {
                    eprintln!("graph {i} (n={n}) eps={eps} mu={mu}: {m}");
                    std::process::exit(2);
                }
                checked += 1;
            }
        }
    }
    println!("{checked} runs agree with the reference");
    Ok(())
}
