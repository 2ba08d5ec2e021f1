//! Structural graph clustering (SCAN) with bound-based pruning.
//!
//! The pipeline has three phases over an immutable CSR layout:
//!
//! 1. core identification, which keeps lower/upper bounds on each vertex's
//!    epsilon-neighborhood size and skips similarity work for edges whose
//!    endpoints are already decided;
//! 2. cluster detection with a lock-free union-find over core vertices;
//! 3. hub/outlier classification of the vertices left outside clusters.
//!
//! [`partition`] runs the same phases over edge-extended subgraphs that fit a
//! byte budget, with per-vertex state kept resident. [`oracle`] is a plain
//! serial implementation of the definitions used to check both engines.

pub mod cli;
pub mod error;
pub mod exec;
pub mod graph;
pub mod oracle;
pub mod params;
pub mod partition;
pub mod scan;

pub type VertexId = u32;
pub type EdgeId = u32;

pub use error::{Error, Result};
pub use exec::Executor;
pub use graph::{build_graph, parse_edge_list, EdgeList, Graph};
pub use oracle::{results_equivalent, serial_scan, OracleResult};
pub use params::{Epsilon, Params};
pub use partition::{
    partition_graph, run_out_of_core, scan_out_of_core, EdgeExtendedSubgraph, GraphMeta, PartitionPlan,
    SpillSet,
};
pub use scan::{scan_in_memory, ClusteringResult, Role, ScanOptions, StatsReport};
