//! Opinion-leader detection on directed social graphs.
//!
//! - [`graph`]: immutable CSR digraph, edge-list loading and statistics.
//! - [`centrality`]: effective-degree based centralities, global centrality
//!   and the classical baselines (betweenness, closeness, eigenvector,
//!   PageRank, out-degree).
//! - [`miner`]: top-k influence mining with error-bound pruning.
//! - [`opinion`]: DeGroot, Friedkin–Johnsen and centrality-weighted opinion
//!   dynamics.
//! - [`experiment`]: seeded comparison studies, sweeps and the fault-tolerance
//!   study, plus a synthetic graph generator.

pub mod centrality;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod miner;
pub mod opinion;
pub mod output;
pub mod sparse;

pub use error::{Error, Result};
pub use graph::{load_edge_list, DirectedGraph, GraphStats, LoadOptions, LoadReport};
