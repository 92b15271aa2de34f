use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{param, Result};
use crate::graph::{DirectedGraph, NodeId};

/// Directed preferential attachment (Price-style).
///
/// Nodes `0..=m0` start as a complete digraph. Every later node `v` adds `m0`
/// out-edges to distinct earlier nodes, each drawn with probability
/// proportional to `in_degree + 1`.
pub fn preferential_attachment(n: usize, m0: usize, seed: u64) -> Result<DirectedGraph> {
    if m0 == 0 {
        return Err(param("m0 must be positive"));
    }
    if n <= m0 {
        return Err(param(format!("need more than m0 = {m0} nodes, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let core = m0 + 1;
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(core * m0 + (n - core) * m0);
    // One ticket per node plus one per received edge.
    let mut tickets: Vec<NodeId> = Vec::with_capacity(n + edges.capacity());
    for u in 0..core {
        tickets.push(u as NodeId);
        for v in 0..core {
            if u != v {
                edges.push((u as NodeId, v as NodeId));
                tickets.push(v as NodeId);
            }
        }
    }
    let mut picked: Vec<NodeId> = Vec::with_capacity(m0);
    for v in core..n {
        picked.clear();
        while picked.len() < m0 {
            let u = tickets[rng.random_range(0..tickets.len())];
            if !picked.contains(&u) {
                picked.push(u);
            }
        }
        for &u in &picked {
            edges.push((v as NodeId, u));
            tickets.push(u);
        }
        tickets.push(v as NodeId);
    }
    DirectedGraph::from_edges(n, edges)
}

/// Directed G(n, p): each ordered pair `(u, v)`, `u != v`, is an edge with
/// probability `p`.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Result<DirectedGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(param(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(p) {
                edges.push((u as NodeId, v as NodeId));
            }
        }
    }
    DirectedGraph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_and_out_degree() {
        let g = preferential_attachment(500, 4, 1).unwrap();
        assert_eq!(g.node_count(), 500);
        assert_eq!(g.edge_count(), 5 * 4 + 495 * 4);
        assert!((5..500).all(|v| g.out_degree(v) == 4));
        assert_eq!(g.stats().lcc_size, 500);
    }

    #[test]
    fn deterministic_per_seed() {
        let a = preferential_attachment(300, 3, 9).unwrap();
        assert_eq!(a, preferential_attachment(300, 3, 9).unwrap());
        assert_ne!(a, preferential_attachment(300, 3, 10).unwrap());
    }

    #[test]
    fn rich_get_richer() {
        let g = preferential_attachment(2000, 4, 5).unwrap();
        let max_in = (0..2000).map(|v| g.in_degree(v)).max().unwrap();
        assert!(max_in > 40, "max in-degree {max_in}");
    }

    #[test]
    fn gnp_extremes() {
        assert_eq!(random_digraph(10, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(random_digraph(10, 1.0, 1).unwrap().edge_count(), 90);
        assert!(random_digraph(10, 1.5, 1).is_err());
    }

    #[test]
    fn rejects_degenerate_sizes() {
        assert!(preferential_attachment(4, 4, 0).is_err());
        assert!(preferential_attachment(10, 0, 0).is_err());
    }
}
