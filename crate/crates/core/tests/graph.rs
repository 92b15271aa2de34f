use std::collections::{BTreeSet, HashSet};

use opinion_leaders::experiment::random_digraph;
use opinion_leaders::{load_edge_list, DirectedGraph, LoadOptions};
use proptest::prelude::*;

fn edge_strategy() -> impl Strategy<Value = (usize, Vec<(u32, u32)>)> {
    (1usize..40).prop_flat_map(|n| {
        let pair = (0..n as u32, 0..n as u32);
        (Just(n), prop::collection::vec(pair, 0..120))
    })
}

fn labeled_edges(g: &DirectedGraph) -> BTreeSet<(String, String)> {
    g.edges()
        .map(|(u, v)| {
            (
                g.label(u as usize).to_owned(),
                g.label(v as usize).to_owned(),
            )
        })
        .collect()
}

proptest! {
    #[test]
    fn out_and_in_views_agree((n, raw) in edge_strategy()) {
        let edges: Vec<_> = raw.into_iter().filter(|(u, v)| u != v).collect();
        let g = DirectedGraph::from_edges(n, edges.iter().copied()).unwrap();
        let unique: HashSet<_> = edges.iter().copied().collect();
        prop_assert_eq!(g.edge_count(), unique.len());

        let from_out: BTreeSet<(u32, u32)> = (0..n)
            .flat_map(|u| g.out_neighbors(u).iter().map(move |&v| (u as u32, v)))
            .collect();
        let from_in: BTreeSet<(u32, u32)> = (0..n)
            .flat_map(|v| g.in_neighbors(v).iter().map(move |&u| (u, v as u32)))
            .collect();
        prop_assert_eq!(&from_out, &from_in);
        prop_assert_eq!(from_out, unique.into_iter().collect::<BTreeSet<_>>());

        let out_total: usize = (0..n).map(|u| g.out_degree(u)).sum();
        let in_total: usize = (0..n).map(|v| g.in_degree(v)).sum();
        prop_assert_eq!(out_total, g.edge_count());
        prop_assert_eq!(in_total, g.edge_count());
        for u in 0..n {
            prop_assert!(g.out_neighbors(u).windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn stats_invariants((n, raw) in edge_strategy()) {
        let g = DirectedGraph::from_edges(n, raw.into_iter().filter(|(u, v)| u != v)).unwrap();
        let s = g.stats();
        prop_assert_eq!(s.n, n);
        prop_assert!((s.avg_degree - s.m as f64 / n as f64).abs() < 1e-12);
        prop_assert!(s.max_degree as f64 >= s.avg_degree);
        prop_assert!(s.lcc_size >= 1 && s.lcc_size <= n);
    }

    #[test]
    fn write_then_reload_preserves_labeled_edges((n, raw) in edge_strategy()) {
        let g = DirectedGraph::from_edges(n, raw.into_iter().filter(|(u, v)| u != v)).unwrap();
        prop_assume!(g.edge_count() > 0);
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        let (h, report) = load_edge_list(&buf[..], &LoadOptions::default()).unwrap();
        prop_assert_eq!(report.duplicates_dropped, 0);
        prop_assert_eq!(report.self_loops_dropped, 0);
        prop_assert_eq!(labeled_edges(&g), labeled_edges(&h));

        let mut again = Vec::new();
        h.write_edge_list(&mut again).unwrap();
        let (h2, _) = load_edge_list(&again[..], &LoadOptions::default()).unwrap();
        prop_assert_eq!(labeled_edges(&h), labeled_edges(&h2));
        prop_assert_eq!(h.node_count(), h2.node_count());
    }

    #[test]
    fn spurious_edges_are_new_and_distinct(seed in any::<u64>(), count in 0usize..60) {
        let g = random_digraph(12, 0.3, seed).unwrap();
        let noisy = g.add_spurious_edges(count, seed).unwrap();
        prop_assert_eq!(noisy.edge_count(), g.edge_count() + count);
        prop_assert!(g.edges().all(|(u, v)| noisy.has_edge(u as usize, v as usize)));
        prop_assert!(noisy.edges().all(|(u, v)| u != v));
    }
}

#[test]
fn spurious_edges_set_oracle() {
    let g = random_digraph(50, 0.1, 7).unwrap();
    let noisy = g.add_spurious_edges(100, 7).unwrap();
    assert_eq!(noisy.edge_count(), g.edge_count() + 100);

    let before: HashSet<(u32, u32)> = g.edges().collect();
    let after: Vec<(u32, u32)> = noisy.edges().collect();
    let distinct: HashSet<_> = after.iter().copied().collect();
    assert_eq!(distinct.len(), after.len());
    assert!(before.is_subset(&distinct));
    let added: Vec<_> = distinct.difference(&before).collect();
    assert_eq!(added.len(), 100);
    assert!(added.iter().all(|(u, v)| u != v));

    assert_eq!(noisy, g.add_spurious_edges(100, 7).unwrap());
    assert_ne!(noisy, g.add_spurious_edges(100, 8).unwrap());
}

#[test]
fn dense_regime_fills_the_complement() {
    let g = random_digraph(8, 0.5, 3).unwrap();
    let free = 8 * 7 - g.edge_count();
    let full = g.add_spurious_edges(free, 1).unwrap();
    assert_eq!(full.edge_count(), 56);
    assert!(g.add_spurious_edges(free + 1, 1).is_err());
}

#[test]
fn labels_follow_first_appearance() {
    let text = "% header\nz y\ny x\n\n# note\nx z 1.0 17\nz y\nq q\n";
    let (g, report) = load_edge_list(text.as_bytes(), &LoadOptions::default()).unwrap();
    assert_eq!(g.labels(), ["z", "y", "x", "q"]);
    assert_eq!(g.edge_count(), 3);
    assert_eq!(report.duplicates_dropped, 1);
    assert_eq!(report.self_loops_dropped, 1);
    assert_eq!(g.node_by_label("q"), Some(3));
    assert_eq!(g.out_degree(3) + g.in_degree(3), 0);
    assert_eq!(g.stats().lcc_size, 3);
}

#[test]
fn numeric_labels_option_rejects_names() {
    let opts = LoadOptions {
        numeric_labels: true,
        ..Default::default()
    };
    assert!(load_edge_list("1 2\n2 3\n".as_bytes(), &opts).is_ok());
    let err = load_edge_list("1 2\n2 b\n".as_bytes(), &opts).unwrap_err();
    assert!(matches!(err, opinion_leaders::Error::Parse { line: 2, .. }));
}
