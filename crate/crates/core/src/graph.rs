//! Immutable directed graph in compressed sparse row form.
//!
//! Every graph keeps both adjacency orientations: `out_neighbors(u)` lists the
//! nodes `u` points to and `in_neighbors(v)` lists the nodes pointing to `v`.
//! An edge `u -> v` reads "u influences v" (v follows u). Node ids are dense,
//! `0..node_count`, and the original external labels are retained for I/O.

use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{param, Error, Result};

pub type NodeId = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    out_offsets: Vec<usize>,
    out_targets: Vec<NodeId>,
    in_offsets: Vec<usize>,
    in_sources: Vec<NodeId>,
    labels: Vec<String>,
}

/// Counters collected while reading an edge list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct LoadReport {
    pub lines: usize,
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

#[derive(Debug, Clone)]
pub struct LoadOptions {
    /// Lines whose first non-blank character is one of these are skipped.
    pub comment_chars: Vec<char>,
    /// Require every node token to be an unsigned integer.
    pub numeric_labels: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            comment_chars: vec!['%', '#'],
            numeric_labels: false,
        }
    }
}

/// Descriptive statistics of a graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub avg_degree: f64,
    pub max_degree: usize,
    pub lcc_size: usize,
}

fn csr(n: usize, edges: &[(NodeId, NodeId)]) -> (Vec<usize>, Vec<NodeId>) {
    // `edges` must be sorted by (row, col); the column lists come out sorted.
    let mut offsets = vec![0usize; n + 1];
    for &(r, _) in edges {
        offsets[r as usize + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let cols = edges.iter().map(|&(_, c)| c).collect();
    (offsets, cols)
}

impl DirectedGraph {
    /// Builds a graph over `n` nodes labelled `0..n`.
    ///
    /// Self-loops and out-of-range endpoints are rejected; repeated edges are
    /// merged.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        Self::with_labels((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn with_labels(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self> {
        let n = labels.len();
        if n > NodeId::MAX as usize {
            return Err(param(format!("{n} nodes exceed the id range")));
        }
        let mut list = Vec::new();
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(param(format!("edge ({u}, {v}) out of range for {n} nodes")));
            }
            if u == v {
                return Err(param(format!("self-loop on node {u}")));
            }
            list.push((u, v));
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted_unique(labels, list))
    }

    fn from_sorted_unique(labels: Vec<String>, mut edges: Vec<(NodeId, NodeId)>) -> Self {
        let n = labels.len();
        let (out_offsets, out_targets) = csr(n, &edges);
        for e in edges.iter_mut() {
            *e = (e.1, e.0);
        }
        edges.sort_unstable();
        let (in_offsets, in_sources) = csr(n, &edges);
        Self {
            out_offsets,
            out_targets,
            in_offsets,
            in_sources,
            labels,
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out_targets.len()
    }

    pub fn out_neighbors(&self, u: usize) -> &[NodeId] {
        &self.out_targets[self.out_offsets[u]..self.out_offsets[u + 1]]
    }

    pub fn in_neighbors(&self, v: usize) -> &[NodeId] {
        &self.in_sources[self.in_offsets[v]..self.in_offsets[v + 1]]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_offsets[u + 1] - self.out_offsets[u]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_offsets[v + 1] - self.in_offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out_neighbors(u).binary_search(&(v as NodeId)).is_ok()
    }

    pub fn label(&self, u: usize) -> &str {
        &self.labels[u]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// All edges in ascending (source, target) order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count())
            .flat_map(move |u| self.out_neighbors(u).iter().map(move |&v| (u as NodeId, v)))
    }

    pub fn stats(&self) -> GraphStats {
        let n = self.node_count();
        let m = self.edge_count();
        let max_degree = (0..n)
            .map(|u| self.in_degree(u) + self.out_degree(u))
            .max()
            .unwrap_or(0);
        GraphStats {
            n,
            m,
            avg_degree: if n == 0 { 0.0 } else { m as f64 / n as f64 },
            max_degree,
            lcc_size: self.largest_weak_component(),
        }
    }

    fn largest_weak_component(&self) -> usize {
        let n = self.node_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (u, v) in self.edges() {
            let (a, b) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut sizes = vec![0usize; n];
        for x in 0..n {
            let r = find(&mut parent, x);
            sizes[r] += 1;
        }
        sizes.into_iter().max().unwrap_or(0)
    }

    /// Returns a copy of the graph with `count` extra directed edges drawn
    /// uniformly from the absent non-self-loop pairs.
    pub fn add_spurious_edges(&self, count: usize, seed: u64) -> Result<Self> {
        let n = self.node_count() as u64;
        let available = n * n.saturating_sub(1) - self.edge_count() as u64;
        if count as u64 > available {
            return Err(Error::Capacity {
                requested: count as u64,
                available,
            });
        }
        if count == 0 {
            return Ok(self.clone());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut added: Vec<(NodeId, NodeId)> = Vec::with_capacity(count);
        if available <= 2 * count as u64 {
            // Dense regime: enumerate the complement and take a random subset.
            let mut candidates = Vec::with_capacity(available as usize);
            for u in 0..n as usize {
                for v in 0..n as usize {
                    if u != v && !self.has_edge(u, v) {
                        candidates.push((u as NodeId, v as NodeId));
                    }
                }
            }
            added.extend(
                rand::seq::index::sample(&mut rng, candidates.len(), count)
                    .into_iter()
                    .map(|i| candidates[i]),
            );
        } else {
            let mut seen = HashSet::with_capacity(count);
            while added.len() < count {
                let u = rng.random_range(0..n) as NodeId;
                let v = rng.random_range(0..n) as NodeId;
                if u == v || self.has_edge(u as usize, v as usize) || !seen.insert((u, v)) {
                    continue;
                }
                added.push((u, v));
            }
        }
        let mut edges: Vec<_> = self.edges().chain(added).collect();
        edges.sort_unstable();
        Ok(Self::from_sorted_unique(self.labels.clone(), edges))
    }

    /// Writes `label label` lines, one per edge, in (source, target) order.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for (u, v) in self.edges() {
            writeln!(
                out,
                "{} {}",
                self.labels[u as usize], self.labels[v as usize]
            )?;
        }
        Ok(())
    }
}

/// Reads a whitespace-separated edge list (`src dst [extra...]` per line).
///
/// Node labels are compacted to dense ids in order of first appearance.
/// Self-loops and repeated edges are dropped and counted in the report.
pub fn load_edge_list<R: BufRead>(
    reader: R,
    options: &LoadOptions,
) -> Result<(DirectedGraph, LoadReport)> {
    let mut report = LoadReport::default();
    let mut ids: HashMap<String, NodeId> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();

    for (index, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = index + 1;
        report.lines = lineno;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with(options.comment_chars.as_slice()) {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (src, dst) = match (tokens.next(), tokens.next()) {
            (Some(s), Some(d)) => (s, d),
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected `src dst`, found {:?}", line.trim()),
                })
            }
        };
        let mut intern = |token: &str| -> Result<NodeId> {
            if options.numeric_labels && token.parse::<u64>().is_err() {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("malformed node id {token:?}"),
                });
            }
            if let Some(&id) = ids.get(token) {
                return Ok(id);
            }
            let id = NodeId::try_from(labels.len())
                .map_err(|_| param("node count exceeds the id range"))?;
            ids.insert(token.to_owned(), id);
            labels.push(token.to_owned());
            Ok(id)
        };
        let u = intern(src)?;
        let v = intern(dst)?;
        if u == v {
            report.self_loops_dropped += 1;
        } else {
            edges.push((u, v));
        }
    }

    if labels.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let before = edges.len();
    edges.sort_unstable();
    edges.dedup();
    report.duplicates_dropped = before - edges.len();
    Ok((DirectedGraph::from_sorted_unique(labels, edges), report))
}
