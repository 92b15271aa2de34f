//! Classical centralities used as leader-selection baselines.

use std::collections::VecDeque;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ScoreVector;
use crate::error::{param, Error, Result};
use crate::graph::DirectedGraph;
use crate::sparse::max_abs_diff;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaselineKind {
    OutDegree,
    Betweenness,
    Closeness,
    Eigenvector,
    PageRank,
}

#[derive(Debug, Clone, Default)]
pub struct BaselineParams {
    pub betweenness: BetweennessParams,
    pub eigenvector: EigenvectorParams,
    pub pagerank: PageRankParams,
}

#[derive(Debug, Clone)]
pub struct BetweennessParams {
    /// Graphs with at most this many nodes use every node as a source.
    pub exact_threshold: usize,
    /// Number of sampled sources above the threshold.
    pub pivots: usize,
    /// Seed for pivot selection; required only when sampling.
    pub seed: Option<u64>,
}

impl Default for BetweennessParams {
    fn default() -> Self {
        Self {
            exact_threshold: 20_000,
            pivots: 1024,
            seed: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EigenvectorParams {
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for EigenvectorParams {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            max_iterations: 10_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PageRankParams {
    pub damping: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for PageRankParams {
    fn default() -> Self {
        Self {
            damping: 0.85,
            tolerance: 1e-12,
            max_iterations: 10_000,
        }
    }
}

pub fn baseline(
    g: &DirectedGraph,
    kind: BaselineKind,
    params: &BaselineParams,
) -> Result<ScoreVector> {
    match kind {
        BaselineKind::OutDegree => Ok(out_degree(g)),
        BaselineKind::Betweenness => betweenness(g, &params.betweenness),
        BaselineKind::Closeness => Ok(closeness(g)),
        BaselineKind::Eigenvector => eigenvector(g, &params.eigenvector),
        BaselineKind::PageRank => pagerank(g, &params.pagerank),
    }
}

pub fn out_degree(g: &DirectedGraph) -> ScoreVector {
    ScoreVector::new(
        (0..g.node_count())
            .map(|i| g.out_degree(i) as f64)
            .collect(),
    )
}

/// Brandes accumulation over directed shortest paths, unnormalized.
///
/// Sources are processed in fixed-size chunks whose partial sums are added in
/// chunk order, so the result is identical for any thread count.
pub fn betweenness(g: &DirectedGraph, params: &BetweennessParams) -> Result<ScoreVector> {
    let n = g.node_count();
    let (sources, scale): (Vec<usize>, f64) = if n <= params.exact_threshold || params.pivots >= n {
        ((0..n).collect(), 1.0)
    } else {
        let seed = params
            .seed
            .ok_or_else(|| param("sampled betweenness requires a seed"))?;
        if params.pivots == 0 {
            return Err(param("pivot count must be positive"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut picked = sample(&mut rng, n, params.pivots).into_vec();
        picked.sort_unstable();
        (picked, n as f64 / params.pivots as f64)
    };

    let chunk = sources.len().div_ceil(256).max(1);
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(chunk)
        .map(|chunk| {
            let mut acc = vec![0.0; n];
            let mut work = BrandesWork::new(n);
            for &s in chunk {
                work.accumulate(g, s, &mut acc);
            }
            acc
        })
        .collect();

    let mut total = vec![0.0; n];
    for part in &partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    if scale != 1.0 {
        total.iter_mut().for_each(|v| *v *= scale);
    }
    Ok(ScoreVector::new(total))
}

struct BrandesWork {
    dist: Vec<i64>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    order: Vec<usize>,
    queue: VecDeque<usize>,
}

impl BrandesWork {
    fn new(n: usize) -> Self {
        Self {
            dist: vec![-1; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
            queue: VecDeque::new(),
        }
    }

    fn accumulate(&mut self, g: &DirectedGraph, s: usize, acc: &mut [f64]) {
        for &v in &self.order {
            self.dist[v] = -1;
            self.sigma[v] = 0.0;
            self.delta[v] = 0.0;
        }
        self.order.clear();

        self.dist[s] = 0;
        self.sigma[s] = 1.0;
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.order.push(v);
            for &w in g.out_neighbors(v) {
                let w = w as usize;
                if self.dist[w] < 0 {
                    self.dist[w] = self.dist[v] + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == self.dist[v] + 1 {
                    self.sigma[w] += self.sigma[v];
                }
            }
        }
        // Predecessors of w are its in-neighbors one level closer to s.
        for &w in self.order.iter().rev() {
            for &v in g.in_neighbors(w) {
                let v = v as usize;
                if self.dist[v] >= 0 && self.dist[v] + 1 == self.dist[w] {
                    self.delta[v] += self.sigma[v] / self.sigma[w] * (1.0 + self.delta[w]);
                }
            }
            if w != s {
                acc[w] += self.delta[w];
            }
        }
    }
}

/// Closeness over the nodes reachable along out-edges:
/// `(r - 1) / sum(d) * (r - 1) / (n - 1)` where `r` counts the node itself
/// and everything it reaches. Nodes reaching nothing score zero.
pub fn closeness(g: &DirectedGraph) -> ScoreVector {
    let n = g.node_count();
    let values = (0..n)
        .into_par_iter()
        .with_min_len(64)
        .map_init(
            || (vec![usize::MAX; n], VecDeque::new()),
            |(dist, queue), s| {
                dist.fill(usize::MAX);
                dist[s] = 0;
                queue.push_back(s);
                let (mut reached, mut total) = (0usize, 0usize);
                while let Some(v) = queue.pop_front() {
                    for &w in g.out_neighbors(v) {
                        let w = w as usize;
                        if dist[w] == usize::MAX {
                            dist[w] = dist[v] + 1;
                            reached += 1;
                            total += dist[w];
                            queue.push_back(w);
                        }
                    }
                }
                if total == 0 {
                    0.0
                } else {
                    (reached as f64 / total as f64) * (reached as f64 / (n - 1) as f64)
                }
            },
        )
        .collect();
    ScoreVector::new(values)
}

/// Power iteration on `I + A^T`: a node's score grows with the scores of the
/// nodes pointing to it. The identity shift leaves the eigenvectors unchanged
/// and keeps the iteration from collapsing on acyclic graphs. Normalized to
/// unit infinity-norm at every step.
pub fn eigenvector(g: &DirectedGraph, params: &EigenvectorParams) -> Result<ScoreVector> {
    let n = g.node_count();
    let mut x = vec![1.0; n];
    let mut next = vec![0.0; n];
    let mut step = f64::INFINITY;
    for _ in 0..params.max_iterations {
        let src = &x;
        next.par_iter_mut()
            .enumerate()
            .with_min_len(1024)
            .for_each(|(v, o)| {
                *o = src[v]
                    + g.in_neighbors(v)
                        .iter()
                        .map(|&u| src[u as usize])
                        .sum::<f64>();
            });
        let norm = next.iter().copied().fold(0.0, f64::max);
        next.iter_mut().for_each(|v| *v /= norm);
        step = max_abs_diff(&x, &next);
        std::mem::swap(&mut x, &mut next);
        if step <= params.tolerance {
            return Ok(ScoreVector::new(x));
        }
    }
    Err(Error::IterationLimit {
        iterations: params.max_iterations,
        residual: step,
    })
}

/// `PR(i) = (1 - d) + d * (sum_{j -> i} PR(j) / out_degree(j) + dangling / n)`
/// where `dangling` is the total score held by nodes without out-edges.
pub fn pagerank(g: &DirectedGraph, params: &PageRankParams) -> Result<ScoreVector> {
    let d = params.damping;
    if !(d > 0.0 && d < 1.0) {
        return Err(param(format!("damping must lie in (0, 1), got {d}")));
    }
    let n = g.node_count();
    let inv_out: Vec<f64> = (0..n)
        .map(|i| match g.out_degree(i) {
            0 => 0.0,
            k => 1.0 / k as f64,
        })
        .collect();
    let mut pr = vec![1.0; n];
    let mut next = vec![0.0; n];
    let mut step = f64::INFINITY;
    for _ in 0..params.max_iterations {
        pagerank_update(g, &inv_out, d, &pr, &mut next);
        step = max_abs_diff(&pr, &next);
        std::mem::swap(&mut pr, &mut next);
        if step <= params.tolerance {
            return Ok(ScoreVector::new(pr));
        }
    }
    Err(Error::IterationLimit {
        iterations: params.max_iterations,
        residual: step,
    })
}

pub(crate) fn pagerank_update(
    g: &DirectedGraph,
    inv_out: &[f64],
    d: f64,
    pr: &[f64],
    out: &mut [f64],
) {
    let n = pr.len();
    let dangling: f64 = (0..n).filter(|&i| inv_out[i] == 0.0).map(|i| pr[i]).sum();
    let teleport = (1.0 - d) + d * dangling / n as f64;
    out.par_iter_mut()
        .enumerate()
        .with_min_len(1024)
        .for_each(|(i, o)| {
            let s: f64 = g
                .in_neighbors(i)
                .iter()
                .map(|&j| pr[j as usize] * inv_out[j as usize])
                .sum();
            *o = teleport + d * s;
        });
}
