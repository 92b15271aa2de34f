//! Top-k influential node mining.
//!
//! Influence is the fixed point of `Influ = alpha * C + (1 - alpha) * W Influ`.
//! Starting from `Influ(0) = C`, the error after `t` sweeps is at most
//! `(1 - alpha)^t * (max C - min C)` for every node, so once a node trails the
//! running k-th largest value by more than twice that radius it can never
//! enter the top k and is dropped from the candidate set.
//!
//! A dropped node still feeds the nodes that depend on it. The miner keeps
//! updating every node reachable from a surviving candidate along the weight
//! rows, so survivors see exactly the values a full sweep would produce, and
//! stops updating nodes that no candidate depends on.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::centrality::{
    degree_centrality, effective_degree, BlendIteration, Orientation, RowStochasticWeights,
    ScoreVector, DEFAULT_FLOOR,
};
use crate::error::{param, Result};
use crate::graph::DirectedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundVariant {
    /// `2 (1 - alpha)^t (max C - min C)`, the radius with a soundness proof.
    #[default]
    #[serde(rename = "proposition1-C-range")]
    CRange,
    /// `2 (1 - alpha)^t (max - min)` over the current candidates' iterate.
    #[serde(rename = "algorithm-listing-iterate-range")]
    IterateRange,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseVector {
    #[default]
    DegreeCentrality,
    EffectiveDegree,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinerConfig {
    pub k: usize,
    pub alpha: f64,
    pub bound_variant: BoundVariant,
    pub base_vector: BaseVector,
    pub aggregation_direction: Orientation,
    pub max_iterations: usize,
    pub tolerance: f64,
}

impl MinerConfig {
    pub fn new(k: usize, alpha: f64) -> Self {
        Self {
            k,
            alpha,
            bound_variant: BoundVariant::default(),
            base_vector: BaseVector::default(),
            aggregation_direction: Orientation::default(),
            max_iterations: 10_000,
            tolerance: 1e-12,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.k == 0 || self.k > n {
            return Err(param(format!("k must lie in 1..={n}, got {}", self.k)));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(param(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(param("tolerance must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Leader {
    pub node: usize,
    pub score: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinerResult {
    pub leaders: Vec<Leader>,
    pub iterations_used: usize,
    pub pruned_per_iteration: Vec<usize>,
    pub survivors_final: usize,
}

impl MinerResult {
    pub fn nodes(&self) -> Vec<usize> {
        self.leaders.iter().map(|l| l.node).collect()
    }
}

/// Base vector for the influence recursion.
pub fn influence_base(g: &DirectedGraph, base: BaseVector) -> ScoreVector {
    match base {
        BaseVector::DegreeCentrality => degree_centrality(g, DEFAULT_FLOOR),
        BaseVector::EffectiveDegree => effective_degree(g),
    }
}

/// Influence fixed point without pruning, iterated from `base` until a sweep
/// changes no entry by more than `tolerance`.
pub fn influence_exact(
    g: &DirectedGraph,
    base: &ScoreVector,
    alpha: f64,
    tolerance: f64,
) -> Result<ScoreVector> {
    influence_exact_oriented(g, base, alpha, tolerance, Orientation::OutNeighbors)
}

pub fn influence_exact_oriented(
    g: &DirectedGraph,
    base: &ScoreVector,
    alpha: f64,
    tolerance: f64,
    orientation: Orientation,
) -> Result<ScoreVector> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(param(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if base.len() != g.node_count() {
        return Err(param("base vector length differs from node count"));
    }
    let weights = RowStochasticWeights::build(g, orientation);
    let mut it = BlendIteration::new(&weights, base, alpha);
    it.run(tolerance, max_sweeps(alpha, base.range(), tolerance))?;
    Ok(it.into_values())
}

/// Sweeps needed for the contraction to shrink `range` below `tolerance`,
/// with headroom for rounding.
fn max_sweeps(alpha: f64, range: f64, tolerance: f64) -> usize {
    let needed = ((tolerance / range.max(tolerance)).ln() / (1.0 - alpha).ln()).ceil();
    if needed.is_finite() {
        (needed as usize).saturating_mul(2).max(1000)
    } else {
        1000
    }
}

/// Orders nodes by descending score, ties by ascending id.
fn by_score_desc(scores: &[f64]) -> impl Fn(&usize, &usize) -> Ordering + '_ {
    move |&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b))
}

/// Top-`k` node ids by descending score, ties broken by ascending id.
pub fn rank_by_score(scores: &[f64], k: usize) -> Result<Vec<usize>> {
    if k > scores.len() {
        return Err(param(format!(
            "k = {k} exceeds node count {}",
            scores.len()
        )));
    }
    let mut ids: Vec<usize> = (0..scores.len()).collect();
    let cmp = by_score_desc(scores);
    if k < ids.len() && k > 0 {
        ids.select_nth_unstable_by(k - 1, &cmp);
        ids.truncate(k);
    }
    ids.sort_unstable_by(&cmp);
    ids.truncate(k);
    Ok(ids)
}

/// Mines the `k` most influential nodes with error-bound pruning.
pub fn mine_top_k(g: &DirectedGraph, cfg: &MinerConfig) -> Result<MinerResult> {
    let n = g.node_count();
    cfg.validate(n)?;
    let base = influence_base(g, cfg.base_vector);
    mine_with_base(g, &base, cfg)
}

/// As [`mine_top_k`] with an explicit base vector.
pub fn mine_with_base(g: &DirectedGraph, base: &[f64], cfg: &MinerConfig) -> Result<MinerResult> {
    let n = g.node_count();
    cfg.validate(n)?;
    if base.len() != n {
        return Err(param("base vector length differs from node count"));
    }
    let weights = RowStochasticWeights::build(g, cfg.aggregation_direction);
    let w = weights.matrix();
    let alpha = cfg.alpha;
    let damp = 1.0 - alpha;
    let base_range = ScoreVector::new(base.to_vec()).range();

    let mut current = base.to_vec();
    let mut next = current.clone();
    let mut survivors: Vec<usize> = (0..n).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut reached = vec![false; n];
    let mut pruned_per_iteration = Vec::new();
    let mut radius = 2.0;
    let mut t = 0;

    while survivors.len() > cfg.k && t < cfg.max_iterations {
        for &i in &active {
            next[i] = alpha * base[i] + damp * w.row_dot(i, &current);
        }
        let step = active
            .iter()
            .map(|&i| (next[i] - current[i]).abs())
            .fold(0.0, f64::max);
        for &i in &active {
            current[i] = next[i];
        }
        t += 1;
        radius *= damp;

        let spread = match cfg.bound_variant {
            BoundVariant::CRange => base_range,
            BoundVariant::IterateRange => {
                let (lo, hi) = survivors
                    .iter()
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &i| {
                        (lo.min(current[i]), hi.max(current[i]))
                    });
                hi - lo
            }
        };
        let bound = radius * spread;
        let kth = kth_largest(&survivors, &current, cfg.k);
        let before = survivors.len();
        survivors.retain(|&v| kth - current[v] <= bound);
        let pruned = before - survivors.len();
        pruned_per_iteration.push(pruned);

        if pruned > 0 {
            active = dependency_closure(&survivors, &weights, &mut reached);
        }
        if step <= cfg.tolerance {
            break;
        }
    }

    let cmp = by_score_desc(&current);
    survivors.sort_unstable_by(&cmp);
    let leaders = survivors
        .iter()
        .take(cfg.k)
        .map(|&node| Leader {
            node,
            score: current[node],
        })
        .collect();
    Ok(MinerResult {
        leaders,
        iterations_used: t,
        pruned_per_iteration,
        survivors_final: survivors.len(),
    })
}

fn kth_largest(candidates: &[usize], values: &[f64], k: usize) -> f64 {
    let mut v: Vec<f64> = candidates.iter().map(|&i| values[i]).collect();
    let (_, kth, _) = v.select_nth_unstable_by(k - 1, |a, b| b.total_cmp(a));
    *kth
}

/// Nodes reachable from `roots` along weight rows, in ascending id order.
fn dependency_closure(
    roots: &[usize],
    weights: &RowStochasticWeights,
    seen: &mut [bool],
) -> Vec<usize> {
    seen.fill(false);
    let mut stack: Vec<usize> = Vec::with_capacity(roots.len());
    for &r in roots {
        if !seen[r] {
            seen[r] = true;
            stack.push(r);
        }
    }
    let mut out = Vec::new();
    while let Some(i) = stack.pop() {
        out.push(i);
        for &j in weights.matrix().row(i).0 {
            let j = j as usize;
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    out.sort_unstable();
    out
}
