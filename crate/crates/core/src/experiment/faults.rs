use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::trial_seed;
use crate::centrality::{
    global_centrality, pagerank, GlobalCentralityConfig, PageRankParams, ScoreVector,
};
use crate::error::{param, Result};
use crate::graph::DirectedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FaultMethod {
    #[serde(rename = "global-centrality")]
    GlobalCentrality,
    #[serde(rename = "pagerank")]
    PageRank,
}

impl FaultMethod {
    pub fn name(self) -> &'static str {
        match self {
            FaultMethod::GlobalCentrality => "global-centrality",
            FaultMethod::PageRank => "pagerank",
        }
    }

    fn scores(self, g: &DirectedGraph, alpha: f64) -> Result<ScoreVector> {
        match self {
            FaultMethod::GlobalCentrality => global_centrality(
                g,
                &GlobalCentralityConfig {
                    alpha,
                    ..Default::default()
                },
            ),
            FaultMethod::PageRank => pagerank(g, &PageRankParams::default()),
        }
    }
}

/// How each score vector is rescaled before clean and noisy scores are
/// compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Affine map onto `[0, 1]`.
    #[default]
    MinMax,
    /// Division by the vector total.
    Sum,
}

impl Normalization {
    pub fn name(self) -> &'static str {
        match self {
            Normalization::MinMax => "min-max",
            Normalization::Sum => "sum",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Normalization::MinMax, Normalization::Sum]
            .into_iter()
            .find(|n| n.name() == s)
    }

    fn apply(self, s: &ScoreVector) -> ScoreVector {
        match self {
            Normalization::MinMax => s.min_max_normalized(),
            Normalization::Sum => s.sum_normalized(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FaultSeries {
    pub method: FaultMethod,
    /// Trial mean of `I_s` at each spurious-edge count.
    pub i_s_mean: Vec<f64>,
    /// Sample standard deviation over trials (zero for a single trial).
    pub i_s_std: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FaultToleranceResult {
    pub spurious_counts: Vec<usize>,
    pub series: Vec<FaultSeries>,
    pub normalization: Normalization,
}

/// `sum_i |a_i - b_i|`.
pub fn score_disagreement(a: &ScoreVector, b: &ScoreVector) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()).sum()
}

/// For each count and trial, adds that many uniformly random edges, rescores
/// the noisy graph and measures `I_s = sum_i |S'_i - S_i|` between the
/// normalized clean and noisy scores.
///
/// Trial `t` uses the noise seed `trial_seed(base_seed, t)` for every count
/// and every method, so all methods see the same noisy graphs.
pub fn run_fault_tolerance(
    g: &DirectedGraph,
    methods: &[FaultMethod],
    spurious_counts: &[usize],
    trials: usize,
    base_seed: u64,
    alpha: f64,
    normalization: Normalization,
) -> Result<FaultToleranceResult> {
    if trials == 0 {
        return Err(param("trials must be at least 1"));
    }
    let clean: Vec<ScoreVector> = methods
        .iter()
        .map(|m| Ok(normalization.apply(&m.scores(g, alpha)?)))
        .collect::<Result<_>>()?;

    let jobs: Vec<(usize, usize)> = (0..spurious_counts.len())
        .flat_map(|c| (0..trials).map(move |t| (c, t)))
        .collect();
    // values[c * trials + t][m]
    let values: Vec<Vec<f64>> = jobs
        .par_iter()
        .map(|&(c, t)| {
            let noisy = g.add_spurious_edges(spurious_counts[c], trial_seed(base_seed, t))?;
            methods
                .iter()
                .zip(&clean)
                .map(|(m, s)| {
                    let scores = normalization.apply(&m.scores(&noisy, alpha)?);
                    Ok(score_disagreement(&scores, s))
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;

    let series = methods
        .iter()
        .enumerate()
        .map(|(mi, &method)| {
            let (mut means, mut stds) = (Vec::new(), Vec::new());
            for c in 0..spurious_counts.len() {
                let xs: Vec<f64> = (0..trials).map(|t| values[c * trials + t][mi]).collect();
                let mean = xs.iter().sum::<f64>() / trials as f64;
                let std = if trials > 1 {
                    (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (trials - 1) as f64)
                        .sqrt()
                } else {
                    0.0
                };
                means.push(mean);
                stds.push(std);
            }
            FaultSeries {
                method,
                i_s_mean: means,
                i_s_std: stds,
            }
        })
        .collect();

    Ok(FaultToleranceResult {
        spurious_counts: spurious_counts.to_vec(),
        series,
        normalization,
    })
}
