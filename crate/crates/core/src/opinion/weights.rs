use crate::error::{param, Result};
use crate::graph::DirectedGraph;
use crate::sparse::SparseRows;

fn check_positive(g: &DirectedGraph, scores: &[f64]) -> Result<()> {
    if scores.len() != g.node_count() {
        return Err(param(format!(
            "{} scores for {} nodes",
            scores.len(),
            g.node_count()
        )));
    }
    match scores.iter().position(|&s| !(s > 0.0 && s.is_finite())) {
        Some(i) => Err(param(format!(
            "score of node {i} is not positive: {}",
            scores[i]
        ))),
        None => Ok(()),
    }
}

/// Row-stochastic trust matrix over each node and the nodes it follows.
///
/// `T[i][j] = s_j / (s_i + sum_{k -> i} s_k)` for `j = i` or `j -> i`.
#[derive(Debug, Clone)]
pub struct DegrootWeights {
    trust: SparseRows,
}

impl DegrootWeights {
    pub fn build(g: &DirectedGraph, node_scores: &[f64]) -> Result<Self> {
        check_positive(g, node_scores)?;
        let trust = SparseRows::from_rows((0..g.node_count()).map(|i| {
            let nb = g.in_neighbors(i);
            let total = node_scores[i] + nb.iter().map(|&j| node_scores[j as usize]).sum::<f64>();
            // Keep columns sorted with the self entry in place.
            let mut row: Vec<(u32, f64)> = nb
                .iter()
                .map(|&j| (j, node_scores[j as usize] / total))
                .collect();
            let at = row.partition_point(|&(j, _)| (j as usize) < i);
            row.insert(at, (i as u32, node_scores[i] / total));
            row
        }));
        Ok(Self { trust })
    }

    /// Wraps an explicit row-stochastic matrix.
    pub fn from_matrix(trust: SparseRows) -> Result<Self> {
        for i in 0..trust.rows() {
            let (_, vals) = trust.row(i);
            if vals.iter().any(|&v| !(0.0..=1.0).contains(&v))
                || (trust.row_sum(i) - 1.0).abs() > 1e-12
            {
                return Err(param(format!("trust row {i} is not stochastic")));
            }
        }
        Ok(Self { trust })
    }

    pub fn matrix(&self) -> &SparseRows {
        &self.trust
    }

    pub fn len(&self) -> usize {
        self.trust.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.trust.rows() == 0
    }
}

/// Self-coherence weights `d` and neighbor influence weights `w` of the
/// centrality-weighted model:
///
/// `d_i = C_i / (C_i + sum_{k -> i} C_k)`, `w_ik = C_k / (C_i + sum_{k -> i} C_k)`.
#[derive(Debug, Clone)]
pub struct ProposedModelWeights {
    self_weight: Vec<f64>,
    influence: SparseRows,
}

impl ProposedModelWeights {
    pub fn build(g: &DirectedGraph, centrality: &[f64]) -> Result<Self> {
        check_positive(g, centrality)?;
        let n = g.node_count();
        let totals: Vec<f64> = (0..n)
            .map(|i| {
                centrality[i]
                    + g.in_neighbors(i)
                        .iter()
                        .map(|&k| centrality[k as usize])
                        .sum::<f64>()
            })
            .collect();
        let self_weight = (0..n).map(|i| centrality[i] / totals[i]).collect();
        let influence = SparseRows::from_rows((0..n).map(|i| {
            let total = totals[i];
            g.in_neighbors(i)
                .iter()
                .map(move |&k| (k, centrality[k as usize] / total))
        }));
        Ok(Self {
            self_weight,
            influence,
        })
    }

    pub fn self_weight(&self, i: usize) -> f64 {
        self.self_weight[i]
    }

    pub fn self_weights(&self) -> &[f64] {
        &self.self_weight
    }

    pub fn influence(&self) -> &SparseRows {
        &self.influence
    }

    pub fn len(&self) -> usize {
        self.self_weight.len()
    }

    pub fn is_empty(&self) -> bool {
        self.self_weight.is_empty()
    }
}
