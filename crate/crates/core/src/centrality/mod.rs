//! Node centralities.
//!
//! The local measures here are built from the effective degree
//! `out_degree - in_degree`: a node scores high when it has many followers,
//! follows few nodes itself, and its followers do the same. Every local
//! measure is shifted so its minimum is zero and then floored, which keeps all
//! scores strictly positive for the weighting schemes downstream.

mod baseline;
mod global;
mod weights;

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::graph::DirectedGraph;

pub use baseline::{
    baseline, betweenness, closeness, eigenvector, out_degree, pagerank, BaselineKind,
    BaselineParams, BetweennessParams, EigenvectorParams, PageRankParams,
};
pub use global::{global_centrality, BlendIteration, GlobalCentralityConfig};
pub use weights::{Orientation, RowStochasticWeights};

/// Value substituted for exact zeros after the min-shift.
pub const DEFAULT_FLOOR: f64 = 0.01;

/// Per-node real scores indexed by dense node id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScoreVector(Vec<f64>);

impl ScoreVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `max - min`, zero for an empty vector.
    pub fn range(&self) -> f64 {
        if self.0.is_empty() {
            0.0
        } else {
            self.max() - self.min()
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self(self.0.iter().map(|v| v * factor).collect())
    }

    /// Affine map onto `[0, 1]`; a constant vector maps to all zeros.
    pub fn min_max_normalized(&self) -> Self {
        let (lo, range) = (self.min(), self.range());
        if range > 0.0 {
            Self(self.0.iter().map(|v| (v - lo) / range).collect())
        } else {
            Self(vec![0.0; self.0.len()])
        }
    }

    /// Divides by the total so the entries sum to 1; a zero-sum vector is
    /// returned unchanged.
    pub fn sum_normalized(&self) -> Self {
        let total: f64 = self.0.iter().sum();
        if total != 0.0 {
            Self(self.0.iter().map(|v| v / total).collect())
        } else {
            self.clone()
        }
    }
}

impl Deref for ScoreVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for ScoreVector {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// `out_degree(i) - in_degree(i)` for every node.
pub fn effective_degree(g: &DirectedGraph) -> ScoreVector {
    ScoreVector(
        (0..g.node_count())
            .map(|i| g.out_degree(i) as f64 - g.in_degree(i) as f64)
            .collect(),
    )
}

/// Subtracts the minimum, then replaces exact zeros with `floor`.
pub fn shift_and_floor(mut raw: Vec<f64>, floor: f64) -> ScoreVector {
    let lo = raw.iter().copied().fold(f64::INFINITY, f64::min);
    for v in raw.iter_mut() {
        *v -= lo;
        if *v == 0.0 {
            *v = floor;
        }
    }
    ScoreVector(raw)
}

/// Effective degree of a node plus that of each node it points to, shifted
/// and floored.
pub fn degree_centrality(g: &DirectedGraph, floor: f64) -> ScoreVector {
    two_hop_centrality(g, 0.0, floor)
}

/// Degree centrality extended with a discounted sum over the endpoints of all
/// two-step out-walks (counted with multiplicity).
pub fn two_hop_centrality(g: &DirectedGraph, discount: f64, floor: f64) -> ScoreVector {
    let edeg = effective_degree(g);
    // Sum of EDeg over each node's out-neighbors.
    let one_hop: Vec<f64> = (0..g.node_count())
        .map(|i| g.out_neighbors(i).iter().map(|&j| edeg[j as usize]).sum())
        .collect();
    let raw = (0..g.node_count())
        .map(|i| {
            let mut c = edeg[i] + one_hop[i];
            if discount != 0.0 {
                let two: f64 = g
                    .out_neighbors(i)
                    .iter()
                    .map(|&j| one_hop[j as usize])
                    .sum();
                c += discount * two;
            }
            c
        })
        .collect();
    shift_and_floor(raw, floor)
}

/// `|out_degree - in_degree|`, shifted and floored; neighbors are ignored.
pub fn degree_imbalance(g: &DirectedGraph, floor: f64) -> ScoreVector {
    let raw = effective_degree(g).0.into_iter().map(f64::abs).collect();
    shift_and_floor(raw, floor)
}
