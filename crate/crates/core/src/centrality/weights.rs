use serde::{Deserialize, Serialize};

use crate::graph::DirectedGraph;
use crate::sparse::SparseRows;

/// Which neighbor list a weight row spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// Row `i` spans the nodes `i` points to.
    #[default]
    OutNeighbors,
    /// Row `i` spans the nodes pointing to `i`.
    InNeighbors,
}

/// Adjacency rows normalized to sum to one; empty rows stay zero and are
/// flagged as dangling.
#[derive(Debug, Clone)]
pub struct RowStochasticWeights {
    matrix: SparseRows,
    dangling: Vec<bool>,
    orientation: Orientation,
}

impl RowStochasticWeights {
    pub fn build(g: &DirectedGraph, orientation: Orientation) -> Self {
        let n = g.node_count();
        let neighbors = |i: usize| match orientation {
            Orientation::OutNeighbors => g.out_neighbors(i),
            Orientation::InNeighbors => g.in_neighbors(i),
        };
        let matrix = SparseRows::from_rows((0..n).map(|i| {
            let nb = neighbors(i);
            let w = 1.0 / nb.len() as f64;
            nb.iter().map(move |&j| (j, w))
        }));
        let dangling = (0..n).map(|i| neighbors(i).is_empty()).collect();
        Self {
            matrix,
            dangling,
            orientation,
        }
    }

    pub fn matrix(&self) -> &SparseRows {
        &self.matrix
    }

    pub fn is_dangling(&self, i: usize) -> bool {
        self.dangling[i]
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn len(&self) -> usize {
        self.dangling.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dangling.is_empty()
    }
}
