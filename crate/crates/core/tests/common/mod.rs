//! Independent oracles for the integration tests.
//!
//! Everything here works from a dense adjacency matrix and a direct LU solve,
//! sharing no code path with the library's sparse iterations.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use opinion_leaders::DirectedGraph;

pub fn adjacency(g: &DirectedGraph) -> DMatrix<f64> {
    let n = g.node_count();
    let mut a = DMatrix::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u as usize, v as usize)] = 1.0;
    }
    a
}

/// Row-normalized adjacency (`out = true`) or row-normalized transpose.
pub fn dense_weights(g: &DirectedGraph, out: bool) -> DMatrix<f64> {
    let a = adjacency(g);
    let mut w = if out { a } else { a.transpose() };
    for mut row in w.row_iter_mut() {
        let s: f64 = row.iter().sum();
        if s > 0.0 {
            row /= s;
        }
    }
    w
}

/// Effective degree from the dense matrix: row sums minus column sums.
pub fn dense_effective_degree(g: &DirectedGraph) -> Vec<f64> {
    let a = adjacency(g);
    (0..g.node_count())
        .map(|i| a.row(i).sum() - a.column(i).sum())
        .collect()
}

/// Degree centrality as `(I + A) EDeg`, shifted and floored.
pub fn dense_degree_centrality(g: &DirectedGraph, discount: f64, floor: f64) -> Vec<f64> {
    let a = adjacency(g);
    let n = g.node_count();
    let e = DVector::from_vec(dense_effective_degree(g));
    let raw = (DMatrix::identity(n, n) + &a + discount * &a * &a) * e;
    let lo = raw.min();
    raw.iter()
        .map(|&v| if v - lo == 0.0 { floor } else { v - lo })
        .collect()
}

/// Solves `(I - (1 - alpha) W) x = alpha * base`.
pub fn dense_blend(g: &DirectedGraph, base: &[f64], alpha: f64, out: bool) -> Vec<f64> {
    let n = g.node_count();
    let w = dense_weights(g, out);
    let m = DMatrix::identity(n, n) - (1.0 - alpha) * w;
    let rhs = DVector::from_iterator(n, base.iter().map(|b| alpha * b));
    m.lu()
        .solve(&rhs)
        .expect("non-singular")
        .iter()
        .copied()
        .collect()
}

/// Fixed point of the centrality-weighted opinion model:
/// `x_i = d_i x0_i + sum_k w_ik x_k` for free nodes, `x_i = 1` for clamped.
pub fn dense_proposed(g: &DirectedGraph, c: &[f64], x0: &[f64], clamped: &[bool]) -> Vec<f64> {
    let n = g.node_count();
    let a = adjacency(g);
    let mut m = DMatrix::identity(n, n);
    let mut rhs = DVector::zeros(n);
    for i in 0..n {
        if clamped[i] {
            rhs[i] = 1.0;
            continue;
        }
        let total: f64 = c[i]
            + (0..n)
                .filter(|&k| a[(k, i)] == 1.0)
                .map(|k| c[k])
                .sum::<f64>();
        for k in 0..n {
            if a[(k, i)] == 1.0 {
                m[(i, k)] -= c[k] / total;
            }
        }
        rhs[i] = c[i] / total * x0[i];
    }
    m.lu()
        .solve(&rhs)
        .expect("non-singular")
        .iter()
        .copied()
        .collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Top-k by descending value with ascending-id ties, by full sort.
pub fn top_k_by_sort(values: &[f64], k: usize) -> Vec<usize> {
    let mut ids: Vec<usize> = (0..values.len()).collect();
    ids.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap().then(a.cmp(&b)));
    ids.truncate(k);
    ids
}
