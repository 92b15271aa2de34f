use serde::{Deserialize, Serialize};

use super::{degree_centrality, Orientation, RowStochasticWeights, ScoreVector, DEFAULT_FLOOR};
use crate::error::{param, Error, Result};
use crate::graph::DirectedGraph;
use crate::sparse::max_abs_diff;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GlobalCentralityConfig {
    /// Weight of the local score; `1 - alpha` goes to the neighbors' scores.
    pub alpha: f64,
    pub aggregation_direction: Orientation,
    pub tolerance: f64,
    pub max_iterations: usize,
    pub zero_centrality_floor: f64,
}

impl Default for GlobalCentralityConfig {
    fn default() -> Self {
        Self {
            alpha: 0.8,
            aggregation_direction: Orientation::OutNeighbors,
            tolerance: 1e-12,
            max_iterations: 10_000,
            zero_centrality_floor: DEFAULT_FLOOR,
        }
    }
}

impl GlobalCentralityConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(param(format!(
                "alpha must lie in (0, 1], got {}",
                self.alpha
            )));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(param(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// Jacobi iteration of `x <- alpha * base + (1 - alpha) * W x`.
///
/// Starts from `x = base`. Dangling rows of `W` contribute nothing, so a
/// dangling node settles at `alpha * base`. Every sweep is a contraction with
/// factor `1 - alpha` in the infinity norm.
#[derive(Debug, Clone)]
pub struct BlendIteration<'a> {
    weights: &'a RowStochasticWeights,
    base: &'a [f64],
    alpha: f64,
    current: Vec<f64>,
    next: Vec<f64>,
    iterations: usize,
    last_step: f64,
}

impl<'a> BlendIteration<'a> {
    pub fn new(weights: &'a RowStochasticWeights, base: &'a [f64], alpha: f64) -> Self {
        assert_eq!(
            weights.len(),
            base.len(),
            "weights and base differ in length"
        );
        Self {
            weights,
            base,
            alpha,
            current: base.to_vec(),
            next: vec![0.0; base.len()],
            iterations: 0,
            last_step: f64::INFINITY,
        }
    }

    /// Performs one sweep and returns the infinity-norm of the change.
    pub fn step(&mut self) -> f64 {
        let (alpha, base) = (self.alpha, self.base);
        let damp = 1.0 - alpha;
        self.weights
            .matrix()
            .map_product(&self.current, &mut self.next, |i, s| {
                alpha * base[i] + damp * s
            });
        self.last_step = max_abs_diff(&self.current, &self.next);
        std::mem::swap(&mut self.current, &mut self.next);
        self.iterations += 1;
        self.last_step
    }

    /// Sweeps until a step changes no entry by more than `tolerance`.
    pub fn run(&mut self, tolerance: f64, max_iterations: usize) -> Result<()> {
        while self.iterations < max_iterations {
            if self.step() <= tolerance {
                return Ok(());
            }
        }
        Err(Error::IterationLimit {
            iterations: self.iterations,
            residual: self.last_step,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.current
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn into_values(self) -> ScoreVector {
        ScoreVector::new(self.current)
    }
}

/// Global centrality: the fixed point of
/// `Cg = alpha * C + (1 - alpha) * W Cg` with `C` the degree centrality.
pub fn global_centrality(g: &DirectedGraph, cfg: &GlobalCentralityConfig) -> Result<ScoreVector> {
    cfg.validate()?;
    let base = degree_centrality(g, cfg.zero_centrality_floor);
    let weights = RowStochasticWeights::build(g, cfg.aggregation_direction);
    let mut it = BlendIteration::new(&weights, &base, cfg.alpha);
    it.run(cfg.tolerance, cfg.max_iterations)?;
    Ok(it.into_values())
}
