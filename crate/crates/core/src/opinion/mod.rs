//! Discrete-time opinion dynamics.
//!
//! Three linear update rules share one state type and one convergence loop:
//! DeGroot averaging `x(t+1) = T x(t)`, Friedkin–Johnsen anchoring
//! `x(t+1) = G x(0) + (I - G) T x(t)`, and the centrality-weighted model
//! `x_i(t) = d_i x_i(0) + sum_k w_ik x_k(t-1)`. Every update is a Jacobi sweep
//! over the previous vector. Leaders may be clamped at opinion 1.

mod weights;

use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::sparse::max_abs_diff;

pub use weights::{DegrootWeights, ProposedModelWeights};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OpinionState {
    pub opinions: Vec<f64>,
    pub initial_opinions: Vec<f64>,
    pub clamped: Vec<bool>,
    pub step: usize,
}

impl OpinionState {
    /// Leaders start at 1 (both current and retained initial opinion); when
    /// `clamp` is set they are held there at every step.
    pub fn new(mut initial: Vec<f64>, leaders: &[usize], clamp: bool) -> Result<Self> {
        if let Some(i) = initial.iter().position(|v| !(0.0..=1.0).contains(v)) {
            return Err(param(format!(
                "opinion of node {i} outside [0, 1]: {}",
                initial[i]
            )));
        }
        let n = initial.len();
        let mut clamped = vec![false; n];
        for &l in leaders {
            if l >= n {
                return Err(param(format!("leader {l} out of range for {n} nodes")));
            }
            initial[l] = 1.0;
            clamped[l] = clamp;
        }
        Ok(Self {
            opinions: initial.clone(),
            initial_opinions: initial,
            clamped,
            step: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.opinions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opinions.is_empty()
    }

    pub fn mean(&self) -> f64 {
        mean(&self.opinions)
    }

    fn apply_clamp(&self, x: &mut [f64]) {
        for (v, &c) in x.iter_mut().zip(&self.clamped) {
            if c {
                *v = 1.0;
            }
        }
    }
}

fn mean(x: &[f64]) -> f64 {
    if x.is_empty() {
        0.0
    } else {
        x.iter().sum::<f64>() / x.len() as f64
    }
}

/// An update rule together with its weights.
#[derive(Debug, Clone, Copy)]
pub enum Dynamics<'a> {
    DeGroot(&'a DegrootWeights),
    FriedkinJohnsen {
        trust: &'a DegrootWeights,
        stubbornness: &'a [f64],
    },
    Proposed(&'a ProposedModelWeights),
}

impl Dynamics<'_> {
    fn len(&self) -> usize {
        match self {
            Dynamics::DeGroot(t) | Dynamics::FriedkinJohnsen { trust: t, .. } => t.len(),
            Dynamics::Proposed(p) => p.len(),
        }
    }

    fn check(&self, state: &OpinionState) -> Result<()> {
        if self.len() != state.len() {
            return Err(param(format!(
                "weights cover {} nodes, state has {}",
                self.len(),
                state.len()
            )));
        }
        if let Dynamics::FriedkinJohnsen { stubbornness, .. } = self {
            if stubbornness.len() != state.len() {
                return Err(param("stubbornness vector length differs from node count"));
            }
            if let Some(i) = stubbornness.iter().position(|g| !(*g > 0.0 && *g < 1.0)) {
                return Err(param(format!("stubbornness of node {i} outside (0, 1)")));
            }
        }
        Ok(())
    }

    /// Writes the next opinion vector (before clamping) into `out`.
    fn apply(&self, state: &OpinionState, out: &mut [f64]) {
        let x = &state.opinions;
        match *self {
            Dynamics::DeGroot(t) => t.matrix().map_product(x, out, |_, s| s),
            Dynamics::FriedkinJohnsen {
                trust,
                stubbornness,
            } => {
                let x0 = &state.initial_opinions;
                trust.matrix().map_product(x, out, |i, s| {
                    let g = stubbornness[i];
                    g * x0[i] + (1.0 - g) * s
                })
            }
            Dynamics::Proposed(p) => {
                let (d, x0) = (p.self_weights(), &state.initial_opinions);
                p.influence().map_product(x, out, |i, s| d[i] * x0[i] + s)
            }
        }
    }

    /// Next opinions into `out`, kept in `[0, 1]` with clamped nodes at 1.
    fn update(&self, state: &OpinionState, out: &mut [f64]) {
        self.apply(state, out);
        // Convex combinations of values in [0, 1]; trims rounding overshoot.
        for v in out.iter_mut() {
            *v = v.clamp(0.0, 1.0);
        }
        state.apply_clamp(out);
    }

    /// One synchronous update; clamped nodes are reset to 1 afterwards.
    pub fn step(&self, state: &OpinionState) -> Result<OpinionState> {
        self.check(state)?;
        let mut next = state.clone();
        self.update(state, &mut next.opinions);
        next.step += 1;
        Ok(next)
    }
}

/// `x(t+1) = T x(t)`.
pub fn degroot_step(state: &OpinionState, trust: &DegrootWeights) -> Result<OpinionState> {
    Dynamics::DeGroot(trust).step(state)
}

/// `x(t+1) = G x(0) + (I - G) T x(t)` with `G = diag(stubbornness)`.
pub fn friedkin_johnsen_step(
    state: &OpinionState,
    trust: &DegrootWeights,
    stubbornness: &[f64],
) -> Result<OpinionState> {
    Dynamics::FriedkinJohnsen {
        trust,
        stubbornness,
    }
    .step(state)
}

/// `x_i(t) = d_i x_i(0) + sum_k w_ik x_k(t-1)`.
pub fn proposed_step(state: &OpinionState, weights: &ProposedModelWeights) -> Result<OpinionState> {
    Dynamics::Proposed(weights).step(state)
}

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    /// `(step, mean opinion)` starting at step 0.
    pub points: Vec<(usize, f64)>,
    pub converged: bool,
    /// Largest per-node change of the last update performed.
    pub last_delta: f64,
}

impl Trajectory {
    pub fn final_mean(&self) -> f64 {
        self.points.last().map_or(0.0, |p| p.1)
    }
}

/// Iterates `dynamics` until an update changes no opinion by more than
/// `tolerance`, recording the mean opinion after every step.
///
/// The returned state is the last one recorded: when an update is found to be
/// below tolerance the state it started from is already the fixed point.
/// Running out of iterations is reported through `converged = false`.
pub fn run_to_convergence(
    dynamics: Dynamics<'_>,
    mut state: OpinionState,
    tolerance: f64,
    max_iterations: usize,
) -> Result<(Trajectory, OpinionState)> {
    dynamics.check(&state)?;
    let mut buffer = state.opinions.clone();
    let mut points = vec![(state.step, state.mean())];
    let mut converged = false;
    let mut last_delta = f64::INFINITY;
    for _ in 0..max_iterations {
        dynamics.update(&state, &mut buffer);
        last_delta = max_abs_diff(&buffer, &state.opinions);
        if last_delta <= tolerance {
            converged = true;
            break;
        }
        std::mem::swap(&mut state.opinions, &mut buffer);
        state.step += 1;
        points.push((state.step, state.mean()));
    }
    Ok((
        Trajectory {
            points,
            converged,
            last_delta,
        },
        state,
    ))
}

/// Jacobi solve of the centrality-weighted model to `tolerance`.
pub fn proposed_model_solve(
    weights: &ProposedModelWeights,
    initial: OpinionState,
    tolerance: f64,
    max_iterations: usize,
) -> Result<OpinionState> {
    let (traj, state) = run_to_convergence(
        Dynamics::Proposed(weights),
        initial,
        tolerance,
        max_iterations,
    )?;
    if traj.converged {
        Ok(state)
    } else {
        Err(Error::IterationLimit {
            iterations: max_iterations,
            residual: traj.last_delta,
        })
    }
}
