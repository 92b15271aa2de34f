use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{trial_seed, DegrootVariant, ExperimentSpec, InitMode, Method, Model};
use crate::centrality::{
    baseline, degree_centrality, degree_imbalance, global_centrality, two_hop_centrality,
    BaselineParams, BetweennessParams, GlobalCentralityConfig, DEFAULT_FLOOR,
};
use crate::error::Result;
use crate::graph::DirectedGraph;
use crate::miner::{mine_top_k, rank_by_score, MinerConfig};
use crate::opinion::{
    run_to_convergence, DegrootWeights, Dynamics, OpinionState, ProposedModelWeights,
};

/// Stubbornness used when a study runs the Friedkin–Johnsen model.
const FJ_STUBBORNNESS: f64 = 0.5;
/// Discount on two-hop effective degrees for the two-hop DeGroot variant.
const TWO_HOP_DISCOUNT: f64 = 0.5;

#[derive(Debug, Clone, Serialize)]
pub struct TrialResult {
    pub method: Method,
    pub trial_index: usize,
    pub trajectory: Vec<(usize, f64)>,
    pub converged: bool,
    pub final_mean: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MethodOutcome {
    pub method: Method,
    pub leaders: Vec<usize>,
    pub trials: Vec<TrialResult>,
    /// Pointwise mean over trials; shorter runs are padded with their final value.
    pub mean_trajectory: Vec<(usize, f64)>,
    pub final_mean: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonResult {
    pub leader_count: usize,
    pub outcomes: Vec<MethodOutcome>,
}

impl ComparisonResult {
    pub fn outcome(&self, method: Method) -> Option<&MethodOutcome> {
        self.outcomes.iter().find(|o| o.method == method)
    }
}

/// `ceil(fraction * n)`, at least one and at most `n`.
///
/// A relative slack of a few ulps keeps products such as `0.07 * 100` from
/// rounding up past the intended integer.
pub fn leader_count(fraction: f64, n: usize) -> usize {
    let exact = fraction * n as f64;
    let k = (exact - exact * 4.0 * f64::EPSILON).ceil() as usize;
    k.clamp(1, n.max(1))
}

pub fn select_leaders(
    g: &DirectedGraph,
    method: Method,
    k: usize,
    alpha: f64,
    seed: u64,
) -> Result<Vec<usize>> {
    match method.baseline() {
        None => Ok(mine_top_k(g, &MinerConfig::new(k, alpha))?.nodes()),
        Some(kind) => {
            let params = BaselineParams {
                betweenness: BetweennessParams {
                    seed: Some(seed),
                    ..Default::default()
                },
                ..Default::default()
            };
            rank_by_score(&baseline(g, kind, &params)?, k)
        }
    }
}

enum ModelWeights {
    DeGroot(DegrootWeights),
    FriedkinJohnsen(DegrootWeights, Vec<f64>),
    Proposed(ProposedModelWeights),
}

impl ModelWeights {
    fn build(g: &DirectedGraph, spec: &ExperimentSpec) -> Result<Self> {
        let trust_scores = || -> Result<_> {
            Ok(match spec.degroot_variant {
                DegrootVariant::Global => {
                    let cfg = GlobalCentralityConfig {
                        alpha: spec.alpha,
                        ..Default::default()
                    };
                    global_centrality(g, &cfg)?
                }
                DegrootVariant::TwoHop => two_hop_centrality(g, TWO_HOP_DISCOUNT, DEFAULT_FLOOR),
                DegrootVariant::DegreeImbalance => degree_imbalance(g, DEFAULT_FLOOR),
            })
        };
        Ok(match spec.model {
            Model::DeGroot => ModelWeights::DeGroot(DegrootWeights::build(g, &trust_scores()?)?),
            Model::FriedkinJohnsen => ModelWeights::FriedkinJohnsen(
                DegrootWeights::build(g, &trust_scores()?)?,
                vec![FJ_STUBBORNNESS; g.node_count()],
            ),
            Model::Proposed => ModelWeights::Proposed(ProposedModelWeights::build(
                g,
                &degree_centrality(g, DEFAULT_FLOOR),
            )?),
        })
    }

    fn dynamics(&self) -> Dynamics<'_> {
        match self {
            ModelWeights::DeGroot(t) => Dynamics::DeGroot(t),
            ModelWeights::FriedkinJohnsen(t, g) => Dynamics::FriedkinJohnsen {
                trust: t,
                stubbornness: g,
            },
            ModelWeights::Proposed(p) => Dynamics::Proposed(p),
        }
    }
}

fn initial_opinions(mode: InitMode, n: usize, seed: u64) -> Vec<f64> {
    match mode {
        InitMode::Zero => vec![0.0; n],
        InitMode::Half => vec![0.5; n],
        InitMode::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n).map(|_| rng.random::<f64>()).collect()
        }
    }
}

fn run_trial(
    weights: &ModelWeights,
    spec: &ExperimentSpec,
    method: Method,
    leaders: &[usize],
    n: usize,
    trial_index: usize,
) -> Result<TrialResult> {
    let init = initial_opinions(spec.init_mode, n, trial_seed(spec.base_seed, trial_index));
    let state = OpinionState::new(init, leaders, spec.clamp_leaders)?;
    let (traj, _) = run_to_convergence(weights.dynamics(), state, spec.tolerance, spec.max_steps)?;
    Ok(TrialResult {
        method,
        trial_index,
        final_mean: traj.final_mean(),
        converged: traj.converged,
        trajectory: traj.points,
    })
}

fn average_trajectories(trials: &[TrialResult]) -> Vec<(usize, f64)> {
    let len = trials.iter().map(|t| t.trajectory.len()).max().unwrap_or(0);
    (0..len)
        .map(|s| {
            let total: f64 = trials
                .iter()
                .map(|t| {
                    t.trajectory
                        .get(s)
                        .unwrap_or(t.trajectory.last().expect("non-empty"))
                        .1
                })
                .sum();
            (s, total / trials.len() as f64)
        })
        .collect()
}

/// Runs every method of `spec` on `g`.
pub fn run_comparison(g: &DirectedGraph, spec: &ExperimentSpec) -> Result<ComparisonResult> {
    spec.validate()?;
    let n = g.node_count();
    let k = leader_count(spec.leader_fraction, n);
    let weights = ModelWeights::build(g, spec)?;

    let mut outcomes = Vec::with_capacity(spec.methods.len());
    for &method in &spec.methods {
        let leaders = select_leaders(g, method, k, spec.alpha, spec.base_seed)?;
        let trials: Vec<TrialResult> = if spec.init_mode == InitMode::Random {
            (0..spec.trials)
                .into_par_iter()
                .map(|t| run_trial(&weights, spec, method, &leaders, n, t))
                .collect::<Result<_>>()?
        } else {
            // Deterministic initial opinions: every trial is the same run.
            let first = run_trial(&weights, spec, method, &leaders, n, 0)?;
            (0..spec.trials)
                .map(|t| TrialResult {
                    trial_index: t,
                    ..first.clone()
                })
                .collect()
        };
        let mean_trajectory = average_trajectories(&trials);
        let final_mean = mean_trajectory.last().map_or(0.0, |p| p.1);
        outcomes.push(MethodOutcome {
            method,
            leaders,
            trials,
            mean_trajectory,
            final_mean,
        });
    }
    Ok(ComparisonResult {
        leader_count: k,
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::preferential_attachment;

    #[test]
    fn leader_count_rounding() {
        assert_eq!(leader_count(0.1, 2000), 200);
        assert_eq!(leader_count(0.07, 100), 7);
        assert_eq!(leader_count(0.101, 100), 11);
        assert_eq!(leader_count(1.0, 37), 37);
        assert_eq!(leader_count(1e-9, 10), 1);
    }

    #[test]
    fn all_leaders_gives_constant_one() {
        let g = preferential_attachment(60, 3, 2).unwrap();
        let mut spec = ExperimentSpec::new("unused", 1);
        spec.leader_fraction = 1.0;
        spec.trials = 2;
        for model in [Model::Proposed, Model::DeGroot, Model::FriedkinJohnsen] {
            spec.model = model;
            let res = run_comparison(&g, &spec).unwrap();
            for o in &res.outcomes {
                assert_eq!(o.mean_trajectory, vec![(0, 1.0)], "{:?}", o.method);
            }
        }
    }

    #[test]
    fn padding_uses_final_values() {
        let mk = |traj: Vec<(usize, f64)>| TrialResult {
            method: Method::OutDegree,
            trial_index: 0,
            final_mean: traj.last().unwrap().1,
            converged: true,
            trajectory: traj,
        };
        let avg = average_trajectories(&[
            mk(vec![(0, 0.0), (1, 0.5)]),
            mk(vec![(0, 0.0), (1, 0.25), (2, 0.75)]),
        ]);
        assert_eq!(avg, vec![(0, 0.0), (1, 0.375), (2, 0.625)]);
    }

    #[test]
    fn random_trials_are_reproducible() {
        let g = preferential_attachment(80, 2, 4).unwrap();
        let mut spec = ExperimentSpec::new("unused", 11);
        spec.init_mode = InitMode::Random;
        spec.trials = 3;
        spec.methods = vec![Method::ProposedMiner, Method::PageRank];
        let a = run_comparison(&g, &spec).unwrap();
        let b = run_comparison(&g, &spec).unwrap();
        for (x, y) in a.outcomes.iter().zip(&b.outcomes) {
            assert_eq!(x.mean_trajectory, y.mean_trajectory);
        }
        let t = &a.outcomes[0].trials;
        assert_ne!(t[0].trajectory[0], t[1].trajectory[0]);
    }
}
