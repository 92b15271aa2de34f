mod common;

use common::{dense_proposed, max_abs_diff};
use opinion_leaders::centrality::{
    degree_centrality, global_centrality, GlobalCentralityConfig, DEFAULT_FLOOR,
};
use opinion_leaders::experiment::random_digraph;
use opinion_leaders::opinion::*;
use opinion_leaders::DirectedGraph;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn trust(g: &DirectedGraph) -> DegrootWeights {
    let c = global_centrality(g, &GlobalCentralityConfig::default()).unwrap();
    DegrootWeights::build(g, &c).unwrap()
}

fn proposed(g: &DirectedGraph) -> ProposedModelWeights {
    ProposedModelWeights::build(g, &degree_centrality(g, DEFAULT_FLOOR)).unwrap()
}

fn random_opinions(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random()).collect()
}

#[test]
fn weight_rows_are_stochastic() {
    for seed in 0..30 {
        let g = random_digraph(30, 0.1, seed).unwrap();
        let t = trust(&g);
        for i in 0..30 {
            let (_, vals) = t.matrix().row(i);
            assert!(vals.iter().all(|v| (0.0..=1.0).contains(v)));
            assert!((t.matrix().row_sum(i) - 1.0).abs() <= 1e-12);
        }
        let p = proposed(&g);
        for i in 0..30 {
            let d = p.self_weight(i);
            let (_, vals) = p.influence().row(i);
            assert!(d > 0.0 && vals.iter().all(|&v| v >= 0.0));
            assert!((d + p.influence().row_sum(i) - 1.0).abs() <= 1e-12);
        }
    }
}

#[test]
fn jacobi_matches_direct_solve_with_leaders() {
    for seed in 0..30 {
        let g = random_digraph(30, 0.1, 100 + seed).unwrap();
        let c = degree_centrality(&g, DEFAULT_FLOOR);
        let x0 = random_opinions(30, seed);
        let leaders = [0, 7, 19];
        let state = OpinionState::new(x0, &leaders, true).unwrap();
        let mut clamped = vec![false; 30];
        leaders.iter().for_each(|&l| clamped[l] = true);
        let want = dense_proposed(&g, &c, &state.initial_opinions, &clamped);
        let got = proposed_model_solve(&proposed(&g), state, 1e-14, 1_000_000).unwrap();
        assert!(max_abs_diff(&got.opinions, &want) < 1e-8);
    }
}

/// Row sums of the weights differ from 1 by a few ulps, so a node that should
/// stay at 0.5 can read one ulp lower.
const ULP_SLACK: f64 = 4.0 * f64::EPSILON;

#[test]
fn clamped_runs_from_half_rise_monotonically() {
    for seed in 0..50 {
        let g = random_digraph(40, 0.06, 200 + seed).unwrap();
        let leaders = [1, 2, 3, 4];
        let (t, p) = (trust(&g), proposed(&g));
        for dynamics in [Dynamics::DeGroot(&t), Dynamics::Proposed(&p)] {
            let mut state = OpinionState::new(vec![0.5; 40], &leaders, true).unwrap();
            for _ in 0..200 {
                let next = dynamics.step(&state).unwrap();
                let dip = next
                    .opinions
                    .iter()
                    .zip(&state.opinions)
                    .map(|(a, b)| b - a)
                    .fold(0.0, f64::max);
                assert!(dip <= ULP_SLACK, "dip {dip:e}");
                state = next;
            }
        }
    }
}

#[test]
fn strongly_connected_degroot_reaches_consensus() {
    let mut checked = 0;
    for seed in 0..20 {
        let g = random_digraph(20, 0.3, 300 + seed).unwrap();
        if (0..20).any(|v| g.in_degree(v) == 0 || g.out_degree(v) == 0) {
            continue;
        }
        let state = OpinionState::new(random_opinions(20, seed), &[], false).unwrap();
        let lo = state.opinions.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = state
            .opinions
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        let (traj, end) =
            run_to_convergence(Dynamics::DeGroot(&trust(&g)), state, 1e-13, 100_000).unwrap();
        assert!(traj.converged);
        let spread = end
            .opinions
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
            - end.opinions.iter().copied().fold(f64::INFINITY, f64::min);
        assert!(spread < 1e-9, "spread {spread}");
        assert!(end.opinions[0] >= lo && end.opinions[0] <= hi);
        checked += 1;
    }
    assert!(checked >= 15);
}

#[test]
fn nearly_flexible_friedkin_johnsen_tracks_degroot() {
    for seed in 0..20 {
        let g = random_digraph(30, 0.1, 400 + seed).unwrap();
        let t = trust(&g);
        let stubborn = vec![1e-12; 30];
        let mut a = OpinionState::new(random_opinions(30, seed), &[3], true).unwrap();
        let mut b = a.clone();
        for _ in 0..100 {
            a = degroot_step(&a, &t).unwrap();
            b = friedkin_johnsen_step(&b, &t, &stubborn).unwrap();
            assert!(max_abs_diff(&a.opinions, &b.opinions) <= 1e-9);
        }
    }
}

#[test]
fn very_stubborn_agents_barely_move() {
    let g = random_digraph(30, 0.1, 9).unwrap();
    let eps = 1e-6;
    let state = OpinionState::new(random_opinions(30, 9), &[], false).unwrap();
    let next = friedkin_johnsen_step(&state, &trust(&g), &vec![1.0 - eps; 30]).unwrap();
    assert!(max_abs_diff(&next.opinions, &state.opinions) <= eps * (1.0 + 1e-9));
}

#[test]
fn trajectory_steps_count_up_from_zero() {
    let g = random_digraph(25, 0.1, 4).unwrap();
    let state = OpinionState::new(vec![0.0; 25], &[0, 1], true).unwrap();
    let (traj, end) =
        run_to_convergence(Dynamics::Proposed(&proposed(&g)), state, 1e-9, 10_000).unwrap();
    assert!(traj.converged && traj.last_delta <= 1e-9);
    assert!(traj.points.iter().enumerate().all(|(i, p)| p.0 == i));
    assert_eq!(end.step, traj.points.len() - 1);
    assert_eq!(traj.final_mean(), end.mean());
}

proptest! {
    #[test]
    fn opinions_stay_in_unit_interval(
        seed in any::<u64>(),
        p in 0.0f64..0.3,
        leaders in prop::collection::vec(0usize..25, 0..5),
        clamp in any::<bool>(),
    ) {
        let g = random_digraph(25, p, seed).unwrap();
        let (t, w) = (trust(&g), proposed(&g));
        let stubborn = vec![0.5; 25];
        let models = [
            Dynamics::DeGroot(&t),
            Dynamics::FriedkinJohnsen { trust: &t, stubbornness: &stubborn },
            Dynamics::Proposed(&w),
        ];
        for dynamics in models {
            let mut state = OpinionState::new(random_opinions(25, seed), &leaders, clamp).unwrap();
            for _ in 0..60 {
                state = dynamics.step(&state).unwrap();
                prop_assert!(state.opinions.iter().all(|x| (0.0..=1.0).contains(x)));
                if clamp {
                    prop_assert!(leaders.iter().all(|&l| state.opinions[l] == 1.0));
                }
            }
        }
    }

    #[test]
    fn unclamped_proposed_model_stays_within_initial_range(seed in any::<u64>(), p in 0.0f64..0.3) {
        let g = random_digraph(25, p, seed).unwrap();
        let x0 = random_opinions(25, seed ^ 1);
        let lo = x0.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = x0.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let state = OpinionState::new(x0, &[], false).unwrap();
        let (traj, _) = run_to_convergence(Dynamics::Proposed(&proposed(&g)), state, 1e-9, 100_000).unwrap();
        prop_assert!(traj.final_mean() >= lo && traj.final_mean() <= hi);
    }
}
