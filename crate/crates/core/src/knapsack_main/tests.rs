use rand::Rng;

use super::*;
use crate::knapsack_base::{bellman_opt, bellman_profit_node, bellman_weight_node, Curve};
use crate::types::Ext;

fn random_balanced(rng: &mut impl Rng, n: usize, w_hi: i64, p_hi: i64) -> KnapsackInstance {
    let pairs: Vec<(i64, i64)> = (0..n).map(|_| (rng.random_range(1..=w_hi), rng.random_range(1..=p_hi))).collect();
    let total: i64 = pairs.iter().map(|p| p.0).sum();
    KnapsackInstance::from_pairs(&pairs, total / 2).unwrap()
}

fn truth(instance: &KnapsackInstance, sense: Sense, index: IntInterval, value: IntInterval) -> Vec<Ext> {
    let picks = picks_of(instance);
    let node = match sense {
        Sense::Max => bellman_profit_node(&picks, index.hi),
        Sense::Min => bellman_weight_node(&picks, index.hi),
    };
    let c: Curve = node.curve.restrict(index, value);
    (index.lo..=index.hi).map(|k| c.get(k)).collect()
}

fn check_window(instance: &KnapsackInstance, algo: Algo, seed: u64) -> Route {
    let reps = default_reps(instance.n());
    let out = solve_window(instance, algo, reps, &SeedCtx::new(seed)).unwrap();
    let want = truth(instance, out.tree.sense(), out.index_window, out.value_window);
    let got: Vec<Ext> = (out.index_window.lo..=out.index_window.hi).map(|k| out.seq.get(k)).collect();
    assert_eq!(got, want, "{algo} seed {seed}");
    let t = instance.capacity();
    assert_eq!(out.opt(t), Some(bellman_opt(instance)), "{algo} seed {seed}");
    for k in out.index_window.lo..=out.index_window.hi {
        let Some(v) = out.tree.curve.get(k).finite() else { continue };
        let sol = reconstruct_solution(instance, &out.tree, k).unwrap();
        match out.tree.sense() {
            Sense::Max => assert!(sol.total_weight <= k && sol.total_profit == v),
            Sense::Min => assert!(sol.total_profit >= k && sol.total_weight == v),
        }
    }
    out.route
}

#[test]
fn window_solvers_match_bellman() {
    let mut rng = SeedCtx::new(21).rng();
    let mut trees = 0;
    for round in 0..12u64 {
        let n = rng.random_range(12..=40);
        let inst = random_balanced(&mut rng, n, 60, 60);
        for algo in [Algo::TSqrtP, Algo::OptSqrtW, Algo::Cuberoot, Algo::CuberootSym] {
            if matches!(check_window(&inst, algo, round), Route::Tree { .. }) {
                trees += 1;
            }
        }
    }
    assert!(trees > 20);
}

#[test]
fn solve_matches_bellman_for_every_algo() {
    let mut rng = SeedCtx::new(8).rng();
    for round in 0..25u64 {
        let n = rng.random_range(1..=40);
        let pairs: Vec<(i64, i64)> =
            (0..n).map(|_| (rng.random_range(1..=50), rng.random_range(1..=50))).collect();
        let total: i64 = pairs.iter().map(|p| p.0).sum();
        let inst = KnapsackInstance::from_pairs(&pairs, rng.random_range(0..=total)).unwrap();
        let want = bellman_opt(&inst);
        for algo in Algo::ALL {
            let (opt, sol) = solve(&inst, algo, &SeedCtx::new(round)).unwrap();
            assert_eq!(opt, want, "{algo} round {round}");
            assert!(sol.is_consistent(&inst));
            assert!(sol.total_weight <= inst.capacity());
            assert_eq!(sol.total_profit, opt);
        }
    }
}

#[test]
fn trivial_and_empty_inputs() {
    let empty = KnapsackInstance::new(vec![], 5).unwrap();
    assert_eq!(solve(&empty, Algo::Auto, &SeedCtx::new(0)).unwrap().0, 0);
    let inst = KnapsackInstance::from_pairs(&[(2, 3), (3, 4)], 0).unwrap();
    assert_eq!(solve(&inst, Algo::TSqrtP, &SeedCtx::new(0)).unwrap().0, 0);
    let inst = KnapsackInstance::from_pairs(&[(2, 3), (3, 4)], 9).unwrap();
    let (opt, sol) = solve(&inst, Algo::CuberootSym, &SeedCtx::new(0)).unwrap();
    assert_eq!((opt, sol.indices), (7, vec![0, 1]));
    let one = KnapsackInstance::from_pairs(&[(4, 9)], 4).unwrap();
    let out = solve_balanced_tsqrtp(&one, &SeedCtx::new(0)).unwrap();
    assert_eq!(out.seq.get(4), Ext::Fin(9));
    assert_eq!(reconstruct_solution(&one, &out.tree, 4).unwrap().indices, vec![0]);
}

#[test]
fn algo_names_round_trip() {
    for a in Algo::ALL {
        assert_eq!(a.name().parse::<Algo>().unwrap(), a);
        assert_eq!(serde_json::to_string(&a).unwrap(), format!("\"{}\"", a.name()));
    }
    assert!("fast".parse::<Algo>().is_err());
}
