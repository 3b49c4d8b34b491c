//! Window solvers for balanced instances and the `solve` front door.

mod plan;
mod tree;

use std::fmt;
use std::str::FromStr;

use crate::balancing::{balance_reduce, best_up_to, combine_balanced, default_reps, BalancedSubproblem};
use crate::error::{Error, Result};
use crate::knapsack_base::{bellman_profit_node, greedy_upper_bound, picks_of, Node, Pick, Sense};
use crate::types::{normalize, IntInterval, KnapsackInstance, MonotoneSeq, SeedCtx, Solution};

pub use plan::{ceil_log2, TreeLevelPlan};
pub use tree::{Leaf, Request, Route};

/// Ratio bound beyond which the public window solvers refuse an instance.
pub const IMBALANCE_BOUND: f64 = 64.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algo {
    Auto,
    Bellman,
    TSqrtP,
    OptSqrtW,
    Cuberoot,
    CuberootSym,
}

impl Algo {
    pub const ALL: [Algo; 6] = [Algo::Auto, Algo::Bellman, Algo::TSqrtP, Algo::OptSqrtW, Algo::Cuberoot, Algo::CuberootSym];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Auto => "auto",
            Algo::Bellman => "bellman",
            Algo::TSqrtP => "t_sqrt_p",
            Algo::OptSqrtW => "opt_sqrt_w",
            Algo::Cuberoot => "cuberoot",
            Algo::CuberootSym => "cuberoot_sym",
        }
    }

    fn sense(self) -> Sense {
        match self {
            Algo::OptSqrtW | Algo::CuberootSym => Sense::Min,
            _ => Sense::Max,
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

/// A solver window: index range, value range, the entries and their witnesses.
#[derive(Clone, Debug)]
pub struct WindowSolution {
    pub index_window: IntInterval,
    pub value_window: IntInterval,
    pub seq: MonotoneSeq,
    pub tree: Node,
    pub route: Route,
}

impl WindowSolution {
    fn from_run(run: tree::Run) -> Self {
        let seq = run.node.curve.window(run.index.lo, run.index.hi);
        WindowSolution { index_window: run.index, value_window: run.value, seq, tree: run.node, route: run.route }
    }

    /// OPT read off the window: the entry at `t` for profit windows, the
    /// largest profit whose weight fits `t` for weight windows.
    pub fn opt(&self, t: i64) -> Option<i64> {
        match self.tree.sense() {
            Sense::Max => best_up_to(&self.tree.curve, t).map(|(_, v)| v),
            Sense::Min => {
                let c = &self.tree.curve;
                let fit = c.values.partition_point(|&w| w <= t);
                (fit > 0).then(|| c.start + fit as i64 - 1)
            }
        }
    }
}

fn check_balance(instance: &KnapsackInstance) -> Result<()> {
    if instance.n() == 0 {
        return Ok(());
    }
    let cap_ratio = instance.capacity() as f64 / instance.w_max() as f64;
    let profit_ratio = greedy_upper_bound(instance) as f64 / instance.p_max() as f64;
    let r = cap_ratio / profit_ratio;
    if !(1.0 / IMBALANCE_BOUND..=IMBALANCE_BOUND).contains(&r) {
        return Err(Error::Imbalanced { cap_ratio, profit_ratio });
    }
    Ok(())
}

type Runner = fn(&[Pick], i64, Option<Request>, &SeedCtx) -> tree::Run;

fn runner(algo: Algo) -> Option<Runner> {
    match algo {
        Algo::TSqrtP => Some(tree::tsqrtp),
        Algo::OptSqrtW => Some(tree::optsqrtw),
        Algo::Cuberoot => Some(tree::cuberoot),
        Algo::CuberootSym => Some(tree::cuberoot_sym),
        Algo::Auto | Algo::Bellman => None,
    }
}

fn single(instance: &KnapsackInstance, algo: Algo, seed: &SeedCtx) -> Result<WindowSolution> {
    check_balance(instance)?;
    let run = runner(algo).unwrap();
    Ok(WindowSolution::from_run(run(&picks_of(instance), instance.capacity(), None, seed)))
}

/// `𝓟[T; P]` by the partition tree with color-coded leaves.
pub fn solve_balanced_tsqrtp(instance: &KnapsackInstance, seed: &SeedCtx) -> Result<WindowSolution> {
    single(instance, Algo::TSqrtP, seed)
}

/// `𝓟[T; P]` with banded leaves; delegates where the plain tree is cheaper.
pub fn solve_balanced_cuberoot(instance: &KnapsackInstance, seed: &SeedCtx) -> Result<WindowSolution> {
    single(instance, Algo::Cuberoot, seed)
}

/// `𝓦[P; T]` by the partition tree with color-coded leaves.
pub fn solve_balanced_optsqrtw(instance: &KnapsackInstance, seed: &SeedCtx) -> Result<WindowSolution> {
    single(instance, Algo::OptSqrtW, seed)
}

/// `𝓦[P; T]` with banded leaves; delegates where the plain tree is cheaper.
pub fn solve_balanced_cuberoot_sym(instance: &KnapsackInstance, seed: &SeedCtx) -> Result<WindowSolution> {
    single(instance, Algo::CuberootSym, seed)
}

fn boosted_run(picks: &[Pick], t: i64, req: Option<Request>, algo: Algo, reps: usize, seed: &SeedCtx) -> tree::Run {
    let run = runner(algo).unwrap();
    let mut runs: Vec<tree::Run> = (0..reps.max(1)).map(|r| run(picks, t, req, &seed.child(r as u64))).collect();
    let (index, value, route) = (runs[0].index, runs[0].value, runs[0].route);
    if runs.len() == 1 {
        return runs.pop().unwrap();
    }
    let node = Node::best(runs.into_iter().map(|r| r.node).collect());
    tree::Run { index, value, node, route }
}

/// One of the four window solvers, boosted over `reps` independent runs.
pub fn solve_window(instance: &KnapsackInstance, algo: Algo, reps: usize, seed: &SeedCtx) -> Result<WindowSolution> {
    if runner(algo).is_none() {
        return Err(Error::Witness(format!("{algo} has no window solver")));
    }
    check_balance(instance)?;
    let run = boosted_run(&picks_of(instance), instance.capacity(), None, algo, reps, seed);
    Ok(WindowSolution::from_run(run))
}

/// Rebuilds the set behind entry `target` of a witness tree.
pub fn reconstruct_solution(instance: &KnapsackInstance, tree: &Node, target: i64) -> Result<Solution> {
    let ids = tree
        .realize(target)
        .ok_or_else(|| Error::Witness(format!("no witness for index {target}")))?;
    Ok(Solution::from_indices(instance, ids))
}

/// Predicted costs with logarithmic factors dropped, in [`Algo::ALL`] order
/// minus `Auto`.
pub fn predicted_costs(instance: &KnapsackInstance) -> [(Algo, f64); 5] {
    let n = instance.n() as f64;
    let t = instance.capacity() as f64;
    let (w, p) = (instance.w_max() as f64, instance.p_max() as f64);
    let opt = greedy_upper_bound(instance) as f64;
    let nwp = (n * w * p).cbrt();
    [
        (Algo::Bellman, n * t),
        (Algo::TSqrtP, t * p.sqrt()),
        (Algo::OptSqrtW, opt * w.sqrt()),
        (Algo::Cuberoot, nwp * t.powf(2.0 / 3.0)),
        (Algo::CuberootSym, nwp * opt.powf(2.0 / 3.0)),
    ]
}

/// Rough wall time in nanoseconds per algorithm: [`predicted_costs`] times
/// the window factor `η`, the default repetitions and one logarithm for the
/// convolutions. Constants are fitted on balanced random instances.
pub fn calibrated_costs(instance: &KnapsackInstance) -> [(Algo, f64); 5] {
    let lg = ceil_log2(instance.n()).max(1) as f64;
    let overhead = 17.0 * lg * default_reps(instance.n()) as f64 * lg;
    predicted_costs(instance).map(|(a, c)| if a == Algo::Bellman { (a, 2.0 * c) } else { (a, 4.0 * c * overhead) })
}

/// Cheapest algorithm by [`calibrated_costs`]; ties go to Bellman.
pub fn choose_algo(instance: &KnapsackInstance) -> Algo {
    let costs = calibrated_costs(instance);
    let mut best = costs[0];
    for c in &costs[1..] {
        if c.1 < best.1 {
            best = *c;
        }
    }
    best.0
}

/// Medium curve over the capacity range of a balanced subproblem.
pub(crate) fn medium_node(sub: &BalancedSubproblem, algo: Algo, reps: usize, seed: &SeedCtx) -> Node {
    let caps = sub.capacity_range;
    let picks: Vec<Pick> = sub.medium_picks().into_iter().filter(|p| p.weight <= caps.hi).collect();
    if picks.is_empty() {
        return Node::empty_set(Sense::Max);
    }
    let run = match algo.sense() {
        Sense::Max => {
            let req = Request { index: caps, value: sub.profit_range };
            boosted_run(&picks, caps.hi, Some(req), algo, reps, seed)
        }
        Sense::Min => {
            let req = Request { index: sub.profit_range, value: IntInterval::new(0, caps.hi) };
            boosted_run(&picks, caps.hi, Some(req), algo, reps, seed)
        }
    };
    match algo.sense() {
        Sense::Max => run.node,
        Sense::Min => Node::dual(run.node, caps.lo, caps.hi),
    }
}

/// Full result of [`solve_with`].
#[derive(Clone, Debug)]
pub struct Solved {
    pub opt: i64,
    pub solution: Solution,
    pub algo: Algo,
}

/// Solves any instance with the default repetition count.
pub fn solve(instance: &KnapsackInstance, algo: Algo, seed: &SeedCtx) -> Result<(i64, Solution)> {
    let s = solve_with(instance, algo, None, seed)?;
    Ok((s.opt, s.solution))
}

/// Normalizes, reduces to a balanced medium instance, solves it on the
/// needed capacity window, recombines and rebuilds an optimal set.
pub fn solve_with(instance: &KnapsackInstance, algo: Algo, reps: Option<usize>, seed: &SeedCtx) -> Result<Solved> {
    let norm = normalize(instance)?;
    if let Some(p) = norm.trivial {
        let solution = Solution::from_indices(instance, norm.trivial_items.clone());
        debug_assert_eq!(solution.total_profit, p);
        return Ok(Solved { opt: p, solution, algo: if algo == Algo::Auto { Algo::Bellman } else { algo } });
    }
    let inst = &norm.instance;
    let algo = if algo == Algo::Auto { choose_algo(inst) } else { algo };
    let reps = reps.unwrap_or_else(|| default_reps(inst.n()));
    let t = inst.capacity();
    let ids = if algo == Algo::Bellman {
        bellman_profit_node(&picks_of(inst), t).realize(t)
    } else {
        let sub = balance_reduce(inst, reps, &seed.child(0))?;
        let medium = medium_node(&sub, algo, reps, &seed.child(1));
        let (_, root) = combine_balanced(&sub, medium, &seed.child(2));
        root.realize(t)
    };
    let ids = ids.ok_or_else(|| Error::Witness("no witness at the capacity".into()))?;
    let original: Vec<usize> = ids.into_iter().map(|i| norm.original_index[i]).collect();
    let solution = Solution::from_indices(instance, original);
    if solution.total_weight > instance.capacity() {
        return Err(Error::Witness(format!("rebuilt set weighs {}", solution.total_weight)));
    }
    Ok(Solved { opt: solution.total_profit, solution, algo })
}

#[cfg(test)]
mod tests;
