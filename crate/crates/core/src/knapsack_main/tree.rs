//! The partition tree shared by all four window solvers.

use rand::Rng;

use crate::knapsack_base::{
    bellman_profit_node, bellman_weight_node, combine, greedy_upper_bound, hexu_profit_node, hexu_weight_node,
    profit_bounded_node, weight_bounded_node, Node, Pick, Sense, Trace,
};
use crate::types::{IntInterval, Item, KnapsackInstance, SeedCtx};

use super::plan::TreeLevelPlan;

/// Extra index and value ranges the caller needs in the output window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Request {
    pub index: IntInterval,
    pub value: IntInterval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leaf {
    Bounded,
    Banded,
}

/// Which path a run took; exposed for tests of the delegation rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Bellman,
    Tree { leaf: Leaf, q: u32 },
}

pub(crate) struct Setup {
    pub n: usize,
    pub t: i64,
    pub opt_tilde: i64,
    pub w_max: i64,
    pub p_max: i64,
}

impl Setup {
    pub fn of(picks: &[Pick], t: i64) -> Self {
        let items: Vec<Item> = picks.iter().map(|p| Item::new(p.weight, p.profit)).collect();
        let inst = KnapsackInstance::new_unchecked(items, t);
        Setup { n: picks.len(), t, opt_tilde: greedy_upper_bound(&inst), w_max: inst.w_max(), p_max: inst.p_max() }
    }
}

fn hull(a: IntInterval, b: Option<IntInterval>) -> IntInterval {
    match b {
        Some(b) => IntInterval::new(a.lo.min(b.lo), a.hi.max(b.hi)),
        None => a,
    }
}

fn small(n: usize) -> bool {
    n < 10
}

fn cube(n: usize) -> i128 {
    (n as i128).pow(3)
}

/// Final windows `(index, value)` of a run in the given sense.
fn final_windows(plan: &TreeLevelPlan, sense: Sense, req: Option<Request>) -> (IntInterval, IntInterval) {
    match sense {
        Sense::Max => (
            hull(plan.final_weight(), req.map(|r| r.index)),
            hull(plan.final_profit(), req.map(|r| r.value)),
        ),
        Sense::Min => (
            hull(plan.final_profit(), req.map(|r| r.index)),
            hull(plan.final_weight(), req.map(|r| r.value)),
        ),
    }
}

fn level_windows(plan: &TreeLevelPlan, sense: Sense, level: u32) -> (IntInterval, IntInterval) {
    match sense {
        Sense::Max => (plan.weight_window(level), plan.profit_window(level)),
        Sense::Min => (plan.profit_window(level), plan.weight_window(level)),
    }
}

fn restricted(node: Node, index: IntInterval, value: IntInterval) -> Node {
    let curve = node.curve.restrict(index, value);
    debug_assert!(curve.values.windows(2).all(|w| w[0] <= w[1]));
    Node::new(curve, node.trace)
}

/// Plan with caps wide enough for the requested output windows.
fn plan_for(s: &Setup, q: u32, sense: Sense, req: Option<Request>) -> TreeLevelPlan {
    let base = TreeLevelPlan::new(s.n, s.t, s.opt_tilde, s.w_max, s.p_max, q);
    let (index, value) = final_windows(&base, sense, req);
    match sense {
        Sense::Max => base.with_caps(index.hi, value.hi.max(s.n as i64 * s.p_max)),
        Sense::Min => base.with_caps(value.hi.max(s.t), index.hi),
    }
}

fn run_tree(picks: &[Pick], plan: &TreeLevelPlan, sense: Sense, leaf: Leaf, seed: &SeedCtx) -> Node {
    let q = plan.q;
    let groups = 1usize << q;
    let mut parts: Vec<Vec<Pick>> = vec![Vec::new(); groups];
    let mut rng = seed.child(0).rng();
    for p in picks {
        parts[rng.random_range(0..groups)].push(*p);
    }
    let (wq, pq) = (plan.weight_window(q), plan.profit_window(q));
    let (idx, val) = level_windows(plan, sense, q);
    let mut level: Vec<Node> = parts
        .iter()
        .enumerate()
        .map(|(j, part)| {
            let s = seed.child_of(&[1, j as u64]);
            let node = match (sense, leaf) {
                (Sense::Max, Leaf::Bounded) => profit_bounded_node(part, plan.weight_star().hi, plan.profit_star().hi, &s),
                (Sense::Min, Leaf::Bounded) => weight_bounded_node(part, plan.profit_star().hi, plan.weight_star().hi, &s),
                (Sense::Max, Leaf::Banded) => {
                    let c = plan.t >> q;
                    hexu_profit_node(part, c, (wq.hi - c).max(c - wq.lo).max(0), &s)
                }
                (Sense::Min, Leaf::Banded) => {
                    let c = plan.opt_tilde >> q;
                    hexu_weight_node(part, c, (pq.hi - c).max(c - pq.lo).max(0), &s)
                }
            };
            restricted(node, idx, val)
        })
        .collect();
    for l in (0..q).rev() {
        let (idx, val) = level_windows(plan, sense, l);
        let mut next = Vec::with_capacity(level.len() / 2);
        let mut it = level.into_iter();
        let mut j = 0u64;
        while let (Some(a), Some(b)) = (it.next(), it.next()) {
            let c = combine(&a.curve, &b.curve, &seed.child_of(&[2, l as u64, j]));
            next.push(restricted(Node::new(c, Trace::Conv(Box::new(a), Box::new(b))), idx, val));
            j += 1;
        }
        level = next;
    }
    level.pop().unwrap()
}

/// Output of one window solver run.
pub(crate) struct Run {
    pub index: IntInterval,
    pub value: IntInterval,
    pub node: Node,
    pub route: Route,
}

fn bellman_run(picks: &[Pick], plan: &TreeLevelPlan, sense: Sense, req: Option<Request>) -> Run {
    let (index, value) = final_windows(plan, sense, req);
    let node = match sense {
        Sense::Max => bellman_profit_node(picks, index.hi),
        Sense::Min => bellman_weight_node(picks, index.hi),
    };
    Run { index, value, node: restricted(node, index, value), route: Route::Bellman }
}

fn tree_run(picks: &[Pick], plan: &TreeLevelPlan, sense: Sense, leaf: Leaf, req: Option<Request>, seed: &SeedCtx) -> Run {
    let (index, value) = final_windows(plan, sense, req);
    let root = run_tree(picks, plan, sense, leaf, seed);
    Run { index, value, node: restricted(root, index, value), route: Route::Tree { leaf, q: plan.q } }
}

pub(crate) fn tsqrtp(picks: &[Pick], t: i64, req: Option<Request>, seed: &SeedCtx) -> Run {
    let s = Setup::of(picks, t);
    let q = TreeLevelPlan::balanced_depth(s.n, s.t, s.opt_tilde, s.w_max, s.p_max);
    let plan = plan_for(&s, q, Sense::Max, req);
    if small(s.n) || cube(s.n) <= 2 * s.p_max as i128 {
        return bellman_run(picks, &plan, Sense::Max, req);
    }
    tree_run(picks, &plan, Sense::Max, Leaf::Bounded, req, seed)
}

pub(crate) fn optsqrtw(picks: &[Pick], t: i64, req: Option<Request>, seed: &SeedCtx) -> Run {
    let s = Setup::of(picks, t);
    let q = TreeLevelPlan::balanced_depth(s.n, s.t, s.opt_tilde, s.w_max, s.p_max);
    let plan = plan_for(&s, q, Sense::Min, req);
    if small(s.n) || cube(s.n) <= 2 * s.w_max as i128 {
        return bellman_run(picks, &plan, Sense::Min, req);
    }
    tree_run(picks, &plan, Sense::Min, Leaf::Bounded, req, seed)
}

/// `q` for the banded leaves: `2^q ≤ max{1, n^{4/3}·x^{1/3}·y^{−2/3}}`,
/// never deeper than the balanced depth.
fn banded_depth(s: &Setup, x: f64, y: f64) -> u32 {
    let bound = (s.n as f64).powf(4.0 / 3.0) * x.cbrt() * y.powf(-2.0 / 3.0);
    let mut q = 0;
    while ((1u64 << (q + 1)) as f64) <= bound.max(1.0) && q < 62 {
        q += 1;
    }
    q.min(TreeLevelPlan::balanced_depth(s.n, s.t, s.opt_tilde, s.w_max, s.p_max))
}

pub(crate) fn cuberoot(picks: &[Pick], t: i64, req: Option<Request>, seed: &SeedCtx) -> Run {
    let s = Setup::of(picks, t);
    let (n, wm, pm, t_f, opt) = (s.n as f64, s.w_max as f64, s.p_max as f64, s.t as f64, s.opt_tilde as f64);
    let c = (opt / pm * (wm / t_f)).min(1.0);
    if n >= c * t_f * pm.sqrt() / wm {
        return tsqrtp(picks, t, req, seed);
    }
    let q = banded_depth(&s, wm / t_f, pm);
    let plan = plan_for(&s, q, Sense::Max, req);
    if small(s.n) || cube(s.n) <= 2 * s.p_max as i128 {
        return bellman_run(picks, &plan, Sense::Max, req);
    }
    tree_run(picks, &plan, Sense::Max, Leaf::Banded, req, seed)
}

pub(crate) fn cuberoot_sym(picks: &[Pick], t: i64, req: Option<Request>, seed: &SeedCtx) -> Run {
    let s = Setup::of(picks, t);
    let (n, wm, pm, t_f, opt) = (s.n as f64, s.w_max as f64, s.p_max as f64, s.t as f64, s.opt_tilde as f64);
    let c = (t_f / wm * (pm / opt)).min(1.0);
    if n >= c * opt * wm.sqrt() / pm {
        return optsqrtw(picks, t, req, seed);
    }
    let q = banded_depth(&s, pm / opt, wm);
    let plan = plan_for(&s, q, Sense::Min, req);
    if small(s.n) || cube(s.n) <= 2 * s.w_max as i128 {
        return bellman_run(picks, &plan, Sense::Min, req);
    }
    tree_run(picks, &plan, Sense::Min, Leaf::Banded, req, seed)
}
