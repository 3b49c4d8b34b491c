//! Reduction to balanced instances around the maximum prefix solution.
//!
//! Items far better than the prefix ratio (good) are almost all taken and
//! items far worse (bad) almost never; only O(w_max) weight of either can
//! differ from the prefix in an optimal solution, so the medium items carry
//! the work and the other two classes are handled by short curves.

use std::cmp::Ordering;

use crate::error::Result;
use crate::knapsack_base::{
    bellman_profit_node, combine, profit_bounded_node, ratio_cmp, ratio_order, Curve, Node, Pick, Sense, Trace,
};
use crate::types::{Direction, Fin, IntInterval, KnapsackInstance, MonotoneSeq, PosInf, SeedCtx, Sentinel};

/// Half-width, in units of `w_max` / `p_max`, of the medium windows.
pub const MEDIUM_RADIUS: i64 = 11;
/// Extent, in units of `w_max` / `p_max`, of the good and bad curves.
pub const SIDE_EXTENT: i64 = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioPartition {
    /// Longest ratio-sorted prefix that fits.
    pub prefix: Vec<usize>,
    /// `(profit, weight)` of the last prefix item; `None` for an empty prefix.
    pub rho: Option<(i64, i64)>,
    pub good: Vec<usize>,
    pub medium: Vec<usize>,
    pub bad: Vec<usize>,
}

pub fn max_prefix_partition(instance: &KnapsackInstance) -> RatioPartition {
    let items = instance.items();
    let mut room = instance.capacity();
    let mut prefix = Vec::new();
    for i in ratio_order(instance) {
        if items[i].weight > room {
            break;
        }
        room -= items[i].weight;
        prefix.push(i);
    }
    let rho = prefix.last().map(|&j| (items[j].profit, items[j].weight));
    let (mut good, mut medium, mut bad) = (Vec::new(), Vec::new(), Vec::new());
    for (i, it) in items.iter().enumerate() {
        let Some((rp, rw)) = rho else {
            medium.push(i);
            continue;
        };
        if ratio_cmp(it.weight, it.profit, rw, 2 * rp) == Ordering::Greater {
            good.push(i);
        } else if ratio_cmp(it.weight, 2 * it.profit, rw, rp) == Ordering::Less {
            bad.push(i);
        } else {
            medium.push(i);
        }
    }
    RatioPartition { prefix, rho, good, medium, bad }
}

fn picks(instance: &KnapsackInstance, ids: &[usize]) -> Vec<Pick> {
    ids.iter()
        .map(|&id| {
            let it = instance.items()[id];
            Pick { id, weight: it.weight, profit: it.profit }
        })
        .collect()
}

fn boosted(reps: usize, seed: &SeedCtx, f: impl Fn(&SeedCtx) -> Node) -> Node {
    Node::best((0..reps.max(1)).map(|r| f(&seed.child(r as u64))).collect())
}

/// Default number of independent repetitions: `⌈log₂ n⌉ + 3`.
pub fn default_reps(n: usize) -> usize {
    (usize::BITS - n.max(1).saturating_sub(1).leading_zeros()) as usize + 3
}

pub(crate) fn bad_node(items: &[Pick], w_max: i64, p_max: i64, reps: usize, seed: &SeedCtx) -> Node {
    let (t, v) = (SIDE_EXTENT * w_max, SIDE_EXTENT * p_max);
    let node = boosted(reps, seed, |s| profit_bounded_node(items, t, v, s));
    let curve = node.curve.restrict(IntInterval::new(0, t), IntInterval::new(0, v));
    Node::new(curve, node.trace)
}

/// `𝓟_G` on capacities `[w(G) − 10·w_max, w(G)]`, i.e. `p(G) − L[w(G) − c]`.
pub(crate) fn good_node(items: &[Pick], w_max: i64, reps: usize, seed: &SeedCtx) -> Node {
    let wg: i64 = items.iter().map(|p| p.weight).sum();
    let pg: i64 = items.iter().map(|p| p.profit).sum();
    let node = boosted(reps, seed, |s| profit_bounded_node(items, wg, pg, s));
    let curve = node.curve.restrict(IntInterval::new(wg - SIDE_EXTENT * w_max, wg), IntInterval::new(0, pg));
    Node::new(curve, node.trace)
}

/// `𝓟_B[0..10·w_max; 0..10·p_max]` of the bad items.
pub fn bad_curve(bad: &KnapsackInstance, w_max: i64, p_max: i64, seed: &SeedCtx) -> MonotoneSeq {
    let all: Vec<usize> = (0..bad.n()).collect();
    let node = bad_node(&picks(bad, &all), w_max, p_max, default_reps(bad.n()), seed);
    let vals: Vec<i64> =
        (0..=SIDE_EXTENT * w_max).map_while(|k| node.curve.get(k).finite()).collect();
    MonotoneSeq::from_finite(0, &vals, Direction::NonDecreasing, Sentinel::NegInf)
}

/// `L[t''] = min{p(S) : S ⊆ G, w(S) ≥ t''}` for `t'' ∈ [0, 10·w_max]`.
pub fn good_complement_curve(good: &KnapsackInstance, w_max: i64, seed: &SeedCtx) -> MonotoneSeq {
    let all: Vec<usize> = (0..good.n()).collect();
    let node = good_node(&picks(good, &all), w_max, default_reps(good.n()), seed);
    let (wg, pg) = (good.total_weight(), good.total_profit());
    let vals = (0..=SIDE_EXTENT * w_max)
        .map(|s| if s > wg { PosInf } else { node.curve.get(wg - s).finite().map_or(PosInf, |v| Fin(pg - v)) })
        .collect();
    MonotoneSeq::new(0, vals, Direction::NonDecreasing, Sentinel::PosInf)
}

/// Everything needed to finish once the medium items are solved on a window.
#[derive(Clone, Debug)]
pub struct BalancedSubproblem {
    pub partition: RatioPartition,
    /// Medium items with capacity `w(P∩M)`; `medium_ids` maps back.
    pub medium: KnapsackInstance,
    pub medium_ids: Vec<usize>,
    pub capacity_range: IntInterval,
    pub profit_range: IntInterval,
    pub capacity: i64,
    pub good: Node,
    pub bad: Node,
}

impl BalancedSubproblem {
    /// Medium items as picks carrying ids of the reduced instance.
    pub fn medium_picks(&self) -> Vec<Pick> {
        self.medium_ids
            .iter()
            .zip(self.medium.items())
            .map(|(&id, it)| Pick { id, weight: it.weight, profit: it.profit })
            .collect()
    }
}

/// Splits a normalized instance; `reps` boosts the good and bad curves.
pub fn balance_reduce(instance: &KnapsackInstance, reps: usize, seed: &SeedCtx) -> Result<BalancedSubproblem> {
    let part = max_prefix_partition(instance);
    let (t, w_max, p_max) = (instance.capacity(), instance.w_max(), instance.p_max());
    debug_assert!(instance.n() == 0 || part.rho.is_some());
    let items = instance.items();
    let in_prefix: std::collections::HashSet<usize> = part.prefix.iter().copied().collect();
    let core: Vec<usize> = part.medium.iter().copied().filter(|i| in_prefix.contains(i)).collect();
    let wc: i64 = core.iter().map(|&i| items[i].weight).sum();
    let pc: i64 = core.iter().map(|&i| items[i].profit).sum();
    let capacity_range =
        IntInterval::new((wc - MEDIUM_RADIUS * w_max).max(0), (wc + MEDIUM_RADIUS * w_max).min(t));
    let profit_range = IntInterval::new((pc - MEDIUM_RADIUS * p_max).max(0), pc + MEDIUM_RADIUS * p_max);
    let medium = instance.subset(&part.medium).with_capacity(wc);
    let good = good_node(&picks(instance, &part.good), w_max, reps, &seed.child(0));
    let bad = bad_node(&picks(instance, &part.bad), w_max, p_max, reps, &seed.child(1));
    Ok(BalancedSubproblem {
        medium_ids: part.medium.clone(),
        partition: part,
        medium,
        capacity_range,
        profit_range,
        capacity: t,
        good,
        bad,
    })
}

/// Exact medium curve over the capacity range, by the textbook DP.
pub fn medium_by_bellman(sub: &BalancedSubproblem) -> Node {
    let node = bellman_profit_node(&sub.medium_picks(), sub.capacity_range.hi);
    let curve = node.curve.restrict(IntInterval::new(sub.capacity_range.lo, sub.capacity_range.hi), IntInterval::all());
    Node::new(curve, node.trace)
}

/// Folds good, medium and bad curves; returns OPT and a node whose entry at
/// the capacity realizes it.
pub fn combine_balanced(sub: &BalancedSubproblem, medium: Node, seed: &SeedCtx) -> (i64, Node) {
    let t = sub.capacity;
    let cap = i64::MAX / 4;
    let medium = if medium.curve.is_void() && sub.medium.n() == 0 { Node::empty_set(Sense::Max) } else { medium };
    let gm = combine(&sub.good.curve, &medium.curve, &seed.child(0)).clip(t, cap);
    let gm = Node::new(gm, Trace::Conv(Box::new(sub.good.clone()), Box::new(medium)));
    let all = combine(&gm.curve, &sub.bad.curve, &seed.child(1)).clip(t, cap);
    let root = Node::new(all, Trace::Conv(Box::new(gm), Box::new(sub.bad.clone())));
    let opt = best_up_to(&root.curve, t);
    (opt.map_or(0, |(_, v)| v), root)
}

/// Largest entry at an index `≤ t`, with that index.
pub(crate) fn best_up_to(curve: &Curve, t: i64) -> Option<(i64, i64)> {
    if t >= curve.end() {
        if let Some(v) = curve.tail {
            return Some((t, v));
        }
    }
    let hi = t.min(curve.end() - 1);
    (hi >= curve.start).then(|| (hi, curve.values[(hi - curve.start) as usize]))
}

/// For every optimal set `Z`, the good and bad items where `Z` and the
/// prefix differ weigh at most `10·w_max` and earn at most `10·p_max`.
pub fn exchange_bound_holds(instance: &KnapsackInstance) -> Result<bool> {
    let n = instance.n();
    if n > 20 {
        return Err(crate::error::Error::TooLarge(n));
    }
    let part = max_prefix_partition(instance);
    let items = instance.items();
    let mask_of = |ids: &[usize]| ids.iter().fold(0u32, |m, &i| m | 1 << i);
    let prefix = mask_of(&part.prefix);
    let sides = mask_of(&part.good) | mask_of(&part.bad);
    let t = instance.capacity();
    let mut best = 0;
    let mut optimal = Vec::new();
    for m in 0u32..(1 << n) {
        let (mut w, mut p) = (0, 0);
        for (i, it) in items.iter().enumerate() {
            if m >> i & 1 == 1 {
                w += it.weight;
                p += it.profit;
            }
        }
        if w > t {
            continue;
        }
        match p.cmp(&best) {
            Ordering::Greater => {
                best = p;
                optimal = vec![m];
            }
            Ordering::Equal => optimal.push(m),
            Ordering::Less => {}
        }
    }
    Ok(optimal.iter().all(|&z| {
        let delta = (z ^ prefix) & sides;
        let (mut w, mut p) = (0, 0);
        for (i, it) in items.iter().enumerate() {
            if delta >> i & 1 == 1 {
                w += it.weight;
                p += it.profit;
            }
        }
        w <= SIDE_EXTENT * instance.w_max() && p <= SIDE_EXTENT * instance.p_max()
    }))
}
