//! Bounded profit and weight sequences by grouping and color coding.

use std::collections::BTreeMap;

use rand::Rng;

use crate::types::{Direction, KnapsackInstance, MonotoneSeq, SeedCtx, Sentinel};

use super::bellman::picks_of;
use super::curve::{merge_all, Node, Pick, Sense};

/// Class of an item: `w ∈ [2^(a−1), 2^a)` and `p ∈ [2^(b−1), 2^b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupKey {
    pub a: u32,
    pub b: u32,
}

impl GroupKey {
    pub fn of(weight: i64, profit: i64) -> Self {
        GroupKey { a: bit_len(weight), b: bit_len(profit) }
    }
}

fn bit_len(x: i64) -> u32 {
    64 - (x.max(0) as u64).leading_zeros()
}

fn ceil_log2(x: u64) -> u32 {
    if x <= 1 { 0 } else { 64 - (x - 1).leading_zeros() }
}

fn ceil_div(x: i64, y: i64) -> i64 {
    (x + y - 1).div_euclid(y)
}

/// Color coding of one subgroup: `u²` buckets, best single item per bucket,
/// product of buckets, best over repetitions.
fn subgroup_node(picks: Vec<Pick>, z: i64, sense: Sense, hi: i64, cap: i64, seed: &SeedCtx) -> Node {
    if picks.len() == 1 {
        let n = Node::singles(sense, picks);
        return Node::new(n.curve.clip(hi, cap), n.trace);
    }
    let lg = ceil_log2(z as u64 + 1) as usize;
    let u = lg + 1;
    let reps = lg + 3;
    let buckets = u * u;
    let runs = (0..reps)
        .map(|r| {
            let s = seed.child(r as u64);
            let mut rng = s.rng();
            let mut slots: BTreeMap<usize, Vec<Pick>> = BTreeMap::new();
            for p in &picks {
                slots.entry(rng.random_range(0..buckets)).or_default().push(*p);
            }
            let nodes = slots
                .into_values()
                .map(|b| {
                    let n = Node::singles(sense, b);
                    Node::new(n.curve.clip(hi, cap), n.trace)
                })
                .collect();
            merge_all(nodes, sense, hi, cap, &s.child(u64::MAX))
        })
        .collect();
    Node::best(runs)
}

fn grouped_node(picks: Vec<Pick>, sense: Sense, z_of: impl Fn(GroupKey) -> i64, hi: i64, cap: i64, seed: &SeedCtx) -> Node {
    let mut groups: BTreeMap<GroupKey, Vec<Pick>> = BTreeMap::new();
    for p in picks {
        groups.entry(GroupKey::of(p.weight, p.profit)).or_default().push(p);
    }
    let group_nodes = groups
        .into_iter()
        .enumerate()
        .map(|(gi, (key, items))| {
            let s = seed.child(gi as u64);
            let z = z_of(key).max(1);
            let mut rng = s.child(0).rng();
            let mut subs: BTreeMap<i64, Vec<Pick>> = BTreeMap::new();
            for p in items {
                subs.entry(rng.random_range(0..z)).or_default().push(p);
            }
            let nodes = subs
                .into_values()
                .enumerate()
                .map(|(si, sub)| subgroup_node(sub, z, sense, hi, cap, &s.child_of(&[1, si as u64])))
                .collect();
            merge_all(nodes, sense, hi, cap, &s.child(2))
        })
        .collect();
    merge_all(group_nodes, sense, hi, cap, &seed.child(u64::MAX))
}

/// Curve of `min(𝓟[k], v+1)` for `k ≤ t`; entries `≤ v` are realizable.
///
/// Profits above `v` are capped at `v+1` rather than dropped, so a capacity
/// whose optimum exceeds `v` never reports a smaller value.
pub(crate) fn profit_bounded_node(picks: &[Pick], t: i64, v: i64, seed: &SeedCtx) -> Node {
    let kept: Vec<Pick> = picks
        .iter()
        .filter(|p| p.weight <= t)
        .map(|p| Pick { profit: p.profit.min(v + 1), ..*p })
        .collect();
    let z_of = |k: GroupKey| ceil_div(t, 1 << (k.a - 1)).min(ceil_div(v, 1 << (k.b - 1)));
    let n = grouped_node(kept, Sense::Max, z_of, t, v + 1, seed);
    Node::new(n.curve.clip(t, v + 1), n.trace)
}

/// Curve of `min(𝓦[k], t+1)` for `k ≤ v`; entries `≤ t` are realizable.
pub(crate) fn weight_bounded_node(picks: &[Pick], v: i64, t: i64, seed: &SeedCtx) -> Node {
    let kept: Vec<Pick> = picks.iter().copied().filter(|p| p.weight <= t).collect();
    let p_max = kept.iter().map(|p| p.profit).max().unwrap_or(0);
    let z_of = |k: GroupKey| ceil_div(t, 1 << k.a).min(ceil_div(v + p_max, 1 << k.b));
    let n = grouped_node(kept, Sense::Min, z_of, v, t + 1, seed);
    Node::new(n.curve.clip(v, t + 1), n.trace)
}

/// `𝓟[0..t; 0..v]`: capacities up to `t` whose optimum is at most `v`.
pub fn bc_profit_bounded(instance: &KnapsackInstance, t: i64, v: i64, seed: &SeedCtx) -> MonotoneSeq {
    let node = profit_bounded_node(&picks_of(instance), t, v, seed);
    let vals: Vec<i64> = (0..=t).map_while(|k| node.curve.get(k).finite().filter(|&x| x <= v)).collect();
    MonotoneSeq::from_finite(0, &vals, Direction::NonDecreasing, Sentinel::NegInf)
}

/// `𝓦[0..v; 0..t]`: profit targets up to `v` reachable with weight at most `t`.
pub fn bc_weight_bounded(instance: &KnapsackInstance, v: i64, t: i64, seed: &SeedCtx) -> MonotoneSeq {
    let node = weight_bounded_node(&picks_of(instance), v, t, seed);
    let vals: Vec<i64> = (0..=v).map_while(|k| node.curve.get(k).finite().filter(|&x| x <= t)).collect();
    MonotoneSeq::from_finite(0, &vals, Direction::NonDecreasing, Sentinel::PosInf)
}
