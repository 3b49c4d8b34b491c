//! Textbook dynamic programs with a full decision table for backtracking.

use crate::types::{Direction, Ext, KnapsackInstance, MonotoneSeq, Sentinel};

use super::curve::{Curve, Node, Pick, Sense, Trace};

/// One decision bit per (item, index) pair.
#[derive(Clone, Debug)]
pub struct BellmanTable {
    sense: Sense,
    picks: Vec<Pick>,
    width: usize,
    bits: Vec<u64>,
}

impl BellmanTable {
    fn new(sense: Sense, picks: Vec<Pick>, width: usize) -> Self {
        let words = (picks.len() * width).div_ceil(64);
        BellmanTable { sense, picks, width, bits: vec![0; words] }
    }

    fn set(&mut self, item: usize, j: usize) {
        let b = item * self.width + j;
        self.bits[b / 64] |= 1 << (b % 64);
    }

    fn took(&self, item: usize, j: usize) -> bool {
        let b = item * self.width + j;
        self.bits[b / 64] >> (b % 64) & 1 == 1
    }

    /// Backtracks from index `k` (clamped to the table); returns ids, weight, profit.
    pub fn realize(&self, k: i64) -> Option<(Vec<usize>, i64, i64)> {
        if k < 0 || self.width == 0 {
            return None;
        }
        let mut j = (k as usize).min(self.width - 1);
        let (mut ids, mut w, mut p) = (Vec::new(), 0, 0);
        for (i, pick) in self.picks.iter().enumerate().rev() {
            if self.took(i, j) {
                ids.push(pick.id);
                w += pick.weight;
                p += pick.profit;
                j = match self.sense {
                    Sense::Max => j - pick.weight as usize,
                    Sense::Min => j.saturating_sub(pick.profit as usize),
                };
            }
        }
        ids.reverse();
        Some((ids, w, p))
    }
}

pub(crate) fn picks_of(instance: &KnapsackInstance) -> Vec<Pick> {
    instance
        .items()
        .iter()
        .enumerate()
        .map(|(id, it)| Pick { id, weight: it.weight, profit: it.profit })
        .collect()
}

/// Profit DP over capacities `0..=k`; the curve gets a tail once `k` covers every item.
pub(crate) fn profit_node(picks: &[Pick], k: i64) -> Node {
    let width = k.max(0) as usize + 1;
    let mut table = BellmanTable::new(Sense::Max, picks.to_vec(), width);
    let mut dp = vec![0i64; width];
    for (i, it) in picks.iter().enumerate() {
        let w = it.weight as usize;
        if w >= width {
            continue;
        }
        for j in (w..width).rev() {
            let cand = dp[j - w] + it.profit;
            if cand > dp[j] {
                dp[j] = cand;
                table.set(i, j);
            }
        }
    }
    let total: i64 = picks.iter().map(|p| p.weight).sum();
    let tail = (k >= total).then(|| dp[width - 1]);
    Node::new(Curve::new(Sense::Max, 0, dp, tail), Trace::Bellman(Box::new(table)))
}

/// Least weight reaching profit at least `j`, for `j` in `0..=k`.
pub(crate) fn weight_node(picks: &[Pick], k: i64) -> Node {
    const UNSET: i64 = i64::MAX / 4;
    let width = k.max(0) as usize + 1;
    let mut table = BellmanTable::new(Sense::Min, picks.to_vec(), width);
    let mut dp = vec![UNSET; width];
    dp[0] = 0;
    for (i, it) in picks.iter().enumerate() {
        if it.profit <= 0 {
            continue;
        }
        for j in (1..width).rev() {
            let src = j.saturating_sub(it.profit as usize);
            let cand = dp[src].saturating_add(it.weight);
            if dp[src] < UNSET && cand < dp[j] {
                dp[j] = cand;
                table.set(i, j);
            }
        }
    }
    let finite = dp.iter().position(|&v| v >= UNSET).unwrap_or(width);
    dp.truncate(finite);
    Node::new(Curve::new(Sense::Min, 0, dp, None), Trace::Bellman(Box::new(table)))
}

/// `𝓟[0..=k]` with the decision table used to rebuild optimal sets.
pub fn bellman_profit_dp(instance: &KnapsackInstance, k: i64) -> (MonotoneSeq, BellmanTable) {
    let node = profit_node(&picks_of(instance), k);
    let seq = MonotoneSeq::from_finite(0, &node.curve.values, Direction::NonDecreasing, Sentinel::NegInf);
    let Trace::Bellman(table) = node.trace else { unreachable!() };
    (seq, *table)
}

/// `𝓦[0..=k]`; unreachable profits are `+∞`.
pub fn bellman_weight_dp(instance: &KnapsackInstance, k: i64) -> (MonotoneSeq, BellmanTable) {
    let node = weight_node(&picks_of(instance), k);
    let width = k.max(0) as usize + 1;
    let values = (0..width as i64).map(|j| node.curve.get(j)).collect::<Vec<Ext>>();
    let seq = MonotoneSeq::new(0, values, Direction::NonDecreasing, Sentinel::PosInf);
    let Trace::Bellman(table) = node.trace else { unreachable!() };
    (seq, *table)
}

/// Optimal value of the instance at its own capacity.
pub fn bellman_opt(instance: &KnapsackInstance) -> i64 {
    let t = instance.capacity() as usize;
    let mut dp = vec![0i64; t + 1];
    for it in instance.items() {
        let w = it.weight as usize;
        if w > t {
            continue;
        }
        for j in (w..=t).rev() {
            dp[j] = dp[j].max(dp[j - w] + it.profit);
        }
    }
    dp[t]
}
