//! Banded dynamic programs over a random item order.
//!
//! After `k` items of a random permutation, the prefix of a fixed solution
//! has weight close to `k/n` of its total, so each row only keeps a band of
//! width `O(Δ)` around `k·t/n`.

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::types::{Direction, Ext, KnapsackInstance, MonotoneSeq, NegInf, PosInf, SeedCtx, Sentinel};

use super::bellman::picks_of;
use super::curve::{Curve, Node, Pick, Sense, Trace};

const NONE: i64 = i64::MIN / 4;
const UNSET: i64 = i64::MAX / 4;
const ALL: i64 = -1;

/// Decision bits of every row band plus the source row entry of each output.
#[derive(Clone, Debug)]
pub struct HexuTable {
    sense: Sense,
    order: Vec<Pick>,
    bands: Vec<(i64, i64, usize)>,
    bits: Vec<u64>,
    out_start: i64,
    src: Vec<i64>,
}

impl HexuTable {
    fn took(&self, row: usize, j: i64) -> bool {
        let (lo, hi, off) = self.bands[row];
        if j < lo || j > hi {
            return false;
        }
        let b = off + (j - lo) as usize;
        self.bits[b / 64] >> (b % 64) & 1 == 1
    }

    pub fn realize(&self, k: i64) -> Option<(Vec<usize>, i64, i64)> {
        if self.src.is_empty() {
            return None;
        }
        let idx = (k - self.out_start).clamp(0, self.src.len() as i64 - 1) as usize;
        let mut j = self.src[idx];
        if j == ALL {
            let w = self.order.iter().map(|p| p.weight).sum();
            let p = self.order.iter().map(|p| p.profit).sum();
            let mut ids: Vec<usize> = self.order.iter().map(|p| p.id).collect();
            ids.sort_unstable();
            return Some((ids, w, p));
        }
        if j == NONE {
            return None;
        }
        let (mut ids, mut w, mut p) = (Vec::new(), 0, 0);
        for row in (0..self.order.len()).rev() {
            if self.took(row, j) {
                let it = self.order[row];
                ids.push(it.id);
                w += it.weight;
                p += it.profit;
                j -= match self.sense {
                    Sense::Max => it.weight,
                    Sense::Min => it.profit,
                };
            }
        }
        ids.sort_unstable();
        Some((ids, w, p))
    }
}

fn band_width(center_total: i64, scale_max: i64, n: usize, ell: i64) -> i64 {
    let l = ((n as f64) * (ell as f64)).max(2.0);
    let spread = 4.0 * ((center_total as f64) * (scale_max as f64) * l.ln()).sqrt();
    ell + spread.ceil() as i64
}

struct Rows {
    bands: Vec<(i64, i64, usize)>,
    bits: Vec<u64>,
    last_lo: i64,
    last: Vec<i64>,
}

/// Shared banded recurrence; `key` picks the index coordinate of an item and
/// `val` its value coordinate.
fn run_rows(order: &[Pick], sense: Sense, target: i64, delta: i64, cap: i64) -> Rows {
    let n = order.len();
    let (void, better): (i64, fn(i64, i64) -> bool) = match sense {
        Sense::Max => (NONE, |a, b| a > b),
        Sense::Min => (UNSET, |a, b| a < b),
    };
    let mut prev_lo = 0i64;
    let mut prev = vec![0i64];
    let mut bands = Vec::with_capacity(n);
    let mut bits: Vec<u64> = Vec::new();
    let mut used = 0usize;
    for (k, it) in order.iter().enumerate() {
        let (step, gain) = match sense {
            Sense::Max => (it.weight, it.profit),
            Sense::Min => (it.profit, it.weight),
        };
        let c = (k + 1) as f64 * target as f64 / n as f64;
        let lo = ((c - delta as f64).floor() as i64).max(0);
        let hi = ((c + delta as f64).ceil() as i64).min(cap).max(lo);
        let width = (hi - lo + 1) as usize;
        bits.resize((used + width).div_ceil(64), 0);
        let get = |j: i64| -> i64 {
            if j < prev_lo || j >= prev_lo + prev.len() as i64 {
                void
            } else {
                prev[(j - prev_lo) as usize]
            }
        };
        let mut cur = vec![void; width];
        for (x, slot) in cur.iter_mut().enumerate() {
            let j = lo + x as i64;
            let keep = get(j);
            let from = get(j - step);
            *slot = keep;
            if from != void {
                let cand = from + gain;
                if better(cand, keep) {
                    *slot = cand;
                    let b = used + x;
                    bits[b / 64] |= 1 << (b % 64);
                }
            }
        }
        bands.push((lo, hi, used));
        used += width;
        prev = cur;
        prev_lo = lo;
    }
    Rows { bands, bits, last_lo: prev_lo, last: prev }
}

/// Band of `𝓟[t−ℓ ..= t+ℓ]` (clamped at 0) for any `ℓ ≥ 0`.
pub(crate) fn profit_window_node(picks: &[Pick], t: i64, ell: i64, seed: &SeedCtx) -> Node {
    let mut order = picks.to_vec();
    order.shuffle(&mut seed.rng());
    let n = order.len();
    let (olo, ohi) = ((t - ell).max(0), t + ell);
    let w_max = order.iter().map(|p| p.weight).max().unwrap_or(0);
    let delta = band_width(t, w_max, n, ell);
    let rows = if n == 0 {
        Rows { bands: Vec::new(), bits: Vec::new(), last_lo: 0, last: vec![0] }
    } else {
        run_rows(&order, Sense::Max, t, delta, ohi)
    };
    let w_all: i64 = order.iter().map(|p| p.weight).sum();
    let p_all: i64 = order.iter().map(|p| p.profit).sum();
    let mut run = (NONE, NONE);
    let mut vals = Vec::new();
    let mut src = Vec::new();
    for j in rows.last_lo.min(olo)..=ohi {
        let off = j - rows.last_lo;
        if off >= 0 && (off as usize) < rows.last.len() {
            let v = rows.last[off as usize];
            if v > run.0 {
                run = (v, j);
            }
        }
        if j >= olo {
            if j >= w_all {
                vals.push(p_all);
                src.push(ALL);
            } else {
                vals.push(run.0);
                src.push(if run.0 == NONE { NONE } else { run.1 });
            }
        }
    }
    let first = vals.iter().position(|&v| v != NONE).unwrap_or(vals.len());
    let tail = (ohi >= w_all).then_some(p_all);
    let curve = Curve::new(Sense::Max, olo + first as i64, vals[first..].to_vec(), tail);
    let table = HexuTable { sense: Sense::Max, order, bands: rows.bands, bits: rows.bits, out_start: olo, src };
    Node::new(curve, Trace::Hexu(Box::new(table)))
}

/// Band of `𝓦[v−ℓ ..= v+ℓ]` (clamped at 0) for any `ℓ ≥ 0`.
pub(crate) fn weight_window_node(picks: &[Pick], v: i64, ell: i64, seed: &SeedCtx) -> Node {
    let mut order = picks.to_vec();
    order.shuffle(&mut seed.rng());
    let n = order.len();
    let (olo, ohi) = ((v - ell).max(0), v + ell);
    let p_max = order.iter().map(|p| p.profit).max().unwrap_or(0);
    let delta = band_width(v, p_max, n, ell);
    let top = ohi + p_max.max(1) - 1;
    let rows = if n == 0 {
        Rows { bands: Vec::new(), bits: Vec::new(), last_lo: 0, last: vec![0] }
    } else {
        run_rows(&order, Sense::Min, v, delta, top)
    };
    let last_hi = rows.last_lo + rows.last.len() as i64 - 1;
    let mut run = (UNSET, NONE);
    let mut rev_vals = Vec::new();
    let mut rev_src = Vec::new();
    for j in (olo..=last_hi.max(ohi)).rev() {
        let off = j - rows.last_lo;
        if off >= 0 && (off as usize) < rows.last.len() {
            let w = rows.last[off as usize];
            if w < run.0 {
                run = (w, j);
            }
        }
        if j <= ohi {
            rev_vals.push(run.0);
            rev_src.push(if run.0 == UNSET { NONE } else { run.1 });
        }
    }
    rev_vals.reverse();
    rev_src.reverse();
    let keep = rev_vals.iter().position(|&w| w == UNSET).unwrap_or(rev_vals.len());
    let curve = Curve::new(Sense::Min, olo, rev_vals[..keep].to_vec(), None);
    let table =
        HexuTable { sense: Sense::Min, order, bands: rows.bands, bits: rows.bits, out_start: olo, src: rev_src };
    Node::new(curve, Trace::Hexu(Box::new(table)))
}

fn check_ell(target: i64, ell: i64) -> Result<()> {
    if ell < 2 || ell > target {
        return Err(Error::BadWindow(ell));
    }
    Ok(())
}

/// Monte Carlo `𝓟[t−ℓ ..= t+ℓ]`; every entry is a lower bound realized by some set.
pub fn hexu_profit_window(instance: &KnapsackInstance, t: i64, ell: i64, seed: &SeedCtx) -> Result<MonotoneSeq> {
    check_ell(t, ell)?;
    let node = profit_window_node(&picks_of(instance), t, ell, seed);
    let values: Vec<Ext> = (t - ell..=t + ell).map(|j| node.curve.get(j)).collect();
    debug_assert!(values.iter().all(|v| *v != PosInf));
    Ok(MonotoneSeq::new(t - ell, values, Direction::NonDecreasing, Sentinel::NegInf))
}

/// Monte Carlo `𝓦[v−ℓ ..= v+ℓ]`; every finite entry is realized by some set.
pub fn hexu_weight_window(instance: &KnapsackInstance, v: i64, ell: i64, seed: &SeedCtx) -> Result<MonotoneSeq> {
    check_ell(v, ell)?;
    let node = weight_window_node(&picks_of(instance), v, ell, seed);
    let values: Vec<Ext> = (v - ell..=v + ell).map(|j| node.curve.get(j)).collect();
    debug_assert!(values.iter().all(|v| *v != NegInf));
    Ok(MonotoneSeq::new(v - ell, values, Direction::NonDecreasing, Sentinel::PosInf))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::knapsack_base::bellman::{bellman_profit_dp, bellman_weight_dp};
    use crate::types::Fin;
    use rand::Rng;

    fn random_instance(rng: &mut impl Rng, n: usize) -> KnapsackInstance {
        let pairs: Vec<(i64, i64)> = (0..n).map(|_| (rng.random_range(1..=20), rng.random_range(1..=20))).collect();
        let t = pairs.iter().map(|p| p.0).sum::<i64>() / 2;
        KnapsackInstance::from_pairs(&pairs, t.max(1)).unwrap()
    }

    #[test]
    fn rejects_bad_ell() {
        let inst = KnapsackInstance::from_pairs(&[(2, 3)], 5).unwrap();
        assert!(matches!(hexu_profit_window(&inst, 5, 1, &SeedCtx::new(0)), Err(Error::BadWindow(1))));
        assert!(matches!(hexu_weight_window(&inst, 5, 6, &SeedCtx::new(0)), Err(Error::BadWindow(6))));
    }

    #[test]
    fn wide_bands_match_bellman() {
        let mut rng = SeedCtx::new(11).rng();
        for round in 0..40u64 {
            let inst = random_instance(&mut rng, 12);
            let t = inst.capacity();
            if t < 2 {
                continue;
            }
            let ell = (t / 2).max(2).min(t);
            let got = hexu_profit_window(&inst, t, ell, &SeedCtx::new(round)).unwrap();
            let (truth, _) = bellman_profit_dp(&inst, t + ell);
            for j in t - ell..=t + ell {
                assert_eq!(got.get(j), truth.get(j), "round {round} j {j}");
            }
            let v = inst.total_profit() / 2;
            if v < 2 {
                continue;
            }
            let got = hexu_weight_window(&inst, v, v / 2 + 1, &SeedCtx::new(round)).unwrap();
            let (truth, _) = bellman_weight_dp(&inst, v + v / 2 + 1);
            for j in got.indices().lo..=got.indices().hi {
                assert_eq!(got.get(j), truth.get(j), "round {round} j {j}");
            }
        }
    }

    #[test]
    fn nodes_realize_their_entries() {
        let mut rng = SeedCtx::new(5).rng();
        for round in 0..20u64 {
            let inst = random_instance(&mut rng, 10);
            let picks = picks_of(&inst);
            let t = inst.capacity();
            let node = profit_window_node(&picks, t, 3, &SeedCtx::new(round));
            for j in node.curve.start..node.curve.end() {
                let ids = node.realize(j).unwrap();
                let w: i64 = ids.iter().map(|&i| picks[i].weight).sum();
                let p: i64 = ids.iter().map(|&i| picks[i].profit).sum();
                assert!(w <= j);
                assert_eq!(Fin(p), node.curve.get(j));
            }
            let node = weight_window_node(&picks, inst.total_profit() / 2, 3, &SeedCtx::new(round));
            for j in node.curve.start..node.curve.end() {
                let ids = node.realize(j).unwrap();
                let w: i64 = ids.iter().map(|&i| picks[i].weight).sum();
                let p: i64 = ids.iter().map(|&i| picks[i].profit).sum();
                assert!(p >= j);
                assert_eq!(Fin(w), node.curve.get(j));
            }
        }
    }
}
