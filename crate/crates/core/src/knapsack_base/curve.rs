//! Windowed profit/weight sequences and the witness trees behind them.

use crate::convolution::naive::{INF, NEG};
use crate::convolution::{maxplus_monotone_raw, minplus_monotone_raw, Strategy};
use crate::types::{Direction, Ext, Fin, IntInterval, MonotoneSeq, NegInf, PosInf, SeedCtx, Sentinel};

use super::bellman::BellmanTable;
use super::hexu::HexuTable;

/// Profit sequences are combined by max, weight sequences by min.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

/// Finite non-decreasing window `values` over `[start, start + len)`.
///
/// Outside the window a `Max` curve is `−∞` below and `tail` (or `−∞`) above;
/// a `Min` curve is `+∞` on both sides and never carries a tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub sense: Sense,
    pub start: i64,
    pub values: Vec<i64>,
    pub tail: Option<i64>,
}

impl Curve {
    pub fn new(sense: Sense, start: i64, values: Vec<i64>, tail: Option<i64>) -> Self {
        let tail = if sense == Sense::Min { None } else { tail };
        Curve { sense, start, values, tail }
    }

    pub fn empty(sense: Sense) -> Self {
        Curve::new(sense, 0, Vec::new(), None)
    }

    /// Constant zero from index 0 on: the empty item set.
    pub fn zero(sense: Sense) -> Self {
        match sense {
            Sense::Max => Curve::new(sense, 0, vec![0], Some(0)),
            Sense::Min => Curve::new(sense, 0, vec![0], None),
        }
    }

    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64
    }

    pub fn is_void(&self) -> bool {
        self.values.is_empty() && self.tail.is_none()
    }

    fn outside(&self) -> Ext {
        match self.sense {
            Sense::Max => NegInf,
            Sense::Min => PosInf,
        }
    }

    pub fn get(&self, k: i64) -> Ext {
        if k < self.start {
            self.outside()
        } else if k < self.end() {
            Fin(self.values[(k - self.start) as usize])
        } else {
            self.tail.map_or(self.outside(), Fin)
        }
    }

    /// Materializes `[lo, hi]` as a sequence with the matching sentinel.
    pub fn window(&self, lo: i64, hi: i64) -> MonotoneSeq {
        let values = (lo..=hi).map(|k| self.get(k)).collect();
        MonotoneSeq::new(lo, values, Direction::NonDecreasing, self.sentinel())
    }

    fn sentinel(&self) -> Sentinel {
        match self.sense {
            Sense::Max => Sentinel::NegInf,
            Sense::Min => Sentinel::PosInf,
        }
    }

    /// Stored entries only, tail not expanded.
    pub fn to_seq(&self) -> MonotoneSeq {
        MonotoneSeq::from_finite(self.start, &self.values, Direction::NonDecreasing, self.sentinel())
    }

    /// Keeps indices `≤ hi` and caps values at `cap`; a cut drops the tail.
    pub fn clip(mut self, hi: i64, cap: i64) -> Self {
        if self.end() - 1 > hi {
            let keep = (hi - self.start + 1).max(0) as usize;
            self.values.truncate(keep);
            self.tail = None;
        }
        if self.values.is_empty() && self.tail.is_some() && self.start > hi {
            self.tail = None;
        }
        for v in &mut self.values {
            *v = (*v).min(cap);
        }
        self.tail = self.tail.map(|t| t.min(cap));
        self
    }

    /// Subarray with indices in `index` and values in `value`.
    ///
    /// A tail survives only when nothing was cut on the right and its value
    /// lies in `value`.
    pub fn restrict(&self, index: IntInterval, value: IntInterval) -> Curve {
        let lo = index.lo.max(self.start);
        let hi = index.hi.min(self.end() - 1);
        let (mut s, mut e) = (0usize, 0usize);
        if lo <= hi {
            let base = (lo - self.start) as usize;
            let slice = &self.values[base..=(hi - self.start) as usize];
            let a = slice.partition_point(|&v| v < value.lo);
            let b = slice.partition_point(|&v| v <= value.hi);
            if a < b {
                s = base + a;
                e = base + b;
            }
        }
        let tail = self
            .tail
            .filter(|&t| value.contains(t) && index.hi >= self.end() - 1 && (s == e || e == self.values.len()));
        if s < e {
            Curve::new(self.sense, self.start + s as i64, self.values[s..e].to_vec(), tail)
        } else if let Some(t) = tail {
            Curve::new(self.sense, index.lo.max(self.end()), Vec::new(), Some(t))
        } else {
            Curve::new(self.sense, lo.max(self.start), Vec::new(), None)
        }
    }

    /// Entrywise best, repaired to stay monotone (prefix max / suffix min).
    pub fn best(curves: &[&Curve]) -> Curve {
        let sense = curves.first().map_or(Sense::Max, |c| c.sense);
        let live: Vec<&&Curve> = curves.iter().filter(|c| !c.is_void()).collect();
        if live.is_empty() {
            return Curve::empty(sense);
        }
        let start = live.iter().map(|c| c.start).min().unwrap();
        let end = live.iter().map(|c| c.end()).max().unwrap();
        let pick = |a: Ext, b: Ext| if sense == Sense::Max { a.max(b) } else { a.min(b) };
        let mut vals: Vec<Ext> = (start..end)
            .map(|k| live.iter().map(|c| c.get(k)).reduce(pick).unwrap())
            .collect();
        let mut tail = live.iter().filter_map(|c| c.tail).max();
        match sense {
            Sense::Max => {
                for i in 1..vals.len() {
                    vals[i] = vals[i].max(vals[i - 1]);
                }
                if let (Some(t), Some(Fin(l))) = (tail, vals.last().copied()) {
                    tail = Some(t.max(l));
                }
            }
            Sense::Min => {
                for i in (0..vals.len().saturating_sub(1)).rev() {
                    vals[i] = vals[i].min(vals[i + 1]);
                }
            }
        }
        let first = vals.iter().position(|v| v.is_finite()).unwrap_or(vals.len());
        let last = vals.iter().rposition(|v| v.is_finite()).map_or(first, |p| p + 1);
        let values = vals[first..last].iter().map(|v| v.unwrap()).collect();
        let start = if first == last && tail.is_some() { end } else { start + first as i64 };
        Curve::new(sense, start, values, tail)
    }
}

/// Tropical product of two curves of the same sense.
pub fn combine(a: &Curve, b: &Curve, seed: &SeedCtx) -> Curve {
    match a.sense {
        Sense::Max => combine_max(a, b, seed),
        Sense::Min => combine_min(a, b, seed),
    }
}

fn combine_max(a: &Curve, b: &Curve, seed: &SeedCtx) -> Curve {
    if a.is_void() || b.is_void() {
        return Curve::empty(Sense::Max);
    }
    let (sa, sb, ea, eb) = (a.start, b.start, a.end(), b.end());
    let (la, lb) = (a.values.len(), b.values.len());
    let any_tail = a.tail.is_some() || b.tail.is_some();
    let len = la + lb - usize::from(!any_tail);
    let mut out = vec![NEG; len];
    if la > 0 && lb > 0 {
        let conv = maxplus_monotone_raw(&a.values, &b.values, seed, Strategy::Auto);
        out[..conv.len()].copy_from_slice(&conv);
    }
    for (off, o) in out.iter_mut().enumerate() {
        let k = sa + sb + off as i64;
        if let Some(tb) = b.tail {
            let i = (ea - 1).min(k - eb);
            if i >= sa {
                *o = (*o).max(a.values[(i - sa) as usize] + tb);
            }
        }
        if let Some(ta) = a.tail {
            let j = (eb - 1).min(k - ea);
            if j >= sb {
                *o = (*o).max(b.values[(j - sb) as usize] + ta);
            }
        }
    }
    let last = |c: &Curve| c.values.last().copied();
    let tail = match (a.tail, b.tail) {
        (Some(x), Some(y)) => Some(x + y),
        (None, Some(y)) => last(a).map(|x| x + y),
        (Some(x), None) => last(b).map(|y| x + y),
        (None, None) => None,
    };
    let keep = out.iter().rposition(|&v| v > NEG).map_or(0, |p| p + 1);
    out.truncate(keep);
    let start = if out.is_empty() { ea + eb } else { sa + sb };
    Curve::new(Sense::Max, start, out, tail)
}

fn combine_min(a: &Curve, b: &Curve, seed: &SeedCtx) -> Curve {
    if a.values.is_empty() || b.values.is_empty() {
        return Curve::empty(Sense::Min);
    }
    let ra: Vec<u64> = a.values.iter().map(|&v| v as u64).collect();
    let rb: Vec<u64> = b.values.iter().map(|&v| v as u64).collect();
    let values = minplus_monotone_raw(&ra, &rb, seed, Strategy::Auto)
        .into_iter()
        .map(|v| {
            debug_assert_ne!(v, INF);
            v as i64
        })
        .collect();
    Curve::new(Sense::Min, a.start + b.start, values, None)
}

/// One item as seen by a leaf: caller-side id plus its numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pick {
    pub id: usize,
    pub weight: i64,
    pub profit: i64,
}

/// How the entries of a [`Node`] curve were produced.
#[derive(Clone, Debug)]
pub enum Trace {
    /// No items.
    Empty,
    /// Best single item among the picks.
    Singles(Vec<Pick>),
    Bellman(Box<BellmanTable>),
    Hexu(Box<HexuTable>),
    /// Product of two children.
    Conv(Box<Node>, Box<Node>),
    /// Entrywise best of the children.
    Best(Vec<Node>),
    /// Capacity view of a weight curve; see [`Node::dual`].
    Dual(Box<Node>),
}

/// A curve together with the data needed to realize its entries.
#[derive(Clone, Debug)]
pub struct Node {
    pub curve: Curve,
    pub trace: Trace,
}

impl Node {
    pub fn new(curve: Curve, trace: Trace) -> Self {
        Node { curve, trace }
    }

    pub fn empty_set(sense: Sense) -> Self {
        Node::new(Curve::zero(sense), Trace::Empty)
    }

    /// Single-item curve: best profit per capacity, or least weight per profit.
    pub fn singles(sense: Sense, picks: Vec<Pick>) -> Self {
        if picks.is_empty() {
            return Node::empty_set(sense);
        }
        let curve = match sense {
            Sense::Max => {
                let top = picks.iter().map(|p| p.weight).max().unwrap();
                let mut v = vec![0i64; top as usize + 1];
                for p in &picks {
                    let slot = &mut v[p.weight as usize];
                    *slot = (*slot).max(p.profit);
                }
                for i in 1..v.len() {
                    v[i] = v[i].max(v[i - 1]);
                }
                let tail = v.last().copied();
                Curve::new(sense, 0, v, tail)
            }
            Sense::Min => {
                let top = picks.iter().map(|p| p.profit).max().unwrap();
                let mut v = vec![i64::MAX; top as usize + 1];
                v[0] = 0;
                for p in &picks {
                    let slot = &mut v[p.profit as usize];
                    *slot = (*slot).min(p.weight);
                }
                for i in (1..v.len().saturating_sub(1)).rev() {
                    v[i] = v[i].min(v[i + 1]);
                }
                Curve::new(sense, 0, v, None)
            }
        };
        Node::new(curve, Trace::Singles(picks))
    }

    /// Entrywise best of independent runs.
    pub fn best(children: Vec<Node>) -> Self {
        if children.len() == 1 {
            return children.into_iter().next().unwrap();
        }
        let curve = Curve::best(&children.iter().map(|c| &c.curve).collect::<Vec<_>>());
        Node::new(curve, Trace::Best(children))
    }

    /// Turns a weight curve into a profit curve on capacities `[lo, hi]`.
    ///
    /// The entry at capacity `c` is the largest stored profit target whose
    /// least weight is at most `c`. Realized sets may beat that target.
    pub fn dual(weights: Node, lo: i64, hi: i64) -> Self {
        debug_assert_eq!(weights.sense(), Sense::Min);
        let w = &weights.curve;
        let mut values = Vec::new();
        let mut start = lo;
        for c in lo..=hi {
            let fit = w.values.partition_point(|&x| x <= c);
            if fit == 0 {
                if values.is_empty() {
                    start = c + 1;
                    continue;
                }
                break;
            }
            values.push(w.start + fit as i64 - 1);
        }
        Node::new(Curve::new(Sense::Max, start, values, None), Trace::Dual(Box::new(weights)))
    }

    pub fn sense(&self) -> Sense {
        self.curve.sense
    }

    /// Ids of a set realizing `curve.get(k)` exactly.
    ///
    /// For `Max` the set has weight `≤ k` and profit equal to the entry; for
    /// `Min` it has profit `≥ k` and weight equal to the entry.
    pub fn realize(&self, k: i64) -> Option<Vec<usize>> {
        let target = self.curve.get(k).finite()?;
        let mut out = Vec::new();
        self.realize_into(k, target, &mut out).then_some(out)
    }

    fn fits(&self, k: i64, target: i64, w: i64, p: i64) -> bool {
        match self.sense() {
            Sense::Max => w <= k && p == target,
            Sense::Min => p >= k && w == target,
        }
    }

    fn realize_into(&self, k: i64, target: i64, out: &mut Vec<usize>) -> bool {
        match &self.trace {
            Trace::Empty => target == 0 && (self.sense() == Sense::Max || k <= 0),
            Trace::Singles(picks) => {
                if target == 0 && (self.sense() == Sense::Max || k <= 0) {
                    return true;
                }
                match picks.iter().find(|p| self.fits(k, target, p.weight, p.profit)) {
                    Some(p) => {
                        out.push(p.id);
                        true
                    }
                    None => false,
                }
            }
            Trace::Bellman(table) => match table.realize(k) {
                Some((ids, w, p)) if self.fits(k, target, w, p) => {
                    out.extend(ids);
                    true
                }
                _ => false,
            },
            Trace::Hexu(table) => match table.realize(k) {
                Some((ids, w, p)) if self.fits(k, target, w, p) => {
                    out.extend(ids);
                    true
                }
                _ => false,
            },
            Trace::Dual(inner) => match inner.curve.get(target).finite() {
                Some(w) if w <= k => inner.realize_into(target, w, out),
                _ => false,
            },
            Trace::Best(children) => {
                let lo = children.iter().map(|ch| ch.curve.start).min().unwrap_or(k);
                let hi = children.iter().map(|ch| ch.curve.end()).max().unwrap_or(k);
                let order: Box<dyn Iterator<Item = i64>> = match self.sense() {
                    Sense::Max => Box::new((lo.min(k)..=k.min(hi)).rev()),
                    Sense::Min => Box::new(k..=hi.max(k)),
                };
                for j in order {
                    for ch in children {
                        if ch.curve.get(j) == Fin(target) {
                            let mark = out.len();
                            if ch.realize_into(j, target, out) {
                                return true;
                            }
                            out.truncate(mark);
                        }
                    }
                }
                false
            }
            Trace::Conv(left, right) => {
                let (l, r) = (&left.curve, &right.curve);
                let mut cands: Vec<i64> = (l.start..l.end()).collect();
                if l.tail.is_some() {
                    cands.push(l.end());
                }
                for i in cands {
                    let (Fin(x), Fin(y)) = (l.get(i), r.get(k - i)) else {
                        continue;
                    };
                    if x + y != target {
                        continue;
                    }
                    let mark = out.len();
                    if left.realize_into(i, x, out) && right.realize_into(k - i, y, out) {
                        return true;
                    }
                    out.truncate(mark);
                }
                false
            }
        }
    }
}

/// Balanced binary merge of nodes by [`combine`], clipping every product.
pub fn merge_all(mut nodes: Vec<Node>, sense: Sense, hi: i64, cap: i64, seed: &SeedCtx) -> Node {
    if nodes.is_empty() {
        return Node::empty_set(sense);
    }
    let mut round = 0u64;
    while nodes.len() > 1 {
        let mut next = Vec::with_capacity(nodes.len().div_ceil(2));
        let mut it = nodes.into_iter().enumerate();
        while let Some((i, a)) = it.next() {
            match it.next() {
                Some((_, b)) => {
                    let c = combine(&a.curve, &b.curve, &seed.child_of(&[round, i as u64])).clip(hi, cap);
                    next.push(Node::new(c, Trace::Conv(Box::new(a), Box::new(b))));
                }
                None => next.push(a),
            }
        }
        nodes = next;
        round += 1;
    }
    nodes.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_max(a: &Curve, b: &Curve, k: i64) -> Ext {
        (-5..=k + 5).map(|i| a.get(i) + b.get(k - i)).max().unwrap()
    }

    #[test]
    fn max_product_with_tails() {
        let a = Curve::new(Sense::Max, 0, vec![0, 2, 2, 5], Some(5));
        let b = Curve::new(Sense::Max, 1, vec![1, 4], Some(4));
        let c = combine(&a, &b, &SeedCtx::new(0));
        for k in 0..20 {
            assert_eq!(c.get(k), brute_max(&a, &b, k), "k={k}");
        }
        let b2 = Curve::new(Sense::Max, 1, vec![1, 4], None);
        let c = combine(&a, &b2, &SeedCtx::new(0));
        for k in 0..20 {
            assert_eq!(c.get(k), brute_max(&a, &b2, k), "k={k}");
        }
        let only_tail = Curve::new(Sense::Max, 3, vec![], Some(7));
        let c = combine(&only_tail, &b2, &SeedCtx::new(0));
        for k in 0..20 {
            assert_eq!(c.get(k), brute_max(&only_tail, &b2, k), "k={k}");
        }
    }

    #[test]
    fn restrict_keeps_tail_only_when_uncut() {
        let a = Curve::new(Sense::Max, 0, vec![0, 2, 2, 5], Some(5));
        let r = a.restrict(IntInterval::new(1, 100), IntInterval::new(1, 10));
        assert_eq!((r.start, r.values.clone(), r.tail), (1, vec![2, 2, 5], Some(5)));
        let r = a.restrict(IntInterval::new(1, 2), IntInterval::new(1, 10));
        assert_eq!((r.start, r.values.clone(), r.tail), (1, vec![2, 2], None));
        let r = a.restrict(IntInterval::new(0, 9), IntInterval::new(0, 4));
        assert_eq!((r.values.clone(), r.tail), (vec![0, 2, 2], None));
        let r = a.restrict(IntInterval::new(7, 9), IntInterval::new(0, 9));
        assert_eq!((r.start, r.values.len(), r.tail), (7, 0, Some(5)));
        assert_eq!(r.get(8), Fin(5));
    }

    #[test]
    fn best_repairs_monotonicity() {
        let a = Curve::new(Sense::Max, 0, vec![0, 3], None);
        let b = Curve::new(Sense::Max, 0, vec![0, 1, 2, 2], None);
        let c = Curve::best(&[&a, &b]);
        assert_eq!(c.values, vec![0, 3, 3, 3]);
        let a = Curve::new(Sense::Min, 4, vec![5, 6], None);
        let b = Curve::new(Sense::Min, 0, vec![1, 9], None);
        let c = Curve::best(&[&a, &b]);
        assert_eq!((c.start, c.values.clone()), (0, vec![1, 5, 5, 5, 5, 6]));
    }

    #[test]
    fn singles_curves() {
        let picks = vec![Pick { id: 0, weight: 2, profit: 3 }, Pick { id: 1, weight: 3, profit: 4 }];
        let n = Node::singles(Sense::Max, picks.clone());
        assert_eq!(n.curve.values, vec![0, 0, 3, 4]);
        assert_eq!(n.realize(10), Some(vec![1]));
        let n = Node::singles(Sense::Min, picks);
        assert_eq!(n.curve.values, vec![0, 2, 2, 2, 3]);
        assert_eq!(n.realize(4), Some(vec![1]));
        assert_eq!(n.realize(5), None);
    }
}
