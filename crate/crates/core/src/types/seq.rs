use super::ext::{Ext, Fin, NegInf, PosInf};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    NonDecreasing,
    NonIncreasing,
    Unknown,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::NonDecreasing => Direction::NonIncreasing,
            Direction::NonIncreasing => Direction::NonDecreasing,
            Direction::Unknown => Direction::Unknown,
        }
    }

    pub fn is_monotone(self) -> bool {
        self != Direction::Unknown
    }
}

/// Value read outside the stored window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sentinel {
    NegInf,
    PosInf,
}

impl Sentinel {
    pub fn value(self) -> Ext {
        match self {
            Sentinel::NegInf => NegInf,
            Sentinel::PosInf => PosInf,
        }
    }

    pub fn flip(self) -> Sentinel {
        match self {
            Sentinel::NegInf => Sentinel::PosInf,
            Sentinel::PosInf => Sentinel::NegInf,
        }
    }
}

/// Closed integer interval `[lo, hi]`; empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntInterval {
    pub lo: i64,
    pub hi: i64,
}

impl IntInterval {
    pub fn new(lo: i64, hi: i64) -> Self {
        IntInterval { lo, hi }
    }

    pub fn all() -> Self {
        IntInterval { lo: i64::MIN, hi: i64::MAX }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn intersect(&self, other: &IntInterval) -> IntInterval {
        IntInterval { lo: self.lo.max(other.lo), hi: self.hi.min(other.hi) }
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }
}

/// Sequence over the absolute index window `[start, start + len)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneSeq {
    pub start: i64,
    pub values: Vec<Ext>,
    pub direction: Direction,
    pub sentinel: Sentinel,
}

impl MonotoneSeq {
    pub fn new(start: i64, values: Vec<Ext>, direction: Direction, sentinel: Sentinel) -> Self {
        MonotoneSeq { start, values, direction, sentinel }
    }

    pub fn from_finite(start: i64, values: &[i64], direction: Direction, sentinel: Sentinel) -> Self {
        Self::new(start, values.iter().map(|&v| Fin(v)).collect(), direction, sentinel)
    }

    pub fn empty(start: i64, direction: Direction, sentinel: Sentinel) -> Self {
        Self::new(start, Vec::new(), direction, sentinel)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// One past the last stored index.
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64
    }

    pub fn indices(&self) -> IntInterval {
        IntInterval::new(self.start, self.end() - 1)
    }

    pub fn get(&self, index: i64) -> Ext {
        if index < self.start || index >= self.end() {
            self.sentinel.value()
        } else {
            self.values[(index - self.start) as usize]
        }
    }

    /// Checks the direction tag against the finite entries.
    pub fn is_consistent(&self) -> bool {
        let finite: Vec<i64> = self.values.iter().filter_map(|v| v.finite()).collect();
        match self.direction {
            Direction::NonDecreasing => finite.windows(2).all(|w| w[0] <= w[1]),
            Direction::NonIncreasing => finite.windows(2).all(|w| w[0] >= w[1]),
            Direction::Unknown => true,
        }
    }

    pub fn finite_values(&self) -> impl Iterator<Item = i64> + '_ {
        self.values.iter().filter_map(|v| v.finite())
    }

    /// Entries reversed with index `i` mapped to `-i`; an involution.
    pub fn reversed(&self) -> MonotoneSeq {
        let mut values = self.values.clone();
        values.reverse();
        let start = if self.values.is_empty() { -self.start } else { -(self.end() - 1) };
        MonotoneSeq::new(start, values, self.direction.flip(), self.sentinel)
    }

    /// Entrywise negation; flips direction and sentinel.
    pub fn negated(&self) -> MonotoneSeq {
        MonotoneSeq::new(
            self.start,
            self.values.iter().map(|&v| -v).collect(),
            self.direction.flip(),
            self.sentinel.flip(),
        )
    }

    /// Same window with indices shifted by `delta`.
    pub fn shifted(&self, delta: i64) -> MonotoneSeq {
        MonotoneSeq { start: self.start + delta, ..self.clone() }
    }
}

/// Maximal subarray with indices in `index` and values in `value`.
///
/// Binary search over the monotone values; the start index stays absolute.
pub fn restrict(seq: &MonotoneSeq, index: IntInterval, value: IntInterval) -> Result<MonotoneSeq> {
    let empty = || MonotoneSeq::empty(index.lo.max(seq.start), seq.direction, seq.sentinel);
    if !seq.direction.is_monotone() {
        return Err(Error::NotMonotone);
    }
    let win = index.intersect(&seq.indices());
    if win.is_empty() || value.is_empty() {
        return Ok(empty());
    }
    let base = (win.lo - seq.start) as usize;
    let slice = &seq.values[base..=(win.hi - seq.start) as usize];
    let (lo, hi) = (Fin(value.lo), Fin(value.hi));
    let (a, b) = match seq.direction {
        Direction::NonDecreasing => {
            (slice.partition_point(|&v| v < lo), slice.partition_point(|&v| v <= hi))
        }
        _ => (slice.partition_point(|&v| v > hi), slice.partition_point(|&v| v >= lo)),
    };
    if a >= b {
        return Ok(empty());
    }
    Ok(MonotoneSeq::new(
        seq.start + (base + a) as i64,
        slice[a..b].to_vec(),
        seq.direction,
        seq.sentinel,
    ))
}

/// Running maximum `pm(B)[i] = max_{j ≤ i} B[j]`.
pub fn prefix_maxima(seq: &MonotoneSeq) -> MonotoneSeq {
    let mut best = NegInf;
    let values = seq
        .values
        .iter()
        .map(|&v| {
            best = best.max(v);
            best
        })
        .collect();
    MonotoneSeq::new(seq.start, values, Direction::NonDecreasing, seq.sentinel)
}

/// Entrywise `M − v`; flips direction and sentinel.
pub fn negate_shift(seq: &MonotoneSeq, m: i64) -> Result<MonotoneSeq> {
    let mut values = Vec::with_capacity(seq.len());
    for &v in &seq.values {
        values.push(match v {
            Fin(x) if !(0..=m).contains(&x) => return Err(Error::OutOfRange { value: x, bound: m }),
            Fin(x) => Fin(m - x),
            inf => -inf,
        });
    }
    Ok(MonotoneSeq::new(seq.start, values, seq.direction.flip(), seq.sentinel.flip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nd(start: i64, v: &[i64]) -> MonotoneSeq {
        MonotoneSeq::from_finite(start, v, Direction::NonDecreasing, Sentinel::NegInf)
    }

    fn restrict_scan(seq: &MonotoneSeq, index: IntInterval, value: IntInterval) -> Vec<(i64, Ext)> {
        (seq.start..seq.end())
            .filter(|&i| index.contains(i))
            .map(|i| (i, seq.get(i)))
            .filter(|&(_, v)| matches!(v, Fin(x) if value.contains(x)))
            .collect()
    }

    #[test]
    fn restrict_examples() {
        let s = nd(0, &[0, 2, 5, 9]);
        let r = restrict(&s, IntInterval::new(1, 3), IntInterval::new(2, 6)).unwrap();
        assert_eq!((r.start, r.values.clone()), (1, vec![Fin(2), Fin(5)]));
        let r = restrict(&s, IntInterval::new(0, 3), IntInterval::new(100, 200)).unwrap();
        assert!(r.is_empty());
        let s = nd(4, &[7]);
        let r = restrict(&s, IntInterval::new(4, 4), IntInterval::new(7, 7)).unwrap();
        assert_eq!((r.start, r.values), (4, vec![Fin(7)]));
    }

    #[test]
    fn restrict_rejects_unknown_direction() {
        let s = MonotoneSeq::from_finite(0, &[1, 0], Direction::Unknown, Sentinel::NegInf);
        assert!(restrict(&s, IntInterval::all(), IntInterval::all()).is_err());
    }

    #[test]
    fn prefix_maxima_examples() {
        let s = MonotoneSeq::from_finite(0, &[3, 1, 4, 1], Direction::Unknown, Sentinel::NegInf);
        assert_eq!(prefix_maxima(&s).values, vec![Fin(3), Fin(3), Fin(4), Fin(4)]);
        assert_eq!(prefix_maxima(&nd(0, &[0, 0, 0])).values, vec![Fin(0); 3]);
        assert_eq!(prefix_maxima(&nd(0, &[1])).values, vec![Fin(1)]);
    }

    #[test]
    fn negate_shift_examples() {
        let s = negate_shift(&nd(0, &[0, 1, 3]), 3).unwrap();
        assert_eq!(s.values, vec![Fin(3), Fin(2), Fin(0)]);
        assert_eq!(s.direction, Direction::NonIncreasing);
        assert_eq!(s.sentinel, Sentinel::PosInf);
        assert_eq!(negate_shift(&nd(0, &[0]), 0).unwrap().values, vec![Fin(0)]);
        let s = nd(0, &[1, 4, 4]);
        assert_eq!(negate_shift(&negate_shift(&s, 5).unwrap(), 5).unwrap(), s);
        assert!(negate_shift(&nd(0, &[6]), 5).is_err());
    }

    #[test]
    fn sentinel_reads() {
        let s = nd(3, &[1, 2]);
        assert_eq!(s.get(2), NegInf);
        assert_eq!(s.get(4), Fin(2));
        assert_eq!(s.get(5), NegInf);
    }

    fn arb_monotone() -> impl Strategy<Value = MonotoneSeq> {
        (-5i64..5, prop::collection::vec(0i64..6, 0..20), any::<bool>(), any::<bool>()).prop_map(
            |(start, steps, up, inf_tail)| {
                let mut acc = 0;
                let mut v: Vec<Ext> = steps
                    .iter()
                    .map(|s| {
                        acc += s;
                        Fin(if up { acc } else { 100 - acc })
                    })
                    .collect();
                if inf_tail && up {
                    v.push(PosInf);
                }
                let dir = if up { Direction::NonDecreasing } else { Direction::NonIncreasing };
                MonotoneSeq::new(start, v, dir, Sentinel::NegInf)
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn restrict_matches_linear_scan(s in arb_monotone(), i0 in -8i64..25, il in 0i64..25, v0 in -5i64..110, vl in 0i64..60) {
            let (iv, vv) = (IntInterval::new(i0, i0 + il), IntInterval::new(v0, v0 + vl));
            let got = restrict(&s, iv, vv).unwrap();
            let want = restrict_scan(&s, iv, vv);
            let got: Vec<(i64, Ext)> = (got.start..got.end()).map(|i| (i, got.get(i))).collect();
            prop_assert_eq!(got, want);
        }

        #[test]
        fn reversal_is_an_involution(s in arb_monotone()) {
            prop_assert_eq!(s.reversed().reversed(), s);
        }
    }
}
