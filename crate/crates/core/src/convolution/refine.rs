//! Bit-by-bit refinement for bounded monotone min-plus convolution.
//!
//! Inputs are one residue-class pair: every finite entry `v` satisfies
//! `v mod p ≤ p/3`, so high parts `⌊v/p⌋` and residues add without carry.
//! The high parts are convolved over constant runs (`C̃`); the residue of the
//! answer is then recovered one bit at a time from the top. At level `ℓ`
//! the candidates for `C^(ℓ)[k]` are read off a counting polynomial product
//! after subtracting pairs known to be false positives (pairs whose high
//! parts do not sum to `C̃[k]`). Those pairs are tracked as segments: maximal
//! index ranges on which all of `Ã, B̃, A^(ℓ), B^(ℓ)` are constant.

use std::collections::BTreeMap;

use super::naive::INF;
use super::ntt;
use super::segtree::ChminTree;

/// Offsets `b ∈ [−OFFSET, OFFSET]` kept per level.
pub const OFFSET: i64 = 10;
const NB: usize = (2 * OFFSET + 1) as usize;

/// Maximal run of equal finite values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Run {
    pub start: usize,
    pub end: usize,
    pub value: u64,
}

pub fn runs(v: &[u64]) -> Vec<Run> {
    let mut out: Vec<Run> = Vec::new();
    for (i, &x) in v.iter().enumerate() {
        if x == INF {
            continue;
        }
        match out.last_mut() {
            Some(r) if r.end + 1 == i && r.value == x => r.end = i,
            _ => out.push(Run { start: i, end: i, value: x }),
        }
    }
    out
}

/// Min-plus over run pairs with range-chmin updates.
pub fn tilde_from_runs(ra: &[Run], rb: &[Run], out_len: usize) -> Vec<u64> {
    let mut tree = ChminTree::new(out_len, INF);
    for x in ra {
        for y in rb {
            tree.chmin(x.start + y.start, x.end + y.end, x.value + y.value);
        }
    }
    tree.into_values()
}

/// `([i1, i2], k)` at a given level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub i1: usize,
    pub i2: usize,
    pub k: usize,
    pub level: u32,
}

/// Snapshot of one refinement level.
#[derive(Clone, Debug)]
pub struct ConvLevelState {
    pub level: u32,
    pub prime: u64,
    /// `C^(ℓ)[k]`, or `None` where `C̃[k]` is infinite.
    pub c_level: Vec<Option<u64>>,
    /// `T_b^(ℓ)` keyed by `b`.
    pub false_positives: BTreeMap<i64, Vec<Segment>>,
}

/// Segments grouped by `k`: `segs[offs[k]..offs[k+1]]`.
struct Grouped {
    offs: Vec<usize>,
    segs: Vec<(u32, u32)>,
}

struct Pair {
    ar: Vec<u32>,
    br: Vec<u32>,
    p: u64,
}

impl Pair {
    fn snapshot(&self, level: u32, c: &[u32], ct: &[u64], g: &Grouped) -> ConvLevelState {
        let mut false_positives: BTreeMap<i64, Vec<Segment>> = BTreeMap::new();
        for k in 0..c.len() {
            for &(i1, i2) in &g.segs[g.offs[k]..g.offs[k + 1]] {
                let (i1, i2) = (i1 as usize, i2 as usize);
                let v = (self.ar[i1] >> level) as i64 + (self.br[k - i1] >> level) as i64;
                false_positives.entry(v - c[k] as i64).or_default().push(Segment { i1, i2, k, level });
            }
        }
        let c_level = c.iter().zip(ct).map(|(&c, &t)| (t != INF).then_some(c as u64)).collect();
        ConvLevelState { level, prime: self.p, c_level, false_positives }
    }

    /// Calls `emit(s, e)` for the pieces of `[i1, i2]` on which both
    /// `A^(ℓ)[i]` and `B^(ℓ)[k − i]` are constant (at most three pieces).
    #[inline]
    fn split(&self, k: usize, i1: usize, i2: usize, l: u32, mut emit: impl FnMut(usize, usize)) {
        // Residues are monotone inside a segment, so equal endpoints mean
        // no cut.
        let va = self.ar[i1] >> l;
        let ia = if self.ar[i2] >> l == va {
            i2 + 1
        } else {
            i1 + self.ar[i1..=i2].partition_point(|&x| x >> l == va)
        };
        let vb = self.br[k - i1] >> l;
        let ib = if self.br[k - i2] >> l == vb {
            i2 + 1
        } else {
            k + 1 - (k - i2 + self.br[k - i2..=k - i1].partition_point(|&x| x >> l != vb))
        };
        let (c1, c2) = (ia.min(ib), ia.max(ib));
        let mut s = i1;
        for cut in [c1, c2, i2 + 1] {
            if cut > s {
                emit(s, cut - 1);
                s = cut;
            }
        }
    }
}

fn finite_support(v: &[u64]) -> (usize, usize) {
    let first = v.iter().position(|&x| x != INF).expect("finite entry");
    let last = v.iter().rposition(|&x| x != INF).expect("finite entry");
    (first, last)
}

/// Exact min-plus convolution of one residue-class pair.
///
/// `observe` receives the state after initialisation and after every level.
pub fn refine_pair(a: &[u64], b: &[u64], p: u64, mut observe: Option<&mut dyn FnMut(ConvLevelState)>) -> Vec<u64> {
    let out_len = a.len() + b.len() - 1;
    let high = |v: &[u64]| v.iter().map(|&x| if x == INF { INF } else { x / p }).collect::<Vec<u64>>();
    let low = |v: &[u64]| v.iter().map(|&x| if x == INF { 0 } else { (x % p) as u32 }).collect::<Vec<u32>>();
    let (at, bt) = (high(a), high(b));
    let pair = Pair { ar: low(a), br: low(b), p };
    let (ra, rb) = (runs(&at), runs(&bt));
    if ra.is_empty() || rb.is_empty() {
        return vec![INF; out_len];
    }
    let ct = tilde_from_runs(&ra, &rb, out_len);
    let h = 64 - p.leading_zeros();

    // Level h: every segment whose high parts miss C̃[k].
    let mut offs = vec![0usize; out_len + 1];
    for x in &ra {
        for y in &rb {
            let s = x.value + y.value;
            for k in x.start + y.start..=x.end + y.end {
                if ct[k] != s {
                    offs[k + 1] += 1;
                }
            }
        }
    }
    for k in 0..out_len {
        offs[k + 1] += offs[k];
    }
    let mut segs = vec![(0u32, 0u32); offs[out_len]];
    let mut fill = offs.clone();
    for x in &ra {
        for y in &rb {
            let s = x.value + y.value;
            for k in x.start + y.start..=x.end + y.end {
                if ct[k] != s {
                    let i1 = x.start.max(k.saturating_sub(y.end));
                    let i2 = x.end.min(k - y.start);
                    segs[fill[k]] = (i1 as u32, i2 as u32);
                    fill[k] += 1;
                }
            }
        }
    }
    drop(fill);
    let mut grouped = Grouped { offs, segs };
    let mut c_prev = vec![0u32; out_len];
    if let Some(f) = observe.as_mut() {
        f(pair.snapshot(h, &c_prev, &ct, &grouped));
    }

    let (fa, ea) = finite_support(a);
    let (fb, eb) = finite_support(b);
    let mut scratch: Vec<(u32, u32, u32)> = Vec::new();
    for l in (0..h).rev() {
        let sh = l + 1;
        let max_at = |v: &[u64], r: &[u32], f: usize, e: usize| {
            (f..=e).filter(|&i| v[i] != INF).map(|i| (r[i] >> l) as usize).max().unwrap_or(0)
        };
        // The level value of a pair is the digit sum `(a >> ℓ) + (b >> ℓ)`,
        // so one packed digit per index suffices.
        let span = max_at(a, &pair.ar, fa, ea) + max_at(b, &pair.br, fb, eb) + 1;
        let pack = |v: &[u64], r: &[u32], f: usize, e: usize| {
            let mut out = vec![0u32; span * (e - f + 1)];
            for i in f..=e {
                if v[i] != INF {
                    out[(r[i] >> l) as usize + span * (i - f)] = 1;
                }
            }
            out
        };
        let prod = ntt::multiply_small(pack(a, &pair.ar, fa, ea), pack(b, &pair.br, fb, eb));

        let mut c_cur = vec![0u32; out_len];
        let mut next = Grouped { offs: vec![0usize; out_len + 1], segs: Vec::with_capacity(grouped.segs.len()) };
        for k in 0..out_len {
            next.offs[k] = next.segs.len();
            if ct[k] == INF {
                continue;
            }
            // fp[s − lo] counts tracked false positives with level value s.
            let mut fp = [0u64; 2 * NB + 1];
            scratch.clear();
            let base = c_prev[k] as i64;
            let lo = 2 * (base - OFFSET);
            for &(i1, i2) in &grouped.segs[grouped.offs[k]..grouped.offs[k + 1]] {
                let i1 = i1 as usize;
                debug_assert!(((pair.ar[i1] >> sh) as i64 + (pair.br[k - i1] >> sh) as i64 - base).abs() <= OFFSET);
                pair.split(k, i1, i2 as usize, l, |s, e| {
                    let v = (pair.ar[s] >> l) + (pair.br[k - s] >> l);
                    fp[(v as i64 - lo) as usize] += (e - s + 1) as u64;
                    scratch.push((s as u32, e as u32, v));
                });
            }
            let row = (k - fa - fb) * span;
            // Sums whose every split `2d + c` has a tracked `d`.
            let mut best = u64::MAX;
            for off in 1..=2 * NB as i64 - 1 {
                let v = lo + off;
                if v < 0 || v as usize >= span {
                    continue;
                }
                let total = prod.get(row + v as usize).copied().unwrap_or(0) as u64;
                debug_assert!(total >= fp[off as usize]);
                if total > fp[off as usize] {
                    best = v as u64;
                    break;
                }
            }
            assert!(best != u64::MAX, "no candidate for finite C~[{k}]");
            c_cur[k] = best as u32;
            for &(s, e, v) in &scratch {
                if (v as i64 - best as i64).abs() <= OFFSET {
                    next.segs.push((s, e));
                }
            }
        }
        next.offs[out_len] = next.segs.len();
        grouped = next;
        c_prev = c_cur;
        if let Some(f) = observe.as_mut() {
            f(pair.snapshot(l, &c_prev, &ct, &grouped));
        }
    }
    ct.iter()
        .zip(&c_prev)
        .map(|(&t, &c)| if t == INF { INF } else { p * t + c as u64 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolution::naive::minplus_raw;
    use crate::convolution::residue::class_slice;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tilde_naive(a: &[u64], b: &[u64]) -> Vec<u64> {
        minplus_raw(a, b)
    }

    #[test]
    fn tilde_examples() {
        let t = |a: &[u64], b: &[u64]| tilde_from_runs(&runs(a), &runs(b), a.len() + b.len() - 1);
        assert_eq!(t(&[0, 0, 1], &[2, 2]), vec![2, 2, 2, 3]);
        assert_eq!(t(&[INF, 0], &[0]), vec![INF, 0]);
        assert_eq!(t(&[0], &[0]), vec![0]);
    }

    fn monotone(rng: &mut ChaCha8Rng, n: usize, m: u64, up: bool) -> Vec<u64> {
        let mut v: Vec<u64> = (0..n).map(|_| rng.random_range(0..=m)).collect();
        v.sort_unstable();
        if !up {
            v.reverse();
        }
        v
    }

    /// All segments at `level` whose high parts miss `C̃[k]`, by definition.
    fn segments_by_definition(a: &[u64], b: &[u64], p: u64, level: u32, ct: &[u64], c: &[Option<u64>]) -> BTreeMap<i64, Vec<Segment>> {
        let mut out: BTreeMap<i64, Vec<Segment>> = BTreeMap::new();
        let key = |i: usize, k: usize| -> Option<(u64, u64, u64, u64)> {
            let j = k.checked_sub(i)?;
            if i >= a.len() || j >= b.len() || a[i] == INF || b[j] == INF {
                return None;
            }
            Some((a[i] / p, b[j] / p, (a[i] % p) >> level, (b[j] % p) >> level))
        };
        for k in 0..ct.len() {
            if ct[k] == INF {
                continue;
            }
            let mut i = 0;
            while i < a.len() {
                let Some(kv) = key(i, k) else {
                    i += 1;
                    continue;
                };
                let mut e = i;
                while key(e + 1, k) == Some(kv) {
                    e += 1;
                }
                if kv.0 + kv.1 != ct[k] {
                    let off = (kv.2 + kv.3) as i64 - c[k].unwrap() as i64;
                    if off.abs() <= OFFSET {
                        out.entry(off).or_default().push(Segment { i1: i, i2: e, k, level });
                    }
                }
                i = e + 1;
            }
        }
        for v in out.values_mut() {
            v.sort();
        }
        out
    }

    #[test]
    fn level_states_match_definitions() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for round in 0..60 {
            let n = rng.random_range(1..=128);
            let nb = rng.random_range(1..=128);
            let m = [4u64, 64, 300, 1000][round % 4];
            let p = super::super::prime::sample_prime(m, &crate::types::SeedCtx::new(round as u64));
            let up = rng.random_bool(0.5);
            let a_full = monotone(&mut rng, n, m, up);
            let up_b = rng.random_bool(0.5);
            let b_full = monotone(&mut rng, nb, m, up_b);
            for x in 0..3 {
                for y in 0..3 {
                    let (Some((a, _)), Some((b, _))) = (class_slice(&a_full, p, x), class_slice(&b_full, p, y)) else {
                        continue;
                    };
                    let truth = minplus_raw(&a, &b);
                    let ct = tilde_naive(
                        &a.iter().map(|&v| if v == INF { INF } else { v / p }).collect::<Vec<_>>(),
                        &b.iter().map(|&v| if v == INF { INF } else { v / p }).collect::<Vec<_>>(),
                    );
                    let mut states = Vec::new();
                    let got = refine_pair(&a, &b, p, Some(&mut |s| states.push(s)));
                    assert_eq!(got, truth);
                    let mut prev: Option<&ConvLevelState> = None;
                    for st in &states {
                        let l = st.level;
                        let slack = 2 * ((1u64 << l) - 1);
                        for (k, c) in st.c_level.iter().enumerate() {
                            if let Some(c) = c {
                                let r = truth[k] % p;
                                let lo = (r as i64 - slack as i64).div_euclid(1 << l);
                                let hi = (r + slack) >> l;
                                assert!(lo <= *c as i64 && *c <= hi, "property violated at level {l}");
                            }
                        }
                        let mut fps = st.false_positives.clone();
                        for v in fps.values_mut() {
                            v.sort();
                        }
                        let want = segments_by_definition(&a, &b, p, l, &ct, &st.c_level);
                        assert_eq!(fps, want, "false positive sets differ at level {l}");
                        if let Some(prev) = prev {
                            for seg in fps.values().flatten() {
                                assert!(prev.false_positives.values().flatten().any(|s| s.k == seg.k && s.i1 <= seg.i1 && seg.i2 <= s.i2));
                            }
                        }
                        prev = Some(st);
                    }
                }
            }
        }
    }
}
