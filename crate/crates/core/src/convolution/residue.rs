use super::naive::INF;
use crate::types::{Ext, Fin, MonotoneSeq, PosInf};

/// `⌈x·p/3⌉`, the shift applied to residue class `x`.
pub fn class_shift(p: u64, x: u64) -> u64 {
    (x * p).div_ceil(3)
}

/// Residue class of `v`: the `x` with `v mod p ∈ [x·p/3, (x+1)·p/3)`.
pub fn class_of(v: u64, p: u64) -> u64 {
    3 * (v % p) / p
}

/// Entries of class `x` shifted down by [`class_shift`], other entries `∞`,
/// trimmed to the finite support. Returns the buffer and its offset.
pub fn class_slice(v: &[u64], p: u64, x: u64) -> Option<(Vec<u64>, usize)> {
    let keep = |&e: &u64| e != INF && class_of(e, p) == x;
    let first = v.iter().position(keep)?;
    let last = v.iter().rposition(keep)?;
    let s = class_shift(p, x);
    let out = v[first..=last].iter().map(|e| if keep(e) { e - s } else { INF }).collect();
    Some((out, first))
}

/// Number of maximal runs of `∞` strictly inside the finite support.
pub fn infinity_runs(v: &[u64]) -> usize {
    let mut runs = 0;
    let mut seen_finite = false;
    let mut in_gap = false;
    for &e in v {
        if e == INF {
            in_gap = seen_finite;
        } else {
            if in_gap {
                runs += 1;
            }
            in_gap = false;
            seen_finite = true;
        }
    }
    runs
}

/// One of the nine shifted class pairs.
#[derive(Clone, Debug)]
pub struct ResidueClassPair {
    pub x: u64,
    pub y: u64,
    pub a_shifted: MonotoneSeq,
    pub b_shifted: MonotoneSeq,
    /// `⌈x·p/3⌉ + ⌈y·p/3⌉`.
    pub shift_back: u64,
}

fn class_seq(seq: &MonotoneSeq, p: u64, x: u64) -> MonotoneSeq {
    let s = class_shift(p, x) as i64;
    let values = seq
        .values
        .iter()
        .map(|&v| match v {
            Fin(e) if class_of(e as u64, p) == x => Fin(e - s),
            _ => PosInf,
        })
        .collect::<Vec<Ext>>();
    MonotoneSeq::new(seq.start, values, seq.direction, seq.sentinel)
}

/// Splits `A` and `B` into the nine class pairs `(A^x − ⌈xp/3⌉, B^y − ⌈yp/3⌉)`.
///
/// Finite entries must be non-negative.
pub fn residue_split(a: &MonotoneSeq, b: &MonotoneSeq, p: u64) -> Vec<ResidueClassPair> {
    let mut out = Vec::with_capacity(9);
    for x in 0..3 {
        for y in 0..3 {
            out.push(ResidueClassPair {
                x,
                y,
                a_shifted: class_seq(a, p, x),
                b_shifted: class_seq(b, p, y),
                shift_back: class_shift(p, x) + class_shift(p, y),
            });
        }
    }
    out
}
