use crate::types::{Direction, Ext, MonotoneSeq, Sentinel};

/// Marker for `+∞` in raw `u64` min-plus buffers.
pub const INF: u64 = u64::MAX;
/// Marker for `−∞` in raw `i64` max-plus buffers. Sums of two finite values
/// stay far above it as long as finite entries are bounded by [`FIN_LIMIT`].
pub const NEG: i64 = i64::MIN / 2;
pub const FIN_LIMIT: i64 = 1 << 60;

fn output_direction(a: &MonotoneSeq, b: &MonotoneSeq) -> Direction {
    if a.direction == b.direction {
        a.direction
    } else {
        Direction::Unknown
    }
}

fn convolve_by(a: &MonotoneSeq, b: &MonotoneSeq, init: Ext, better: fn(Ext, Ext) -> Ext, sentinel: Sentinel) -> MonotoneSeq {
    let start = a.start + b.start;
    if a.is_empty() || b.is_empty() {
        return MonotoneSeq::empty(start, output_direction(a, b), sentinel);
    }
    let mut out = vec![init; a.len() + b.len() - 1];
    for (i, &x) in a.values.iter().enumerate() {
        for (j, &y) in b.values.iter().enumerate() {
            out[i + j] = better(out[i + j], x + y);
        }
    }
    MonotoneSeq::new(start, out, output_direction(a, b), sentinel)
}

/// `C[k] = min_{i+j=k} A[i] + B[j]` over stored entries; `O(|A|·|B|)`.
pub fn minplus_naive(a: &MonotoneSeq, b: &MonotoneSeq) -> MonotoneSeq {
    convolve_by(a, b, Ext::PosInf, std::cmp::min, Sentinel::PosInf)
}

/// `C[k] = max_{i+j=k} A[i] + B[j]` over stored entries; `O(|A|·|B|)`.
pub fn maxplus_naive(a: &MonotoneSeq, b: &MonotoneSeq) -> MonotoneSeq {
    convolve_by(a, b, Ext::NegInf, std::cmp::max, Sentinel::NegInf)
}

/// Raw min-plus kernel on `u64` buffers with [`INF`] markers.
pub fn minplus_raw(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![INF; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == INF {
            continue;
        }
        for (o, &y) in out[i..].iter_mut().zip(b) {
            let s = x.saturating_add(y);
            if s < *o {
                *o = s;
            }
        }
    }
    out
}

/// Raw max-plus kernel on `i64` buffers with [`NEG`] markers.
pub fn maxplus_raw(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![NEG; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x <= NEG {
            continue;
        }
        for (o, &y) in out[i..].iter_mut().zip(b) {
            *o = (*o).max(x + y);
        }
    }
    for o in &mut out {
        if *o < NEG / 2 {
            *o = NEG;
        }
    }
    out
}

/// Raw max-plus with witnesses: `(value, i)` where `i` indexes `a`.
pub fn maxplus_raw_witness(a: &[i64], b: &[i64]) -> (Vec<i64>, Vec<u32>) {
    if a.is_empty() || b.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let mut out = vec![NEG; a.len() + b.len() - 1];
    let mut arg = vec![u32::MAX; out.len()];
    for (i, &x) in a.iter().enumerate() {
        if x <= NEG {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y > NEG && x + y > out[i + j] {
                out[i + j] = x + y;
                arg[i + j] = i as u32;
            }
        }
    }
    (out, arg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{Fin, NegInf, PosInf};

    fn seq(v: &[Ext]) -> MonotoneSeq {
        MonotoneSeq::new(0, v.to_vec(), Direction::Unknown, Sentinel::PosInf)
    }

    #[test]
    fn minplus_examples() {
        assert_eq!(minplus_naive(&seq(&[Fin(0)]), &seq(&[Fin(0)])).values, vec![Fin(0)]);
        assert_eq!(
            minplus_naive(&seq(&[Fin(0), Fin(1)]), &seq(&[Fin(0), Fin(2)])).values,
            vec![Fin(0), Fin(1), Fin(3)]
        );
        assert_eq!(
            minplus_naive(&seq(&[Fin(5), PosInf]), &seq(&[Fin(1), Fin(1)])).values,
            vec![Fin(6), Fin(6), PosInf]
        );
    }

    #[test]
    fn maxplus_examples() {
        assert_eq!(
            maxplus_naive(&seq(&[Fin(0), Fin(1)]), &seq(&[Fin(0), Fin(2)])).values,
            vec![Fin(0), Fin(2), Fin(3)]
        );
        assert_eq!(maxplus_naive(&seq(&[Fin(0)]), &seq(&[Fin(7)])).values, vec![Fin(7)]);
        assert_eq!(
            maxplus_naive(&seq(&[Fin(1), Fin(1)]), &seq(&[NegInf, Fin(0)])).values,
            vec![NegInf, Fin(1), Fin(1)]
        );
    }

    #[test]
    fn start_offsets_add() {
        let a = MonotoneSeq::from_finite(3, &[1, 2], Direction::NonDecreasing, Sentinel::PosInf);
        let b = MonotoneSeq::from_finite(-1, &[0], Direction::NonDecreasing, Sentinel::PosInf);
        let c = minplus_naive(&a, &b);
        assert_eq!((c.start, c.direction), (2, Direction::NonDecreasing));
    }

    #[test]
    fn raw_kernels_agree_with_oracle() {
        let a = [3u64, INF, 1, 7];
        let b = [0u64, 2, INF];
        let want = minplus_naive(
            &seq(&a.map(|v| if v == INF { PosInf } else { Fin(v as i64) })),
            &seq(&b.map(|v| if v == INF { PosInf } else { Fin(v as i64) })),
        );
        let got: Vec<Ext> = minplus_raw(&a, &b).iter().map(|&v| if v == INF { PosInf } else { Fin(v as i64) }).collect();
        assert_eq!(got, want.values);
        let (v, w) = maxplus_raw_witness(&[1, NEG, 4], &[0, 5]);
        assert_eq!(v, vec![1, 6, 4, 9]);
        assert_eq!(w, vec![0, 0, 2, 2]);
        assert_eq!(maxplus_raw(&[1, NEG, 4], &[0, 5]), v);
    }
}
