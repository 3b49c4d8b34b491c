use super::monotone::{maxplus_monotone_raw, Strategy};
use super::naive::{maxplus_raw, NEG};
use crate::error::{Error, Result};
use crate::types::{Direction, Ext, Fin, MonotoneSeq, NegInf, SeedCtx, Sentinel};

const BASE_LEN: usize = 32;

fn prefix_max(v: &[i64]) -> Vec<i64> {
    let mut best = NEG;
    v.iter()
        .map(|&x| {
            best = best.max(x);
            best
        })
        .collect()
}

fn clamp(v: &mut [i64]) {
    for x in v {
        if *x < NEG / 2 {
            *x = NEG;
        }
    }
}

fn square(a: &[i64], b: &[i64], seed: &SeedCtx, strategy: Strategy) -> Vec<i64> {
    let n = a.len();
    debug_assert_eq!(n, b.len());
    if n <= BASE_LEN {
        return maxplus_raw(a, b);
    }
    if n % 2 == 1 {
        let mut out = square(&a[..n - 1], &b[..n - 1], seed, strategy);
        out.resize(2 * n - 1, NEG);
        for k in n - 1..2 * n - 1 {
            let j = k - (n - 1);
            out[k] = out[k].max(a[n - 1] + b[j]).max(a[j] + b[n - 1]);
        }
        clamp(&mut out);
        return out;
    }
    let h = n / 2;
    let (a1, a2) = a.split_at(h);
    let (b1, b2) = b.split_at(h);
    let c11 = maxplus_monotone_raw(a1, &prefix_max(b1), &seed.child(0), strategy);
    let c12 = maxplus_monotone_raw(a1, &prefix_max(b2), &seed.child(1), strategy);
    let c21 = square(a2, b1, &seed.child(2), strategy);
    let c22 = square(a2, b2, &seed.child(3), strategy);
    let mut out = vec![NEG; 2 * n - 1];
    for (parts, offset) in [(&c11, 0), (&c12, h), (&c21, h), (&c22, n)] {
        for (o, &v) in out[offset..].iter_mut().zip(parts.iter()) {
            *o = (*o).max(v);
        }
    }
    out
}

/// Max-plus product where `a` is non-decreasing and `b` is arbitrary.
///
/// Rectangular inputs are squared up: a shorter `b` is padded with `−∞`, a
/// longer one is cut into blocks of `|a|`.
pub fn one_monotone_raw(a: &[i64], b: &[i64], seed: &SeedCtx, strategy: Strategy) -> Vec<i64> {
    let (na, nb) = (a.len(), b.len());
    if na == 0 || nb == 0 {
        return Vec::new();
    }
    let out_len = na + nb - 1;
    let mut out = vec![NEG; out_len];
    for (c, block) in b.chunks(na).enumerate() {
        let mut padded = block.to_vec();
        padded.resize(na, NEG);
        let part = square(a, &padded, &seed.child(c as u64), strategy);
        for (o, v) in out[c * na..].iter_mut().zip(part) {
            *o = (*o).max(v);
        }
    }
    out
}

/// Max-plus product of a monotone `A` with an arbitrary `B`, entries in `[0, M]`.
///
/// A non-increasing `A` is handled by reversing both inputs.
pub fn one_monotone_maxplus(a: &MonotoneSeq, b: &MonotoneSeq, m: i64, seed: &SeedCtx) -> Result<MonotoneSeq> {
    if !a.direction.is_monotone() || !a.is_consistent() {
        return Err(Error::NotMonotone);
    }
    let raw = |s: &MonotoneSeq| -> Result<Vec<i64>> {
        s.values
            .iter()
            .map(|&v| match v {
                Fin(x) if (0..=m).contains(&x) => Ok(x),
                Fin(x) => Err(Error::OutOfRange { value: x, bound: m }),
                NegInf => Ok(NEG),
                Ext::PosInf => Err(Error::OutOfRange { value: i64::MAX, bound: m }),
            })
            .collect()
    };
    let (mut ra, mut rb) = (raw(a)?, raw(b)?);
    let reversed = a.direction == Direction::NonIncreasing;
    if reversed {
        ra.reverse();
        rb.reverse();
    }
    let mut c = one_monotone_raw(&ra, &rb, seed, Strategy::Auto);
    if reversed {
        c.reverse();
    }
    let values = c.into_iter().map(|v| if v <= NEG { NegInf } else { Fin(v) }).collect();
    Ok(MonotoneSeq::new(a.start + b.start, values, Direction::Unknown, Sentinel::NegInf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolution::naive::maxplus_naive;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_example() {
        let a = MonotoneSeq::from_finite(0, &[0, 0, 0], Direction::NonDecreasing, Sentinel::NegInf);
        let b = MonotoneSeq::from_finite(0, &[3, 1, 2], Direction::Unknown, Sentinel::NegInf);
        let c = one_monotone_maxplus(&a, &b, 3, &SeedCtx::new(0)).unwrap();
        assert_eq!(c.values, [3, 3, 3, 2, 2].map(Fin).to_vec());
    }

    #[test]
    fn rejects_unsorted_a() {
        let a = MonotoneSeq::from_finite(0, &[2, 1], Direction::NonDecreasing, Sentinel::NegInf);
        assert!(one_monotone_maxplus(&a, &a, 3, &SeedCtx::new(0)).is_err());
    }

    #[test]
    fn recursion_matches_naive_with_forced_refinement() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for round in 0..40 {
            let na = rng.random_range(1..=150);
            let nb = rng.random_range(1..=150);
            let m = rng.random_range(0..=100);
            let mut a: Vec<i64> = (0..na).map(|_| rng.random_range(0..=m)).collect();
            a.sort_unstable();
            let b: Vec<i64> = (0..nb).map(|_| rng.random_range(0..=m)).collect();
            let want = maxplus_raw(&a, &b);
            for s in [Strategy::Refinement, Strategy::ValueFft, Strategy::Naive] {
                assert_eq!(one_monotone_raw(&a, &b, &SeedCtx::new(round), s), want);
            }
            let sa = MonotoneSeq::from_finite(0, &a, Direction::NonDecreasing, Sentinel::NegInf);
            let sb = MonotoneSeq::from_finite(0, &b, Direction::Unknown, Sentinel::NegInf);
            assert_eq!(one_monotone_maxplus(&sa, &sb, m, &SeedCtx::new(round)).unwrap().values, maxplus_naive(&sa, &sb).values);
            assert_eq!(
                one_monotone_maxplus(&sa.reversed(), &sb.reversed(), m, &SeedCtx::new(round)).unwrap().values,
                maxplus_naive(&sa.reversed(), &sb.reversed()).values
            );
        }
    }
}
