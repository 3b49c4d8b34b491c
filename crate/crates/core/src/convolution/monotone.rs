use super::naive::{minplus_raw, FIN_LIMIT, INF, NEG};
use super::ntt;
use super::prime::sample_prime;
use super::refine::refine_pair;
use super::residue::{class_shift, class_slice};
use crate::error::{Error, Result};
use crate::types::{negate_shift, Direction, Ext, Fin, MonotoneSeq, PosInf, SeedCtx, Sentinel};

/// How a bounded monotone min-plus product is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Pick by estimated cost.
    Auto,
    /// Quadratic scan.
    Naive,
    /// Counting product over value-indexed indicators, `O(nM log)`.
    ValueFft,
    /// Prime sampling plus bit-by-bit refinement, `Õ(n√M)`.
    Refinement,
}

/// Threshold below which the refinement is never chosen by `Auto`.
pub const MIN_SQRT_M: u64 = 100;

fn choose(la: usize, lb: usize, m: u64) -> Strategy {
    let naive = (la as f64) * (lb as f64);
    if la.min(lb) <= 32 || naive <= 65_536.0 {
        return Strategy::Naive;
    }
    let size = (2.0 * m as f64 + 1.0) * (la + lb) as f64;
    let fft = 12.0 * size * size.log2().max(1.0);
    let sqrt_m = (m as f64).sqrt();
    let refine = if m.isqrt() >= MIN_SQRT_M {
        let n = (la + lb) as f64;
        400.0 * n * sqrt_m * (2.0 * sqrt_m).log2() * (n * sqrt_m).log2()
    } else {
        f64::INFINITY
    };
    if naive <= fft && naive <= refine {
        Strategy::Naive
    } else if fft <= refine {
        Strategy::ValueFft
    } else {
        Strategy::Refinement
    }
}

fn value_fft(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let span = 2 * m as usize + 1;
    let pack = |v: &[u64]| {
        let mut out = vec![0u32; span * (v.len() - 1) + m as usize + 1];
        for (i, &x) in v.iter().enumerate() {
            if x != INF {
                out[x as usize + span * i] = 1;
            }
        }
        out
    };
    let prod = ntt::multiply_small(pack(a), pack(b));
    (0..a.len() + b.len() - 1)
        .map(|k| {
            let row = &prod[(span * k).min(prod.len())..(span * (k + 1)).min(prod.len())];
            row.iter().position(|&c| c != 0).map_or(INF, |v| v as u64)
        })
        .collect()
}

fn refinement(a: &[u64], b: &[u64], m: u64, seed: &SeedCtx) -> Vec<u64> {
    let p = sample_prime(m, &seed.child(0));
    let mut out = vec![INF; a.len() + b.len() - 1];
    for x in 0..3 {
        let Some((ax, oa)) = class_slice(a, p, x) else { continue };
        for y in 0..3 {
            let Some((by, ob)) = class_slice(b, p, y) else { continue };
            let shift = class_shift(p, x) + class_shift(p, y);
            let c = refine_pair(&ax, &by, p, None);
            for (o, v) in out[oa + ob..].iter_mut().zip(c) {
                if v != INF && v + shift < *o {
                    *o = v + shift;
                }
            }
        }
    }
    out
}

/// Min-plus product of raw buffers whose finite entries are each monotone.
///
/// Finite entries are shifted to start at zero before dispatching, so any
/// bounded range works; `M` is the larger of the two value spans.
pub fn minplus_monotone_raw(a: &[u64], b: &[u64], seed: &SeedCtx, strategy: Strategy) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = a.len() + b.len() - 1;
    let span = |v: &[u64]| {
        let f = v.iter().position(|&x| x != INF)?;
        let l = v.iter().rposition(|&x| x != INF)?;
        let lo = v[f..=l].iter().copied().filter(|&x| x != INF).min()?;
        let hi = v[f..=l].iter().copied().filter(|&x| x != INF).max()?;
        Some((f, l, lo, hi))
    };
    let (Some((fa, la, loa, hia)), Some((fb, lb, lob, hib))) = (span(a), span(b)) else {
        return vec![INF; out_len];
    };
    let m = (hia - loa).max(hib - lob);
    let norm = |v: &[u64], lo: u64| v.iter().map(|&x| if x == INF { INF } else { x - lo }).collect::<Vec<u64>>();
    let (na, nb) = (norm(&a[fa..=la], loa), norm(&b[fb..=lb], lob));
    let strategy = match strategy {
        Strategy::Auto => choose(na.len(), nb.len(), m),
        s => s,
    };
    let core = match strategy {
        Strategy::Naive | Strategy::Auto => minplus_raw(&na, &nb),
        Strategy::ValueFft => value_fft(&na, &nb, m),
        Strategy::Refinement => refinement(&na, &nb, m, seed),
    };
    let mut out = vec![INF; out_len];
    for (o, v) in out[fa + fb..].iter_mut().zip(core) {
        if v != INF {
            *o = v + loa + lob;
        }
    }
    out
}

/// Max-plus counterpart on `i64` buffers with [`NEG`] markers.
pub fn maxplus_monotone_raw(a: &[i64], b: &[i64], seed: &SeedCtx, strategy: Strategy) -> Vec<i64> {
    let hi = |v: &[i64]| v.iter().copied().filter(|&x| x > NEG).max();
    let (Some(ha), Some(hb)) = (hi(a), hi(b)) else {
        return vec![NEG; (a.len() + b.len()).saturating_sub(1)];
    };
    let flip = |v: &[i64], h: i64| v.iter().map(|&x| if x > NEG { (h - x) as u64 } else { INF }).collect::<Vec<u64>>();
    minplus_monotone_raw(&flip(a, ha), &flip(b, hb), seed, strategy)
        .into_iter()
        .map(|c| if c == INF { NEG } else { ha + hb - c as i64 })
        .collect()
}

fn check_input(seq: &MonotoneSeq, m: i64) -> Result<Vec<u64>> {
    if !seq.direction.is_monotone() {
        return Err(Error::NotMonotone);
    }
    seq.values
        .iter()
        .map(|&v| match v {
            Fin(x) if (0..=m).contains(&x) => Ok(x as u64),
            Fin(x) => Err(Error::OutOfRange { value: x, bound: m }),
            PosInf => Ok(INF),
            Ext::NegInf => Err(Error::OutOfRange { value: i64::MIN, bound: m }),
        })
        .collect()
}

fn out_direction(a: &MonotoneSeq, b: &MonotoneSeq) -> Direction {
    if a.direction == b.direction {
        a.direction
    } else {
        Direction::Unknown
    }
}

/// Min-plus product of two bounded monotone sequences; always exact.
///
/// Finite entries must lie in `[0, M]`; `+∞` entries are allowed.
pub fn monotone_minplus_rect(a: &MonotoneSeq, b: &MonotoneSeq, m: i64, seed: &SeedCtx) -> Result<MonotoneSeq> {
    monotone_minplus_rect_with(a, b, m, seed, Strategy::Auto)
}

pub fn monotone_minplus_rect_with(
    a: &MonotoneSeq,
    b: &MonotoneSeq,
    m: i64,
    seed: &SeedCtx,
    strategy: Strategy,
) -> Result<MonotoneSeq> {
    if m >= FIN_LIMIT {
        return Err(Error::OutOfRange { value: m, bound: FIN_LIMIT });
    }
    let (ra, rb) = (check_input(a, m)?, check_input(b, m)?);
    let values = minplus_monotone_raw(&ra, &rb, seed, strategy)
        .into_iter()
        .map(|v| if v == INF { PosInf } else { Fin(v as i64) })
        .collect();
    Ok(MonotoneSeq::new(a.start + b.start, values, out_direction(a, b), Sentinel::PosInf))
}

/// Max-plus product via `M − ·` on both inputs and `2M − ·` on the result.
pub fn monotone_maxplus_rect(a: &MonotoneSeq, b: &MonotoneSeq, m: i64, seed: &SeedCtx) -> Result<MonotoneSeq> {
    monotone_maxplus_rect_with(a, b, m, seed, Strategy::Auto)
}

pub fn monotone_maxplus_rect_with(
    a: &MonotoneSeq,
    b: &MonotoneSeq,
    m: i64,
    seed: &SeedCtx,
    strategy: Strategy,
) -> Result<MonotoneSeq> {
    let c = monotone_minplus_rect_with(&negate_shift(a, m)?, &negate_shift(b, m)?, m, seed, strategy)?;
    let values = c.values.iter().map(|&v| Fin(2 * m) - v).collect();
    Ok(MonotoneSeq::new(c.start, values, out_direction(a, b), Sentinel::NegInf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolution::naive::{maxplus_naive, minplus_naive};
    use crate::types::NegInf;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const ALL: [Strategy; 4] = [Strategy::Auto, Strategy::Naive, Strategy::ValueFft, Strategy::Refinement];

    fn seq(v: &[i64], dir: Direction) -> MonotoneSeq {
        MonotoneSeq::from_finite(0, v, dir, Sentinel::PosInf)
    }

    #[test]
    fn ramps_and_constants() {
        let ramp: Vec<i64> = (0..16).collect();
        let r = seq(&ramp, Direction::NonDecreasing);
        for s in ALL {
            let c = monotone_minplus_rect_with(&r, &r, 15, &SeedCtx::new(1), s).unwrap();
            assert_eq!(c.values, (0..31).map(Fin).collect::<Vec<_>>());
            let a = seq(&[4; 9], Direction::NonDecreasing);
            let b = seq(&[6; 5], Direction::NonIncreasing);
            let c = monotone_minplus_rect_with(&a, &b, 6, &SeedCtx::new(1), s).unwrap();
            assert_eq!(c.values, vec![Fin(10); 13]);
            let c = monotone_maxplus_rect_with(&a, &b, 6, &SeedCtx::new(1), s).unwrap();
            assert_eq!(c.values, vec![Fin(10); 13]);
        }
    }

    #[test]
    fn maxplus_small_example() {
        let a = seq(&[0, 1], Direction::NonDecreasing);
        let b = seq(&[0, 2], Direction::NonDecreasing);
        for s in ALL {
            let c = monotone_maxplus_rect_with(&a, &b, 2, &SeedCtx::new(0), s).unwrap();
            assert_eq!(c.values, vec![Fin(0), Fin(2), Fin(3)]);
            assert_eq!(c.sentinel, Sentinel::NegInf);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let a = seq(&[0, 5], Direction::NonDecreasing);
        assert!(monotone_minplus_rect(&a, &a, 4, &SeedCtx::new(0)).is_err());
        let u = seq(&[0, 1], Direction::Unknown);
        assert!(monotone_minplus_rect(&u, &u, 4, &SeedCtx::new(0)).is_err());
    }

    fn random_seq(rng: &mut ChaCha8Rng, m: i64, sentinel: Sentinel) -> MonotoneSeq {
        let n = rng.random_range(1..=80);
        let mut v: Vec<i64> = (0..n).map(|_| rng.random_range(0..=m)).collect();
        v.sort_unstable();
        let mut vals: Vec<Ext> = v.into_iter().map(Fin).collect();
        let dir = if rng.random_bool(0.5) {
            Direction::NonDecreasing
        } else {
            vals.reverse();
            Direction::NonIncreasing
        };
        if rng.random_bool(0.3) {
            let k = rng.random_range(0..=vals.len() / 2);
            let inf = if sentinel == Sentinel::PosInf { PosInf } else { NegInf };
            match dir {
                Direction::NonDecreasing if inf == PosInf => vals.iter_mut().rev().take(k).for_each(|x| *x = inf),
                _ => vals.iter_mut().take(k).for_each(|x| *x = inf),
            }
        }
        MonotoneSeq::new(rng.random_range(-3..3), vals, dir, sentinel)
    }

    #[test]
    fn strategies_agree_with_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for round in 0..300 {
            let m = [4i64, 64, 512][round % 3];
            let a = random_seq(&mut rng, m, Sentinel::PosInf);
            let b = random_seq(&mut rng, m, Sentinel::PosInf);
            let want = minplus_naive(&a, &b);
            for s in ALL {
                let got = monotone_minplus_rect_with(&a, &b, m, &SeedCtx::new(round as u64), s).unwrap();
                assert_eq!(got.values, want.values, "min {s:?}");
                assert_eq!(got.start, want.start);
            }
            let a = random_seq(&mut rng, m, Sentinel::NegInf);
            let b = random_seq(&mut rng, m, Sentinel::NegInf);
            let want = maxplus_naive(&a, &b);
            for s in ALL {
                let got = monotone_maxplus_rect_with(&a, &b, m, &SeedCtx::new(round as u64), s).unwrap();
                assert_eq!(got.values, want.values, "max {s:?}");
            }
        }
    }

    #[test]
    fn raw_maxplus_handles_offsets() {
        let a = [NEG, 5, 9, 20];
        let b = [100, 101, NEG];
        let got = maxplus_monotone_raw(&a, &b, &SeedCtx::new(2), Strategy::Refinement);
        assert_eq!(got, crate::convolution::naive::maxplus_raw(&a, &b));
    }
}
