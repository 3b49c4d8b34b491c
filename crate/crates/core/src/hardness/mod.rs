//! Bounded min-plus convolution verification and its two knapsack gadgets.

use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};
use crate::types::{KnapsackInstance, SeedCtx};

/// Arrays `a, b` of length `n` and `c` of length `2n−1`, entries in `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPVInstance {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
}

impl MPVInstance {
    pub fn new(a: Vec<i64>, b: Vec<i64>, c: Vec<i64>) -> Result<Self> {
        let n = a.len();
        if b.len() != n {
            return Err(Error::CountMismatch { expected: n, found: b.len() });
        }
        let want_c = (2 * n).saturating_sub(1);
        if c.len() != want_c {
            return Err(Error::CountMismatch { expected: want_c, found: c.len() });
        }
        if let Some(&v) = a.iter().chain(&b).chain(&c).find(|&&v| v < 0 || v > n as i64) {
            return Err(Error::OutOfRange { value: v, bound: n as i64 });
        }
        Ok(MPVInstance { a, b, c })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// `(A, B, C)` with `A[i] = a[i] + i·n` and likewise; all non-decreasing.
    pub fn monotonized(&self) -> (Vec<i64>, Vec<i64>, Vec<i64>) {
        let n = self.n() as i64;
        let lift = |v: &[i64]| v.iter().enumerate().map(|(i, &x)| x + i as i64 * n).collect::<Vec<_>>();
        (lift(&self.a), lift(&self.b), lift(&self.c))
    }

    /// Random instance; with `plant`, `c` is the exact min-plus product minus
    /// a random nonnegative slack, so the check holds.
    pub fn random(n: usize, plant: bool, seed: &SeedCtx) -> Self {
        let mut rng = seed.rng();
        let hi = n as i64;
        let a: Vec<i64> = (0..n).map(|_| rng.random_range(0..=hi)).collect();
        let b: Vec<i64> = (0..n).map(|_| rng.random_range(0..=hi)).collect();
        let c = if plant {
            min_plus(&a, &b).into_iter().map(|m| (m - rng.random_range(0..=1)).clamp(0, hi)).collect()
        } else {
            (0..(2 * n).saturating_sub(1)).map(|_| rng.random_range(0..=hi)).collect()
        };
        MPVInstance { a, b, c }
    }

    /// Text form: `n`, then `a`, `b`, `c` on one line each.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n());
        for row in [&self.a, &self.b, &self.c] {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = text
            .lines()
            .enumerate()
            .flat_map(|(ln, line)| line.split_whitespace().map(move |tok| (ln + 1, tok)));
        let mut next = |what: &str| -> Result<i64> {
            let (line, tok) =
                tokens.next().ok_or_else(|| Error::Malformed { line: 0, reason: format!("missing {what}") })?;
            tok.parse().map_err(|_| Error::Malformed { line, reason: format!("bad {what} `{tok}`") })
        };
        let n = next("n")?;
        if n < 0 {
            return Err(Error::Malformed { line: 1, reason: "negative n".into() });
        }
        let n = n as usize;
        let a = (0..n).map(|_| next("a entry")).collect::<Result<Vec<_>>>()?;
        let b = (0..n).map(|_| next("b entry")).collect::<Result<Vec<_>>>()?;
        let c = (0..(2 * n).saturating_sub(1)).map(|_| next("c entry")).collect::<Result<Vec<_>>>()?;
        MPVInstance::new(a, b, c)
    }
}

fn min_plus(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![i64::MAX; (a.len() + b.len()).saturating_sub(1)];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = out[i + j].min(x + y);
        }
    }
    out
}

/// Direct check that `c[i+j] ≤ a[i] + b[j]` for all `i, j`.
pub fn verify_naive(mpv: &MPVInstance) -> bool {
    min_plus(&mpv.a, &mpv.b).iter().zip(&mpv.c).all(|(m, c)| c <= m)
}

fn check_size(mpv: &MPVInstance) -> Result<i64> {
    if mpv.n() < 2 {
        return Err(Error::GadgetTooSmall(mpv.n()));
    }
    Ok(mpv.n() as i64)
}

/// Small weights, large profits: the check holds iff `OPT ≤ 112n²`.
pub fn gadget_small_weights(mpv: &MPVInstance) -> Result<KnapsackInstance> {
    let n = check_size(mpv)?;
    let (a, b, c) = mpv.monotonized();
    let mut pairs = Vec::with_capacity(4 * n as usize - 1);
    pairs.extend(a.iter().enumerate().map(|(i, &x)| (5 * n - i as i64, 2 * n * n - x)));
    pairs.extend(b.iter().enumerate().map(|(j, &x)| (10 * n - j as i64, 10 * n * n - x)));
    pairs.extend(c.iter().enumerate().map(|(k, &x)| (20 * n + k as i64, 100 * n * n + x)));
    KnapsackInstance::from_pairs(&pairs, 35 * n)
}

/// Large weights, small profits: the check holds iff `OPT < 112n`.
pub fn gadget_small_profits(mpv: &MPVInstance) -> Result<KnapsackInstance> {
    let n = check_size(mpv)?;
    let (a, b, c) = mpv.monotonized();
    let mut pairs = Vec::with_capacity(4 * n as usize - 1);
    pairs.extend(a.iter().enumerate().map(|(i, &x)| (5 * n * n + x, 2 * n + i as i64)));
    pairs.extend(b.iter().enumerate().map(|(j, &x)| (10 * n * n + x, 10 * n + j as i64)));
    pairs.extend(c.iter().enumerate().map(|(k, &x)| (20 * n * n - x, 100 * n - k as i64)));
    KnapsackInstance::from_pairs(&pairs, 35 * n * n - 1)
}

/// Threshold form of the first gadget.
pub fn small_weights_says_holds(opt: i64, n: usize) -> bool {
    opt <= 112 * (n * n) as i64
}

/// Threshold form of the second gadget.
pub fn small_profits_says_holds(opt: i64, n: usize) -> bool {
    opt < 112 * n as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knapsack_base::bellman_opt;

    fn zeros(n: usize) -> MPVInstance {
        MPVInstance::new(vec![0; n], vec![0; n], vec![0; 2 * n - 1]).unwrap()
    }

    #[test]
    fn verify_examples() {
        assert!(verify_naive(&zeros(2)));
        let bad = MPVInstance::new(vec![0, 0], vec![0, 0], vec![1, 0, 0]).unwrap();
        assert!(!verify_naive(&bad));
        let a = vec![2, 0, 1];
        let b = vec![1, 3, 0];
        let tight = MPVInstance::new(a.clone(), b.clone(), min_plus(&a, &b)).unwrap();
        assert!(verify_naive(&tight));
    }

    #[test]
    fn gadget_items_for_n_two() {
        let g = gadget_small_weights(&zeros(2)).unwrap();
        let pairs: Vec<(i64, i64)> = g.items().iter().map(|i| (i.weight, i.profit)).collect();
        assert_eq!(&pairs[..2], &[(10, 8), (9, 6)]);
        assert_eq!((g.n(), g.capacity()), (7, 70));
        let g = gadget_small_profits(&zeros(2)).unwrap();
        let pairs: Vec<(i64, i64)> = g.items().iter().map(|i| (i.weight, i.profit)).collect();
        assert_eq!(&pairs[..2], &[(20, 4), (22, 5)]);
        assert_eq!((g.n(), g.capacity()), (7, 139));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(MPVInstance::new(vec![0], vec![0, 0], vec![0]), Err(Error::CountMismatch { .. })));
        assert!(matches!(MPVInstance::new(vec![3], vec![0], vec![0]), Err(Error::OutOfRange { .. })));
        assert!(matches!(gadget_small_weights(&zeros(1)), Err(Error::GadgetTooSmall(1))));
    }

    #[test]
    fn monotonized_is_non_decreasing() {
        for s in 0..50 {
            let m = MPVInstance::random(7, s % 2 == 0, &SeedCtx::new(s));
            let (a, b, c) = m.monotonized();
            for v in [a, b, c] {
                assert!(v.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let m = MPVInstance::random(5, false, &SeedCtx::new(3));
        assert_eq!(MPVInstance::parse(&m.to_text()).unwrap(), m);
        assert!(matches!(MPVInstance::parse("2\n0 0\n0 x\n"), Err(Error::Malformed { line: 3, .. })));
    }

    #[test]
    fn gadgets_agree_with_direct_check() {
        for s in 0..60u64 {
            let n = 2 + (s % 7) as usize;
            let m = MPVInstance::random(n, s % 3 != 0, &SeedCtx::new(s));
            let holds = verify_naive(&m);
            let g1 = gadget_small_weights(&m).unwrap();
            assert_eq!(small_weights_says_holds(bellman_opt(&g1), n), holds, "seed {s}");
            let g2 = gadget_small_profits(&m).unwrap();
            assert_eq!(small_profits_says_holds(bellman_opt(&g2), n), holds, "seed {s}");
        }
    }
}
