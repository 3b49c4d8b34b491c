use crate::error::{Error, Result};
use crate::types::{KnapsackInstance, Solution};

/// Largest instance the exhaustive oracle accepts.
pub const BRUTE_FORCE_LIMIT: usize = 25;
const PLAIN_LIMIT: usize = 20;

/// All subsets of `items` as `(weight, profit, mask)`.
fn subsets(items: &[(i64, i64)]) -> Vec<(i64, i64, u32)> {
    let mut out = vec![(0i64, 0i64, 0u32)];
    for (k, &(w, p)) in items.iter().enumerate() {
        let len = out.len();
        for i in 0..len {
            let (sw, sp, m) = out[i];
            out.push((sw + w, sp + p, m | 1 << k));
        }
    }
    out
}

/// Exact optimum by subset enumeration; splits in halves above 20 items.
pub fn brute_force_opt(instance: &KnapsackInstance) -> Result<(i64, Solution)> {
    let n = instance.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(n));
    }
    let t = instance.capacity();
    let items: Vec<(i64, i64)> = instance.items().iter().map(|i| (i.weight, i.profit)).collect();
    let (p, ids) = if n <= PLAIN_LIMIT {
        let best = subsets(&items).into_iter().filter(|s| s.0 <= t).max_by_key(|s| (s.1, std::cmp::Reverse(s.2))).unwrap();
        (best.1, mask_ids(best.2 as u64, 0))
    } else {
        let h = n / 2;
        let left = subsets(&items[..h]);
        let mut right = subsets(&items[h..]);
        right.sort_unstable_by_key(|s| (s.0, std::cmp::Reverse(s.1)));
        // running best profit over the sorted right half
        let mut best_upto: Vec<(i64, i64, u32)> = Vec::with_capacity(right.len());
        for s in right {
            match best_upto.last() {
                Some(b) if b.1 >= s.1 => best_upto.push((s.0, b.1, b.2)),
                _ => best_upto.push(s),
            }
        }
        let mut best = (0i64, 0u32, 0u32);
        for (lw, lp, lm) in left {
            if lw > t {
                continue;
            }
            let k = best_upto.partition_point(|s| s.0 <= t - lw);
            let (_, rp, rm) = best_upto[k - 1];
            if lp + rp > best.0 {
                best = (lp + rp, lm, rm);
            }
        }
        let mut ids = mask_ids(best.1 as u64, 0);
        ids.extend(mask_ids(best.2 as u64, h));
        (best.0, ids)
    };
    let sol = Solution::from_indices(instance, ids);
    debug_assert_eq!(sol.total_profit, p);
    Ok((p, sol))
}

fn mask_ids(mask: u64, offset: usize) -> Vec<usize> {
    (0..64).filter(|k| mask >> k & 1 == 1).map(|k| k + offset).collect()
}
