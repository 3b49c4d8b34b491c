use rand::Rng;

use crate::knapsack_base::greedy_upper_bound;
use crate::types::{Item, KnapsackInstance, SeedCtx};

/// Weights uniform in `[1, w_max]`, profits uniform in `[1, p_max]`.
pub fn gen_random_instance(n: usize, w_max: i64, p_max: i64, t: i64, seed: &SeedCtx) -> KnapsackInstance {
    let mut rng = seed.rng();
    let items = (0..n)
        .map(|_| Item::new(rng.random_range(1..=w_max.max(1)), rng.random_range(1..=p_max.max(1))))
        .collect();
    KnapsackInstance::new(items, t.max(0)).expect("generated items are positive")
}

/// `(t / w_max) / (ÕPT / p_max)`, which is `Θ(1)` on balanced instances.
pub fn balance_ratio(instance: &KnapsackInstance) -> f64 {
    if instance.n() == 0 {
        return 1.0;
    }
    let cap = instance.capacity() as f64 / instance.w_max() as f64;
    let prof = greedy_upper_bound(instance) as f64 / instance.p_max() as f64;
    cap / prof
}

fn draw_balanced(n: usize, w_max: i64, p_max: i64, seed: &SeedCtx) -> KnapsackInstance {
    let mut rng = seed.rng();
    let w_max = w_max.max(1);
    let p_max = p_max.max(1);
    let base = p_max as f64 / (4.0 * w_max as f64);
    let items: Vec<Item> = (0..n)
        .map(|_| {
            let w = rng.random_range(1..=w_max);
            let f: f64 = rng.random_range(1.0..=4.0);
            let p = ((base * f * w as f64).round() as i64).clamp(1, p_max);
            Item::new(w, p)
        })
        .collect();
    let total: i64 = items.iter().map(|i| i.weight).sum();
    KnapsackInstance::new(items, (total + 1) / 2).expect("generated items are positive")
}

/// Profit-to-weight ratios spread by at most 4 and `t = ⌈Σw/2⌉`. Redraws
/// (on child streams) until the balance ratio lies in `[1/8, 8]`.
pub fn gen_balanced_instance(n: usize, w_max: i64, p_max: i64, seed: &SeedCtx) -> KnapsackInstance {
    let mut inst = draw_balanced(n, w_max, p_max, seed);
    for k in 0..64 {
        let r = balance_ratio(&inst);
        if (0.125..=8.0).contains(&r) {
            break;
        }
        inst = draw_balanced(n, w_max, p_max, &seed.child(k));
    }
    inst
}
