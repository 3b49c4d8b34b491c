use std::cmp::Ordering;

use crate::types::KnapsackInstance;

/// Item order by profit/weight ratio, best first; ties keep input order.
pub fn ratio_order(instance: &KnapsackInstance) -> Vec<usize> {
    let items = instance.items();
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (&items[a], &items[b]);
        let lhs = y.profit as i128 * x.weight as i128;
        let rhs = x.profit as i128 * y.weight as i128;
        lhs.cmp(&rhs).then(a.cmp(&b))
    });
    order
}

pub(crate) fn ratio_cmp(wa: i64, pa: i64, wb: i64, pb: i64) -> Ordering {
    (pa as i128 * wb as i128).cmp(&(pb as i128 * wa as i128))
}

/// Profit of the greedy prefix plus the first item that does not fit.
///
/// Lies in `[OPT, 2·OPT]` for normalized instances.
pub fn greedy_upper_bound(instance: &KnapsackInstance) -> i64 {
    let items = instance.items();
    let mut room = instance.capacity();
    let mut profit = 0;
    for i in ratio_order(instance) {
        profit += items[i].profit;
        if items[i].weight > room {
            return profit;
        }
        room -= items[i].weight;
    }
    profit
}
