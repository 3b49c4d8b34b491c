use super::instance::KnapsackInstance;

/// Chosen item indices with cached totals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Solution {
    pub indices: Vec<usize>,
    pub total_weight: i64,
    pub total_profit: i64,
}

impl Solution {
    pub fn from_indices(instance: &KnapsackInstance, mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        let items = instance.items();
        let total_weight = indices.iter().map(|&i| items[i].weight).sum();
        let total_profit = indices.iter().map(|&i| items[i].profit).sum();
        Solution { indices, total_weight, total_profit }
    }

    /// Recomputes the totals and compares with the cached ones.
    pub fn is_consistent(&self, instance: &KnapsackInstance) -> bool {
        let fresh = Solution::from_indices(instance, self.indices.clone());
        let mut dedup = fresh.indices.clone();
        dedup.dedup();
        dedup.len() == fresh.indices.len()
            && fresh.total_weight == self.total_weight
            && fresh.total_profit == self.total_profit
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cached_totals() {
        let inst = KnapsackInstance::from_pairs(&[(2, 3), (3, 4), (5, 1)], 9).unwrap();
        let s = Solution::from_indices(&inst, vec![2, 0]);
        assert_eq!((s.total_weight, s.total_profit), (7, 4));
        assert!(s.is_consistent(&inst));
        let bad = Solution { indices: vec![0, 0], total_weight: 4, total_profit: 6 };
        assert!(!bad.is_consistent(&inst));
    }
}
