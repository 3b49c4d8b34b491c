use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Item {
    pub weight: i64,
    pub profit: i64,
    /// Internal padding items may have zero weight or profit.
    pub internal: bool,
}

impl Item {
    pub fn new(weight: i64, profit: i64) -> Self {
        Item { weight, profit, internal: false }
    }

    pub fn internal(weight: i64, profit: i64) -> Self {
        Item { weight, profit, internal: true }
    }
}

/// Items plus a capacity `t`. `n`, `w_max` and `p_max` are cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnapsackInstance {
    items: Vec<Item>,
    capacity: i64,
    w_max: i64,
    p_max: i64,
}

impl KnapsackInstance {
    /// Validates items: user items need positive weight and profit.
    pub fn new(items: Vec<Item>, capacity: i64) -> Result<Self> {
        if capacity < 0 {
            return Err(Error::NegativeCapacity(capacity));
        }
        for (index, it) in items.iter().enumerate() {
            if it.internal {
                if it.weight < 0 {
                    return Err(Error::NonPositiveWeight { index });
                }
                if it.profit < 0 {
                    return Err(Error::NonPositiveProfit { index });
                }
            } else {
                if it.weight <= 0 {
                    return Err(Error::NonPositiveWeight { index });
                }
                if it.profit <= 0 {
                    return Err(Error::NonPositiveProfit { index });
                }
            }
        }
        Ok(Self::new_unchecked(items, capacity))
    }

    pub(crate) fn new_unchecked(items: Vec<Item>, capacity: i64) -> Self {
        let w_max = items.iter().map(|i| i.weight).max().unwrap_or(0);
        let p_max = items.iter().map(|i| i.profit).max().unwrap_or(0);
        KnapsackInstance { items, capacity, w_max, p_max }
    }

    /// Convenience constructor from `(weight, profit)` pairs.
    pub fn from_pairs(pairs: &[(i64, i64)], capacity: i64) -> Result<Self> {
        Self::new(pairs.iter().map(|&(w, p)| Item::new(w, p)).collect(), capacity)
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn capacity(&self) -> i64 {
        self.capacity
    }

    pub fn n(&self) -> usize {
        self.items.len()
    }

    pub fn w_max(&self) -> i64 {
        self.w_max
    }

    pub fn p_max(&self) -> i64 {
        self.p_max
    }

    pub fn total_weight(&self) -> i64 {
        self.items.iter().map(|i| i.weight).sum()
    }

    pub fn total_profit(&self) -> i64 {
        self.items.iter().map(|i| i.profit).sum()
    }

    pub fn with_capacity(&self, capacity: i64) -> Self {
        KnapsackInstance { capacity, ..self.clone() }
    }

    /// Sub-instance on the given item indices (same capacity).
    pub fn subset(&self, indices: &[usize]) -> Self {
        Self::new_unchecked(indices.iter().map(|&i| self.items[i]).collect(), self.capacity)
    }
}

/// Result of [`normalize`].
#[derive(Clone, Debug)]
pub struct Normalized {
    /// Residual instance; empty when the answer is trivial.
    pub instance: KnapsackInstance,
    /// Position of each residual item in the input instance.
    pub original_index: Vec<usize>,
    /// `Some(Σp)` when every remaining item fits at once.
    pub trivial: Option<i64>,
    /// Indices (into the input) of the trivial solution.
    pub trivial_items: Vec<usize>,
}

/// Drops items heavier than `t`; flags the instance trivial when `t ≥ n·w_max`.
pub fn normalize(instance: &KnapsackInstance) -> Result<Normalized> {
    let inst = KnapsackInstance::new(instance.items.clone(), instance.capacity)?;
    let t = inst.capacity;
    let kept: Vec<usize> = (0..inst.n()).filter(|&i| inst.items[i].weight <= t).collect();
    let residual = inst.subset(&kept);
    let total: i128 = residual.items.iter().map(|i| i.weight as i128).sum();
    if t as i128 >= total {
        return Ok(Normalized {
            trivial: Some(residual.total_profit()),
            instance: KnapsackInstance::new_unchecked(Vec::new(), t),
            original_index: Vec::new(),
            trivial_items: kept,
        });
    }
    Ok(Normalized { instance: residual, original_index: kept, trivial: None, trivial_items: Vec::new() })
}
