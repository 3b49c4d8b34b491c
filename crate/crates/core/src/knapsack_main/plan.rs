use crate::types::IntInterval;

/// Depth and windows of the partition tree.
///
/// Level `ℓ` has `2^ℓ` groups; a group at level `ℓ` is expected to carry
/// about `t/2^ℓ` weight and `ÕPT/2^ℓ` profit of an optimal solution, and its
/// windows extend `η·√(Δ/2^ℓ)` around that.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeLevelPlan {
    pub q: u32,
    pub eta: f64,
    pub t: i64,
    pub opt_tilde: i64,
    pub w_max: i64,
    pub p_max: i64,
    pub delta_w: f64,
    pub delta_p: f64,
    pub weight_cap: i64,
    pub profit_cap: i64,
}

fn around(center: f64, radius: f64, cap: i64) -> IntInterval {
    let lo = ((center - radius).floor() as i64).max(0);
    let hi = ((center + radius).ceil() as i64).min(cap);
    IntInterval::new(lo, hi)
}

/// `⌈log₂ n⌉` for `n ≥ 1`.
pub fn ceil_log2(n: usize) -> u32 {
    usize::BITS - n.max(1).saturating_sub(1).leading_zeros()
}

impl TreeLevelPlan {
    pub fn new(n: usize, t: i64, opt_tilde: i64, w_max: i64, p_max: i64, q: u32) -> Self {
        TreeLevelPlan {
            q,
            eta: 17.0 * ceil_log2(n) as f64,
            t,
            opt_tilde,
            w_max,
            p_max,
            delta_w: t as f64 * w_max as f64,
            delta_p: opt_tilde as f64 * p_max as f64,
            weight_cap: i64::MAX / 4,
            profit_cap: i64::MAX / 4,
        }
    }

    pub fn with_caps(mut self, weight_cap: i64, profit_cap: i64) -> Self {
        self.weight_cap = weight_cap;
        self.profit_cap = profit_cap;
        self
    }

    /// Largest `q` with `2^q ≤ min(t/w_max, ÕPT/p_max, n)`.
    pub fn balanced_depth(n: usize, t: i64, opt_tilde: i64, w_max: i64, p_max: i64) -> u32 {
        let mut q = 0;
        while q < 62 {
            let g = 1i128 << (q + 1);
            if g * w_max as i128 > t as i128 || g * p_max as i128 > opt_tilde as i128 || g > n as i128 {
                break;
            }
            q += 1;
        }
        q
    }

    fn scale(&self, level: u32) -> f64 {
        (1u64 << level) as f64
    }

    pub fn weight_window(&self, level: u32) -> IntInterval {
        let s = self.scale(level);
        around(self.t as f64 / s, (self.delta_w / s).sqrt() * self.eta, self.weight_cap)
    }

    pub fn profit_window(&self, level: u32) -> IntInterval {
        let s = self.scale(level);
        around(self.opt_tilde as f64 / s, (self.delta_p / s).sqrt() * self.eta, self.profit_cap)
    }

    pub fn weight_star(&self) -> IntInterval {
        IntInterval::new(0, self.weight_window(self.q).hi)
    }

    pub fn profit_star(&self) -> IntInterval {
        IntInterval::new(0, self.profit_window(self.q).hi)
    }

    /// Output capacities `[t ± √(t·w_max)]`.
    pub fn final_weight(&self) -> IntInterval {
        around(self.t as f64, self.delta_w.sqrt(), self.weight_cap)
    }

    /// Output profits `[ÕPT ± √(ÕPT·p_max)]`.
    pub fn final_profit(&self) -> IntInterval {
        around(self.opt_tilde as f64, self.delta_p.sqrt(), self.profit_cap)
    }
}
