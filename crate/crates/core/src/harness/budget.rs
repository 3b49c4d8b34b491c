use std::sync::mpsc;
use std::sync::Arc;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::knapsack_main::{calibrated_costs, ceil_log2, choose_algo, Algo};
use crate::types::{KnapsackInstance, SeedCtx};

/// Default multiple of the estimated cost a single attempt may use.
pub const DEFAULT_BUDGET_FACTOR: f64 = 8.0;

/// Rough wall time for one solver run, from the calibrated cost model.
pub fn estimate_solve_cost(instance: &KnapsackInstance, algo: Algo) -> Duration {
    let algo = if algo == Algo::Auto { choose_algo(instance) } else { algo };
    let nanos = calibrated_costs(instance).iter().find(|c| c.0 == algo).map_or(0.0, |c| c.1);
    Duration::from_millis(200) + Duration::from_secs_f64(nanos * 1e-9)
}

/// Runs a Las Vegas routine under a time budget of `budget_factor × estimate`
/// per attempt, retrying on fresh child seeds up to `⌈log₂ n⌉` times.
///
/// The first attempt uses `seed` itself, so a generous budget gives the same
/// answer as a direct call. Overrunning attempts are left to finish on their
/// own thread; their results are discarded.
pub fn monte_carlo_budget<T, F>(op: F, estimate: Duration, budget_factor: f64, n: usize, seed: &SeedCtx) -> Result<T>
where
    T: Send + 'static,
    F: Fn(&SeedCtx) -> Result<T> + Send + Sync + 'static,
{
    if !budget_factor.is_finite() {
        return op(seed);
    }
    let limit = estimate.mul_f64(budget_factor.max(0.0));
    let attempts = (ceil_log2(n) as usize).max(1);
    let op = Arc::new(op);
    for k in 0..attempts {
        let ctx = if k == 0 { seed.clone() } else { seed.child(k as u64) };
        let (tx, rx) = mpsc::channel();
        let job = Arc::clone(&op);
        std::thread::spawn(move || {
            let _ = tx.send(job(&ctx));
        });
        if let Ok(res) = rx.recv_timeout(limit) {
            return res;
        }
    }
    Err(Error::BudgetExhausted { attempts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::gen_balanced_instance;
    use crate::knapsack_main::solve;

    #[test]
    fn infinite_budget_is_a_direct_call() {
        let inst = gen_balanced_instance(30, 50, 50, &SeedCtx::new(4));
        let direct = solve(&inst, Algo::Cuberoot, &SeedCtx::new(9)).unwrap();
        let i2 = inst.clone();
        let wrapped =
            monte_carlo_budget(move |s| solve(&i2, Algo::Cuberoot, s), Duration::ZERO, f64::INFINITY, 30, &SeedCtx::new(9))
                .unwrap();
        assert_eq!(direct, wrapped);
        let i3 = inst.clone();
        let est = estimate_solve_cost(&inst, Algo::Cuberoot);
        let budgeted =
            monte_carlo_budget(move |s| solve(&i3, Algo::Cuberoot, s), est, DEFAULT_BUDGET_FACTOR, 30, &SeedCtx::new(9))
                .unwrap();
        assert_eq!(direct, budgeted);
    }

    #[test]
    fn tiny_budget_exhausts() {
        let slow = |_: &SeedCtx| -> Result<u32> {
            std::thread::sleep(Duration::from_millis(200));
            Ok(1)
        };
        let err = monte_carlo_budget(slow, Duration::from_millis(1), 1.0, 16, &SeedCtx::new(0)).unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted { attempts: 4 }));
    }
}
