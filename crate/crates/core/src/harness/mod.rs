//! Instance I/O, generators, oracles, time budgets, run reports and
//! benchmarks.

mod bench;
mod budget;
mod gen;
mod io;
mod oracle;
mod report;

pub use bench::{conv_ladder, fit_slope, random_monotone, run_benchmark, BenchReport, ScalingFit, SuiteSpec};
pub use budget::{estimate_solve_cost, monte_carlo_budget, DEFAULT_BUDGET_FACTOR};
pub use gen::{balance_ratio, gen_balanced_instance, gen_random_instance};
pub use io::{instance_to_string, parse_instance, parse_instance_str, write_instance};
pub use oracle::{brute_force_opt, BRUTE_FORCE_LIMIT};
pub use report::{cross_check, digest, oracle_opt, run_solver, write_reproducer, RunReport, Verdict, DP_ORACLE_LIMIT};
