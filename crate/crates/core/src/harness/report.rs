use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::io::instance_to_string;
use super::oracle::{brute_force_opt, BRUTE_FORCE_LIMIT};
use crate::error::Result;
use crate::knapsack_base::bellman_opt;
use crate::knapsack_main::{solve_with, Algo};
use crate::types::{KnapsackInstance, SeedCtx};

/// Largest `n·t` handed to the DP oracle.
pub const DP_ORACLE_LIMIT: i128 = 2_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Match,
    Mismatch,
    Unchecked,
}

/// One solver run. `millis` is the only field that varies between
/// identical invocations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algo: String,
    pub n: usize,
    pub t: i64,
    pub w_max: i64,
    pub p_max: i64,
    pub opt: i64,
    pub millis: f64,
    pub seed: String,
    pub verdict: Verdict,
    pub reps: usize,
    pub digest: String,
    /// Chosen item indices, ascending.
    pub items: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expected: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reproducer: Option<String>,
}

/// SHA-256 of the canonical text form.
pub fn digest(instance: &KnapsackInstance) -> String {
    hex::encode(Sha256::digest(instance_to_string(instance).as_bytes()))
}

/// Exact optimum by brute force or DP when the instance is small enough.
pub fn oracle_opt(instance: &KnapsackInstance) -> Option<i64> {
    if instance.n() <= BRUTE_FORCE_LIMIT && instance.n() <= 22 {
        return brute_force_opt(instance).ok().map(|r| r.0);
    }
    let work = instance.n() as i128 * (instance.capacity() as i128 + 1);
    (work <= DP_ORACLE_LIMIT).then(|| bellman_opt(instance))
}

/// Runs a solver once and fills in everything except the verdict.
pub fn run_solver(instance: &KnapsackInstance, algo: Algo, reps: Option<usize>, seed: &SeedCtx) -> Result<RunReport> {
    let start = Instant::now();
    let solved = solve_with(instance, algo, reps, seed)?;
    let millis = start.elapsed().as_secs_f64() * 1e3;
    let sol = &solved.solution;
    let sound = sol.is_consistent(instance) && sol.total_weight <= instance.capacity() && sol.total_profit == solved.opt;
    Ok(RunReport {
        algo: solved.algo.name().to_string(),
        n: instance.n(),
        t: instance.capacity(),
        w_max: instance.w_max(),
        p_max: instance.p_max(),
        opt: solved.opt,
        millis,
        seed: seed.label(),
        verdict: if sound { Verdict::Unchecked } else { Verdict::Mismatch },
        reps: reps.unwrap_or_else(|| crate::balancing::default_reps(instance.n())),
        digest: digest(instance),
        items: sol.indices.clone(),
        expected: None,
        reproducer: None,
    })
}

/// Writes a parseable instance file whose comment header records the run.
pub fn write_reproducer(dir: &Path, instance: &KnapsackInstance, report: &RunReport) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let seed = report.seed.replace([':', '.'], "_");
    let path = dir.join(format!("{}-{}-{}.txt", report.algo, &report.digest[..16], seed));
    let mut text = format!("# algo {}\n# seed {}\n# reps {}\n# reported {}\n", report.algo, report.seed, report.reps, report.opt);
    if let Some(e) = report.expected {
        text.push_str(&format!("# expected {e}\n"));
    }
    text.push_str(&instance_to_string(instance));
    std::fs::write(&path, text)?;
    Ok(path)
}

/// Solves, compares against the oracle when one applies, and stores a
/// reproducer under `failures` on any mismatch.
pub fn cross_check(
    instance: &KnapsackInstance,
    algo: Algo,
    reps: Option<usize>,
    seed: &SeedCtx,
    failures: &Path,
) -> Result<RunReport> {
    let mut report = run_solver(instance, algo, reps, seed)?;
    report.expected = oracle_opt(instance);
    if let Some(e) = report.expected {
        if report.verdict != Verdict::Mismatch {
            report.verdict = if e == report.opt { Verdict::Match } else { Verdict::Mismatch };
        }
    }
    if report.verdict == Verdict::Mismatch {
        report.reproducer = Some(write_reproducer(failures, instance, &report)?.display().to_string());
    }
    Ok(report)
}
