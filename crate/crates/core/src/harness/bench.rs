use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::gen::{gen_balanced_instance, gen_random_instance};
use super::report::{run_solver, RunReport};
use crate::convolution::{monotone_minplus_rect_with, Strategy};
use crate::error::Result;
use crate::knapsack_main::Algo;
use crate::types::{Direction, MonotoneSeq, SeedCtx, Sentinel};

/// Timings over a size ladder with a fitted log-log slope.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub label: String,
    pub points: Vec<(usize, f64)>,
    pub slope: Option<f64>,
}

impl ScalingFit {
    pub fn new(label: impl Into<String>, points: Vec<(usize, f64)>) -> Self {
        let xy: Vec<(f64, f64)> = points.iter().map(|&(n, ms)| (n as f64, ms)).collect();
        ScalingFit { label: label.into(), slope: fit_slope(&xy), points }
    }

    /// `label,size,millis` rows without a header.
    pub fn to_csv(&self) -> String {
        self.points.iter().map(|(n, ms)| format!("{},{n},{ms:.3}\n", self.label)).collect()
    }
}

/// Least-squares slope of `ln y` against `ln x`; `None` with fewer than two
/// distinct sizes or a non-positive coordinate.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 1e-12).then(|| sxy / sxx)
}

/// Random non-decreasing sequence of length `n` with entries in `[0, m]`.
pub fn random_monotone(n: usize, m: i64, seed: &SeedCtx) -> MonotoneSeq {
    let mut rng = seed.rng();
    let mut v: Vec<i64> = (0..n).map(|_| rng.random_range(0..=m)).collect();
    v.sort_unstable();
    MonotoneSeq::from_finite(0, &v, Direction::NonDecreasing, Sentinel::PosInf)
}

/// Times `monotone_minplus_rect` with `M = n` at each size.
///
/// Each size is rerun on fresh inputs and a fresh prime until `min_ms` of
/// wall time is spent (at least once, at most [`MAX_LADDER_REPS`] times);
/// the point is the mean time per run.
pub fn conv_ladder(sizes: &[usize], strategy: Strategy, seed: &SeedCtx, min_ms: f64) -> Result<ScalingFit> {
    let mut points = Vec::with_capacity(sizes.len());
    for (i, &n) in sizes.iter().enumerate() {
        let (mut total, mut runs) = (0.0, 0u64);
        while runs == 0 || (total < min_ms && runs < MAX_LADDER_REPS) {
            let s = seed.child_of(&[i as u64, runs]);
            let a = random_monotone(n, n as i64, &s.child(0));
            let b = random_monotone(n, n as i64, &s.child(1));
            let start = Instant::now();
            monotone_minplus_rect_with(&a, &b, n as i64, &s.child(2), strategy)?;
            total += start.elapsed().as_secs_f64() * 1e3;
            runs += 1;
        }
        points.push((n, total / runs as f64));
    }
    Ok(ScalingFit::new(format!("minplus-{strategy:?}").to_lowercase(), points))
}

pub const MAX_LADDER_REPS: u64 = 64;

/// Solver benchmark: every algorithm on one instance per size.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteSpec {
    pub algos: Vec<Algo>,
    pub sizes: Vec<usize>,
    pub w_max: i64,
    pub p_max: i64,
    /// Balanced instances when set, else uniform with `t = n·w_max/4`.
    pub balanced: bool,
    pub reps: Option<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct BenchReport {
    pub runs: Vec<RunReport>,
    pub fits: Vec<ScalingFit>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("label,size,millis\n");
        for f in &self.fits {
            s.push_str(&f.to_csv());
        }
        s
    }
}

pub fn run_benchmark(spec: &SuiteSpec) -> Result<BenchReport> {
    let root = SeedCtx::new(spec.seed);
    let instances: Vec<_> = spec
        .sizes
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let s = root.child_of(&[0, i as u64]);
            if spec.balanced {
                gen_balanced_instance(n, spec.w_max, spec.p_max, &s)
            } else {
                gen_random_instance(n, spec.w_max, spec.p_max, n as i64 * spec.w_max / 4, &s)
            }
        })
        .collect();
    let mut report = BenchReport::default();
    for (k, &algo) in spec.algos.iter().enumerate() {
        let mut points = Vec::new();
        for (i, inst) in instances.iter().enumerate() {
            let r = run_solver(inst, algo, spec.reps, &root.child_of(&[1, k as u64, i as u64]))?;
            points.push((inst.n(), r.millis.max(1e-3)));
            report.runs.push(r);
        }
        report.fits.push(ScalingFit::new(algo.name(), points));
    }
    Ok(report)
}
