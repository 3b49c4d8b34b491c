use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tropknap::convolution::{minplus_naive, monotone_minplus_rect_with, Strategy};
use tropknap::hardness::{
    gadget_small_profits, gadget_small_weights, small_profits_says_holds, small_weights_says_holds, verify_naive,
    MPVInstance,
};
use tropknap::harness::{
    conv_ladder, cross_check, estimate_solve_cost, gen_balanced_instance, gen_random_instance, instance_to_string,
    monte_carlo_budget, parse_instance, random_monotone, run_benchmark, run_solver, RunReport, SuiteSpec, Verdict,
};
use tropknap::knapsack_base::bellman_opt;
use tropknap::knapsack_main::{solve_window, Algo};
use tropknap::{Ext, KnapsackInstance, MonotoneSeq, SeedCtx};

#[derive(Parser)]
#[command(name = "tropknap", version, about = "Pseudopolynomial 0/1 knapsack solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Root seed for all randomness.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit JSON instead of plain text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file.
    Solve {
        file: PathBuf,
        #[arg(long, default_value = "auto")]
        algo: Algo,
        #[arg(long)]
        reps: Option<usize>,
        /// Compare against brute force or the DP when the instance is small enough.
        #[arg(long)]
        oracle_check: bool,
        /// Also print the full window computed by a tree solver.
        #[arg(long)]
        window: bool,
        /// Per-attempt time budget as a multiple of the estimated cost.
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long, default_value = "failures")]
        failures: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Generate a random instance.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        w_max: i64,
        #[arg(long, default_value_t = 100)]
        p_max: i64,
        /// Capacity for uniform instances; defaults to n·w_max/4.
        #[arg(long)]
        t: Option<i64>,
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cross-check solvers against the oracle on files or generated instances.
    Check {
        files: Vec<PathBuf>,
        /// Number of generated balanced instances when no files are given.
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 40)]
        n: usize,
        #[arg(long, default_value_t = 60)]
        w_max: i64,
        #[arg(long, default_value_t = 60)]
        p_max: i64,
        /// Solvers to run; all of them when omitted.
        #[arg(long, value_delimiter = ',')]
        algo: Vec<Algo>,
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long, default_value = "failures")]
        failures: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Min-plus product of two random monotone sequences.
    Conv {
        #[arg(long)]
        n: usize,
        /// Entry bound; defaults to n.
        #[arg(long)]
        m: Option<i64>,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
        #[arg(long)]
        oracle_check: bool,
        /// Print the whole output sequence.
        #[arg(long)]
        window: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Knapsack gadget for a bounded min-plus verification instance.
    Gadget {
        /// MPV file; a random instance of size --n is used when omitted.
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "weights")]
        kind: GadgetKind,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Solve the gadget and compare its threshold with the direct check.
        #[arg(long)]
        oracle_check: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Scaling runs over a size ladder.
    Bench {
        #[arg(value_enum)]
        suite: BenchKind,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        algo: Vec<Algo>,
        #[arg(long, default_value_t = 1000)]
        w_max: i64,
        #[arg(long, default_value_t = 1000)]
        p_max: i64,
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
        #[arg(long)]
        csv: bool,
        /// Conv suite: rerun each size on fresh seeds for at least this long.
        #[arg(long, default_value_t = 0.0)]
        min_ms: f64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum GenKind {
    Random,
    Balanced,
}

#[derive(ValueEnum, Clone, Copy)]
enum GadgetKind {
    Weights,
    Profits,
}

#[derive(ValueEnum, Clone, Copy)]
enum BenchKind {
    Conv,
    Solvers,
}

#[derive(ValueEnum, Clone, Copy)]
enum StrategyArg {
    Auto,
    Naive,
    ValueFft,
    Refinement,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Naive => Strategy::Naive,
            StrategyArg::ValueFft => Strategy::ValueFft,
            StrategyArg::Refinement => Strategy::Refinement,
        }
    }
}

/// Outcome of a subcommand: whether every checked answer matched.
type Outcome = Result<bool>;

fn load(path: &Path) -> Result<KnapsackInstance> {
    parse_instance(path).map_err(|e| anyhow::anyhow!("{}: {e} (code {})", path.display(), e.code()))
}

fn ext_json(v: Ext) -> Value {
    v.finite().map_or(Value::Null, Value::from)
}

fn seq_json(s: &MonotoneSeq) -> Value {
    json!({ "start": s.start, "values": s.values.iter().map(|&v| ext_json(v)).collect::<Vec<_>>() })
}

fn seq_text(s: &MonotoneSeq) -> String {
    let vals: Vec<String> = s.values.iter().map(|v| v.finite().map_or("inf".into(), |x| x.to_string())).collect();
    format!("start {}: {}", s.start, vals.join(" "))
}

fn print_report(r: &RunReport, json: bool) {
    if json {
        println!("{}", serde_json::to_string(r).unwrap());
    } else {
        let expected = r.expected.map_or(String::new(), |e| format!(" expected {e}"));
        println!("{} n={} t={} opt={} verdict={:?}{expected} {:.1}ms", r.algo, r.n, r.t, r.opt, r.verdict, r.millis);
        if let Some(p) = &r.reproducer {
            println!("reproducer written to {p}");
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    file: &Path,
    algo: Algo,
    reps: Option<usize>,
    oracle_check: bool,
    window: bool,
    budget: Option<f64>,
    failures: &Path,
    common: &Common,
) -> Outcome {
    let inst = load(file)?;
    let seed = SeedCtx::new(common.seed);
    let go = {
        let (inst, failures) = (inst.clone(), failures.to_path_buf());
        move |s: &SeedCtx| {
            if oracle_check {
                cross_check(&inst, algo, reps, s, &failures)
            } else {
                run_solver(&inst, algo, reps, s)
            }
        }
    };
    let report = match budget {
        Some(factor) => monte_carlo_budget(go, estimate_solve_cost(&inst, algo), factor, inst.n(), &seed)?,
        None => go(&seed)?,
    };
    let mut out = serde_json::to_value(&report)?;
    if window {
        let a = if algo == Algo::Auto || algo == Algo::Bellman { Algo::Cuberoot } else { algo };
        let reps = reps.unwrap_or_else(|| tropknap::balancing::default_reps(inst.n()));
        let w = solve_window(&inst, a, reps, &seed.child(1))?;
        if common.json {
            out["window"] = json!({
                "algo": a.name(),
                "index": [w.index_window.lo, w.index_window.hi],
                "value": [w.value_window.lo, w.value_window.hi],
                "seq": seq_json(&w.seq),
            });
        } else {
            println!("window {} index [{}, {}] value [{}, {}]", a.name(), w.index_window.lo, w.index_window.hi, w.value_window.lo, w.value_window.hi);
            println!("{}", seq_text(&w.seq));
        }
    }
    if common.json {
        println!("{out}");
    } else {
        print_report(&report, false);
        let ids: Vec<String> = report.items.iter().map(|i| i.to_string()).collect();
        println!("items {}", ids.join(" "));
    }
    Ok(report.verdict != Verdict::Mismatch)
}

fn write_out(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_check(
    files: &[PathBuf],
    count: usize,
    (n, w_max, p_max): (usize, i64, i64),
    algos: &[Algo],
    reps: Option<usize>,
    failures: &Path,
    common: &Common,
) -> Outcome {
    let root = SeedCtx::new(common.seed);
    let instances: Vec<KnapsackInstance> = if files.is_empty() {
        (0..count).map(|i| gen_balanced_instance(n, w_max, p_max, &root.child_of(&[0, i as u64]))).collect()
    } else {
        files.iter().map(|f| load(f)).collect::<Result<_>>()?
    };
    let algos: Vec<Algo> = if algos.is_empty() { Algo::ALL[1..].to_vec() } else { algos.to_vec() };
    let mut ok = true;
    let mut tally = (0usize, 0usize, 0usize);
    for (i, inst) in instances.iter().enumerate() {
        for (k, &a) in algos.iter().enumerate() {
            let r = cross_check(inst, a, reps, &root.child_of(&[1, i as u64, k as u64]), failures)?;
            match r.verdict {
                Verdict::Match => tally.0 += 1,
                Verdict::Mismatch => {
                    tally.1 += 1;
                    ok = false;
                }
                Verdict::Unchecked => tally.2 += 1,
            }
            if common.json || r.verdict == Verdict::Mismatch {
                print_report(&r, common.json);
            }
        }
    }
    if !common.json {
        println!("match {} mismatch {} unchecked {}", tally.0, tally.1, tally.2);
    }
    Ok(ok)
}

fn cmd_conv(n: usize, m: Option<i64>, strategy: Strategy, oracle_check: bool, window: bool, common: &Common) -> Outcome {
    let m = m.unwrap_or(n as i64);
    if m < 0 {
        bail!("entry bound must be nonnegative");
    }
    let root = SeedCtx::new(common.seed);
    let a = random_monotone(n, m, &root.child(0));
    let b = random_monotone(n, m, &root.child(1));
    let start = std::time::Instant::now();
    let c = monotone_minplus_rect_with(&a, &b, m, &root.child(2), strategy)?;
    let millis = start.elapsed().as_secs_f64() * 1e3;
    let sum: i64 = c.finite_values().sum();
    let verdict = if oracle_check {
        if minplus_naive(&a, &b) == c { Verdict::Match } else { Verdict::Mismatch }
    } else {
        Verdict::Unchecked
    };
    if common.json {
        let mut out = json!({ "n": n, "m": m, "len": c.len(), "sum": sum, "millis": millis, "seed": root.label(), "verdict": verdict });
        if window {
            out["a"] = seq_json(&a);
            out["b"] = seq_json(&b);
            out["c"] = seq_json(&c);
        }
        println!("{out}");
    } else {
        println!("n={n} m={m} len={} sum={sum} verdict={verdict:?} {millis:.1}ms", c.len());
        if window {
            println!("{}", seq_text(&c));
        }
    }
    Ok(verdict != Verdict::Mismatch)
}

fn cmd_gadget(
    file: Option<&Path>,
    kind: GadgetKind,
    n: usize,
    out: Option<&Path>,
    oracle_check: bool,
    common: &Common,
) -> Outcome {
    let mpv = match file {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            MPVInstance::parse(&text)?
        }
        None => MPVInstance::random(n, common.seed.is_multiple_of(2), &SeedCtx::new(common.seed)),
    };
    let inst = match kind {
        GadgetKind::Weights => gadget_small_weights(&mpv)?,
        GadgetKind::Profits => gadget_small_profits(&mpv)?,
    };
    if !oracle_check {
        write_out(&instance_to_string(&inst), out)?;
        return Ok(true);
    }
    if let Some(p) = out {
        write_out(&instance_to_string(&inst), Some(p))?;
    }
    let opt = bellman_opt(&inst);
    let direct = verify_naive(&mpv);
    let says = match kind {
        GadgetKind::Weights => small_weights_says_holds(opt, mpv.n()),
        GadgetKind::Profits => small_profits_says_holds(opt, mpv.n()),
    };
    if common.json {
        println!("{}", json!({ "n": mpv.n(), "opt": opt, "holds": direct, "gadget_says": says, "verdict": if says == direct { "match" } else { "mismatch" } }));
    } else {
        println!("n={} opt={opt} holds={direct} gadget_says={says}", mpv.n());
    }
    Ok(says == direct)
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    suite: BenchKind,
    sizes: Vec<usize>,
    algos: Vec<Algo>,
    (w_max, p_max): (i64, i64),
    reps: Option<usize>,
    strategy: Strategy,
    (csv, min_ms): (bool, f64),
    common: &Common,
) -> Outcome {
    let report = match suite {
        BenchKind::Conv => {
            let fit = conv_ladder(&sizes, strategy, &SeedCtx::new(common.seed), min_ms)?;
            tropknap::harness::BenchReport { runs: vec![], fits: vec![fit] }
        }
        BenchKind::Solvers => {
            let algos = if algos.is_empty() { Algo::ALL[1..].to_vec() } else { algos };
            run_benchmark(&SuiteSpec { algos, sizes, w_max, p_max, balanced: true, reps, seed: common.seed })?
        }
    };
    if csv {
        print!("{}", report.to_csv());
    } else if common.json {
        println!("{}", serde_json::to_string(&report)?);
    } else {
        for f in &report.fits {
            let slope = f.slope.map_or("n/a".into(), |s| format!("{s:.3}"));
            println!("{} slope {slope}", f.label);
            for (n, ms) in &f.points {
                println!("  {n:>8} {ms:>10.2}ms");
            }
        }
    }
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Solve { file, algo, reps, oracle_check, window, budget, failures, common } => {
            cmd_solve(&file, algo, reps, oracle_check, window, budget, &failures, &common)
        }
        Command::Gen { kind, n, w_max, p_max, t, out, seed } => {
            if w_max < 1 || p_max < 1 {
                bail!("bounds must be at least 1");
            }
            let s = SeedCtx::new(seed);
            let inst = match kind {
                GenKind::Random => gen_random_instance(n, w_max, p_max, t.unwrap_or(n as i64 * w_max / 4), &s),
                GenKind::Balanced => gen_balanced_instance(n, w_max, p_max, &s),
            };
            write_out(&instance_to_string(&inst), out.as_deref())?;
            Ok(true)
        }
        Command::Check { files, count, n, w_max, p_max, algo, reps, failures, common } => {
            cmd_check(&files, count, (n, w_max, p_max), &algo, reps, &failures, &common)
        }
        Command::Conv { n, m, strategy, oracle_check, window, common } => {
            cmd_conv(n, m, strategy.into(), oracle_check, window, &common)
        }
        Command::Gadget { file, kind, n, out, oracle_check, common } => {
            cmd_gadget(file.as_deref(), kind, n, out.as_deref(), oracle_check, &common)
        }
        Command::Bench { suite, sizes, algo, w_max, p_max, reps, strategy, csv, min_ms, common } => {
            cmd_bench(suite, sizes, algo, (w_max, p_max), reps, strategy.into(), (csv, min_ms), &common)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
