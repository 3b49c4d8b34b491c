use tropknap::harness::{
    cross_check, gen_balanced_instance, gen_random_instance, parse_instance, run_benchmark, write_instance, SuiteSpec,
    Verdict,
};
use tropknap::knapsack_main::Algo;
use tropknap::SeedCtx;

#[test]
fn file_round_trip_and_cross_check() {
    let dir = std::env::temp_dir().join(format!("tropknap-flow-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for s in 0..10u64 {
        let inst = gen_random_instance(25, 40, 40, 250, &SeedCtx::new(s));
        let path = dir.join(format!("i{s}.txt"));
        write_instance(&inst, &path).unwrap();
        let back = parse_instance(&path).unwrap();
        assert_eq!(back, inst);
        for algo in [Algo::Auto, Algo::Cuberoot, Algo::CuberootSym] {
            let r = cross_check(&back, algo, None, &SeedCtx::new(s), &dir.join("failures")).unwrap();
            assert_eq!(r.verdict, Verdict::Match, "{algo} seed {s}");
            assert!(r.reproducer.is_none());
        }
    }
    assert!(!dir.join("failures").exists());
}

#[test]
fn benchmark_report_shape() {
    let spec = SuiteSpec {
        algos: vec![Algo::Bellman, Algo::OptSqrtW],
        sizes: vec![16, 32, 64],
        w_max: 20,
        p_max: 20,
        balanced: true,
        reps: Some(2),
        seed: 3,
    };
    let r = run_benchmark(&spec).unwrap();
    assert_eq!(r.runs.len(), 6);
    assert!(r.runs.iter().all(|x| x.verdict == Verdict::Unchecked));
    for f in &r.fits {
        assert_eq!(f.points.iter().map(|p| p.0).collect::<Vec<_>>(), vec![16, 32, 64]);
        assert!(f.slope.is_some());
    }
    let json = serde_json::to_string(&r).unwrap();
    assert!(json.contains("\"opt_sqrt_w\""));
    let inst = gen_balanced_instance(16, 20, 20, &SeedCtx::new(3).child_of(&[0, 0]));
    assert_eq!(r.runs[0].digest, tropknap::harness::digest(&inst));
}
