use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tropknap"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tropknap-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn strip_millis(s: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(s.trim()).unwrap();
    v.as_object_mut().unwrap().remove("millis");
    v
}

#[test]
fn solve_small_file() {
    let dir = scratch("solve");
    let f = dir.join("a.txt");
    std::fs::write(&f, "2 4\n2 3\n3 4\n").unwrap();
    let o = run(&["solve", f.to_str().unwrap(), "--json", "--oracle-check"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["opt"], 4);
    assert_eq!(v["verdict"], "match");
    assert_eq!(v["items"], serde_json::json!([1]));
}

#[test]
fn equal_flags_give_identical_reports() {
    let dir = scratch("det");
    let f = dir.join("b.txt");
    let g = run(&["gen", "balanced", "--n", "40", "--w-max", "50", "--p-max", "70", "--seed", "11", "-o", f.to_str().unwrap()]);
    assert_eq!(g.status.code(), Some(0));
    let args = ["solve", f.to_str().unwrap(), "--algo", "cuberoot", "--seed", "5", "--json", "--oracle-check", "--window"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(strip_millis(&stdout(&a)), strip_millis(&stdout(&b)));
    assert!(strip_millis(&stdout(&a))["window"]["seq"]["values"].as_array().unwrap().len() > 1);
}

#[test]
fn gen_is_reproducible() {
    let a = run(&["gen", "random", "--n", "10", "--seed", "4"]);
    let b = run(&["gen", "random", "--n", "10", "--seed", "4"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 11);
}

#[test]
fn check_all_solvers() {
    let dir = scratch("check");
    let o = run(&["check", "--count", "4", "--n", "30", "--seed", "2", "--failures", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("match 20 mismatch 0 unchecked 0"));
}

#[test]
fn conv_and_gadget_checks() {
    let o = run(&["conv", "--n", "200", "--m", "64", "--oracle-check", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"verdict\":\"match\""));
    let dir = scratch("gadget");
    let f = dir.join("m.txt");
    std::fs::write(&f, "2\n0 0\n0 0\n0 0 0\n").unwrap();
    let o = run(&["gadget", f.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("7 70\n10 8\n9 6\n"));
    for kind in ["weights", "profits"] {
        let o = run(&["gadget", "--n", "6", "--kind", kind, "--seed", "3", "--oracle-check"]);
        assert_eq!(o.status.code(), Some(0));
    }
}

#[test]
fn bench_csv() {
    let o = run(&["bench", "solvers", "--sizes", "20,40", "--algo", "bellman,t_sqrt_p", "--w-max", "30", "--p-max", "30", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("label,size,millis"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "/definitely/missing"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "x", "--algo", "fast"]).status.code(), Some(2));
    let dir = scratch("bad");
    let f = dir.join("bad.txt");
    std::fs::write(&f, "1 4\n0 3\n").unwrap();
    let o = run(&["solve", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("code 11"));
}
