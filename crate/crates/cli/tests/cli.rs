use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(format!("{name}.pmr"))
}

fn pmr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pmr-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn decide_reports_parity_mismatch() {
    let o = pmr(&["decide", corpus("BOWTIE-transposition").to_str().unwrap()]);
    assert_eq!(stdout(&o), "INFEASIBLE ParityMismatch\n");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn decide_feasible_exits_zero() {
    let o = pmr(&["decide", corpus("BOWTIE").to_str().unwrap()]);
    assert_eq!(stdout(&o), "FEASIBLE\n");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn plan_then_verify_c4_shift() {
    let dir = scratch_dir("c4");
    let plan = dir.join("c4.plan");
    let inst = corpus("C4-shift");
    let o = pmr(&["plan", inst.to_str().unwrap(), "-o", plan.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&plan).unwrap(), "plan\nr 0 1 2 3\n");
    let o = pmr(&["verify", inst.to_str().unwrap(), plan.to_str().unwrap()]);
    assert_eq!(stdout(&o), "VERIFIED\n");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_rejects_a_wrong_plan() {
    let dir = scratch_dir("wrong");
    let plan = dir.join("wrong.plan");
    std::fs::write(&plan, "plan\nr 0 3 2 1\n").unwrap();
    let o = pmr(&["verify", corpus("C4-shift").to_str().unwrap(), plan.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("REJECTED step 1"));
}

#[test]
fn oracle_stats_on_c5() {
    let o = pmr(&["oracle", "stats", corpus("C5").to_str().unwrap()]);
    assert_eq!(stdout(&o), "order=5 class=Cyclic diam=2\n");
}

#[test]
fn oracle_decide_agrees_with_decide_on_corpus() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut checked = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let p = path.to_str().unwrap();
        let fast = pmr(&["decide", p]);
        let slow = pmr(&["oracle", "decide", p]);
        assert_eq!(fast.status.code(), slow.status.code(), "{p}");
        checked += 1;
    }
    assert!(checked >= 16);
}

#[test]
fn gen_is_byte_deterministic() {
    let a = pmr(&["gen", "grid", "16", "15", "--seed", "7"]);
    let b = pmr(&["gen", "grid", "16", "15", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("pmr\nn 16\np 15\n"));
}

#[test]
fn gen_output_round_trips_through_decide() {
    let dir = scratch_dir("gen");
    let file = dir.join("cycle.pmr");
    let o = pmr(&["gen", "cycle", "5", "5", "--seed", "0", "-o", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = pmr(&["decide", file.to_str().unwrap()]);
    assert!(matches!(o.status.code(), Some(0 | 1)));
}

#[test]
fn errors_exit_two() {
    assert_eq!(pmr(&["decide", "/nonexistent/file.pmr"]).status.code(), Some(2));
    let dir = scratch_dir("bad");
    let file = dir.join("bad.pmr");
    std::fs::write(&file, "pmr\nn 3\np 1\ne 0 1\ne 1 2\ns 1 0\ns 1 1\nd 1 2\n").unwrap();
    let o = pmr(&["decide", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("placed twice"));
    assert_eq!(pmr(&["gen", "grid", "13", "3"]).status.code(), Some(2));
}

#[test]
fn bench_prints_csv() {
    let o = pmr(&["bench", "--kind", "grid", "--sizes", "16,100"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,decide_seconds");
    assert!(lines[1].starts_with("16,") && lines[2].starts_with("100,"));
}
