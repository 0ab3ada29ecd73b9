use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaugelike"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("gaugelike-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("temp file");
    path
}

#[test]
fn act_on_heisenberg() {
    let o = run(&["act", "heisenberg", "(1,0)", "(1)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "(1,1)\n");
    // α = 0 is fixed.
    let o = run(&["act", "heisenberg", "(0,5)", "(7/2)"]);
    assert_eq!(stdout(&o), "(0,5)\n");
}

#[test]
fn mc_verify_exit_codes() {
    let o = run(&["mc", "verify", "free_odd_y", "(-2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("residual over (z): (0)"));
    let o = run(&["mc", "verify", "free_odd_y", "(1)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(3/2)"));
    let o = run(&["mc", "verify", "free_odd_y", "(1,2)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ce_of_free_odd_y() {
    let o = run(&["ce", "free_odd_y"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("d(^sy) = 0"), "{out}");
    assert!(out.contains("d(^sz) = -^sy^2 + ^sy"), "{out}");
    assert!(out.contains("stages: ^sy:1 ^sz:2"), "{out}");
}

#[test]
fn gauge_reports_witness() {
    let o = run(&["gauge", "heisenberg", "(2,1)", "(3)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("y(t) = 1 + 6*t"), "{out}");
    assert!(out.contains("endpoint: (2,7)"), "{out}");
    assert!(out.contains("as g0 element: (3)"), "{out}");
}

#[test]
fn check_reports_failures() {
    let o = run(&["check", "heisenberg"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("nilpotency in degree 0: 2"));
    let o = run(&["check", "jacobi_violation"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("^sw"));
    let o = run(&["check", "non_nilpotent"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("unbounded"));
}

#[test]
fn parse_errors_exit_two_with_position() {
    let path = temp_file("bad.linf", "basis a 0\nop 2 a b -> a\n");
    let o = run(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column 8"), "{}", stderr(&o));
    let o = run(&["check", "no_such_fixture"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn printed_fixture_loads_from_file() {
    let o = run(&["fixtures", "heis3_module"]);
    assert_eq!(o.status.code(), Some(0));
    let path = temp_file("module.linf", &stdout(&o));
    let o = run(&["ce", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("d(^sx1) = -2*^sp*^sx2 - 2*^sx3*^sr"), "{}", stdout(&o));
}

#[test]
fn orbit_is_deterministic() {
    let args = ["orbit", "heisenberg", "--samples", "3", "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("9 gauge moves witnessed, 9 additive moves"));
}
