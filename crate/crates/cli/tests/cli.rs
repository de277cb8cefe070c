use std::process::{Command, Output};

use parke_taylor::formats::{matrix_text, parse_matrix_text};
use parke_taylor_core::pt::build_matrix;

fn ptvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptvar")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn matrix_files() {
    let o = ptvar(&["matrix", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let m = parse_matrix_text(&stdout(&o)).unwrap();
    assert_eq!((m.rows(), m.cols(), m.nnz()), (10, 6, 30));
    assert_eq!(m, build_matrix(5).unwrap());
    let o = ptvar(&["matrix", "--n", "6"]);
    let m = parse_matrix_text(&stdout(&o)).unwrap();
    assert_eq!((m.rows(), m.cols(), m.nnz()), (15, 24, 144));
}

#[test]
fn matrix_format_round_trips() {
    for n in 4..=7 {
        let m = build_matrix(n).unwrap();
        let s = matrix_text(&m, n);
        assert_eq!(parse_matrix_text(&s).unwrap(), m);
        assert_eq!(matrix_text(&parse_matrix_text(&s).unwrap(), n), s);
    }
    assert!(parse_matrix_text("2 2 1\n1 1 1\n2 2 1\n").is_err());
    assert!(parse_matrix_text("2 2 1\n3 1 1\n").is_err());
}

#[test]
fn invalid_arguments_exit_2() {
    assert_eq!(ptvar(&["matrix", "--n", "3"]).status.code(), Some(2));
    assert_eq!(ptvar(&["matrix", "--n", "11"]).status.code(), Some(2));
    assert_eq!(ptvar(&["verify", "--suite", "conjecture", "--n", "9"]).status.code(), Some(2));
    assert_eq!(ptvar(&["verify", "--suite", "bogus", "--n", "5"]).status.code(), Some(2));
    assert_eq!(ptvar(&["export", "lifts", "--n", "4"]).status.code(), Some(2));
}

#[test]
fn passing_suite_exits_0_with_json_report() {
    let o = ptvar(&["verify", "--suite", "toric", "--n", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let verdicts = v["verdicts"].as_array().unwrap();
    assert!(!verdicts.is_empty());
    assert!(verdicts.iter().all(|x| x["outcome"] == "pass" && x["anchor"].as_str().is_some_and(|a| !a.is_empty())));
}

#[test]
fn failing_required_verdict_exits_1() {
    // the quadratic families do not span the full kernel at n = 7
    let o = ptvar(&["verify", "--suite", "conjecture", "--n", "7"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn exhausted_budget_exits_3() {
    let o = ptvar(&["verify", "--suite", "toric", "--n", "6", "--budget-seconds", "0"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(stdout(&o).contains("BUDGET"));
}

#[test]
fn exports_are_deterministic() {
    for args in [
        ["export", "matrix", "--n", "5", "--format", "canonical"],
        ["export", "lifts", "--n", "6", "--format", "canonical"],
        ["export", "ideal", "--n", "5", "--format", "cas-script"],
    ] {
        let a = ptvar(&args);
        let b = ptvar(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn exported_contents() {
    let lifts = stdout(&ptvar(&["export", "lifts", "--n", "6"]));
    assert_eq!(lifts.lines().filter(|l| !l.starts_with('#')).count(), 9);
    let script = stdout(&ptvar(&["export", "ideal", "--n", "5", "--format", "cas-script"]));
    assert!(script.contains("saturate(Iopen"));
    assert!(script.matches("z_").count() > 6);
}

#[test]
fn unwritable_output_fails() {
    let o = ptvar(&["matrix", "--n", "5", "--out", "/nonexistent-dir/a.txt"]);
    assert_ne!(o.status.code(), Some(0));
}
