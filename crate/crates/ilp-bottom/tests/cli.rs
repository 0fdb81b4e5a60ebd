use std::path::Path;
use std::process::Command;

use ilp_bottom::bench::palindrome;

fn ilpb(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ilpb")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_prints_the_program() {
    let dir = tempfile::tempdir().unwrap();
    palindrome::problem(true).save(dir.path()).unwrap();
    let (code, out) = ilpb(&["solve", path(dir.path()), "--timeout", "60"]);
    assert_eq!(code, 0);
    assert!(out.contains("palindrome(A) :- reverse(A,A)"), "{}", out);
}

#[test]
fn no_solution_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let mut p = palindrome::problem(true);
    // a negative equal to a positive makes the task unsatisfiable
    let e = p.pos.iter().next().unwrap().clone();
    p.pos.clear();
    p.pos.insert(e.clone());
    p.neg.insert(e);
    p.save(dir.path()).unwrap();
    let (code, out) = ilpb(&["solve", path(dir.path()), "--timeout", "30", "--max-clauses", "1", "--max-body", "1"]);
    assert_eq!(code, 1, "{}", out);
}

#[test]
fn missing_problem_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = ilpb(&["solve", path(&dir.path().join("nothing"))]);
    assert_eq!(code, 2);
}

#[test]
fn bottom_variants_and_space() {
    let dir = tempfile::tempdir().unwrap();
    palindrome::problem(false).save(dir.path()).unwrap();
    let (code, out) = ilpb(&["bottom", path(dir.path())]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("palindrome(A) :-")), "{}", out);
    let (code, out) = ilpb(&["variants", path(dir.path())]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.split(' ').last().unwrap().parse::<usize>().unwrap() >= 1));
    let (code, out) = ilpb(&["space", path(&dir.path().join("bias.pl"))]);
    assert_eq!(code, 0);
    assert!(out.trim().parse::<u128>().unwrap_or(u128::MAX) > 0);
}

#[test]
fn stats_csv_is_written() {
    let dir = tempfile::tempdir().unwrap();
    palindrome::problem(true).save(dir.path()).unwrap();
    let csv = dir.path().join("stats.csv");
    let (code, _) = ilpb(&["solve", path(dir.path()), "--stats", path(&csv)]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.starts_with("task,"), "{}", text);
}
