use std::io::Write;
use std::process::{Command, Output, Stdio};

fn divdfa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_divdfa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn divdfa_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_divdfa"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_subcommand() {
    let o = divdfa(&["count", "-b", "6", "-k", "16", "--expr", "all"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "8 8 8\n");
    let o = divdfa(&["count", "--base", "20", "--modulus", "93750", "--expr", "3"]);
    assert_eq!(stdout(&o), "118\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(divdfa(&["count", "-b", "1", "-k", "3"]).status.code(), Some(2));
    assert_eq!(divdfa(&["count", "-b", "2", "-k", "3", "--expr", "7"]).status.code(), Some(2));
    assert_eq!(divdfa(&["verify", "-b", "5..2", "-k", "1..3"]).status.code(), Some(2));
    assert_eq!(divdfa(&["member", "-b", "2", "-k", "3", "102"]).status.code(), Some(2));
}

#[test]
fn capacity_errors_exit_3() {
    let o = divdfa(&["build", "-b", "2", "-k", "1000", "--max-states", "999"]);
    assert_eq!(o.status.code(), Some(3));
    let o = divdfa(&["pattern", "-b", "2", "--x", "3", "--y", "10", "--zmax", "25"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn member_subcommand() {
    assert_eq!(stdout(&divdfa(&["member", "-b", "2", "-k", "3", "110"])), "accept\n");
    assert_eq!(stdout(&divdfa(&["member", "-b", "2", "-k", "3", ""])), "accept\n");
    assert_eq!(stdout(&divdfa(&["member", "-b", "2", "-k", "3"])), "accept\n");
    assert_eq!(stdout(&divdfa(&["member", "-b", "16", "-k", "5", "ff"])), "accept\n");
    assert_eq!(stdout(&divdfa(&["member", "-b", "6", "-k", "16", "2,3"])), "reject\n");
}

#[test]
fn minimize_from_file_and_stdin() {
    let canonical = stdout(&divdfa(&["build", "-b", "6", "-k", "16"]));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("canonical.txt");
    std::fs::write(&path, &canonical).unwrap();
    let o = divdfa(&["minimize", "--in", path.to_str().unwrap()]);
    assert!(o.status.success());
    let minimal = stdout(&o);
    assert!(minimal.starts_with("states 8\n"));

    let o = divdfa_stdin(&["minimize"], &minimal);
    assert_eq!(stdout(&o), minimal);

    let att = stdout(&divdfa(&["build", "-b", "6", "-k", "16", "--format", "att"]));
    let o = divdfa_stdin(&["minimize", "--format", "att"], &att);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.contains('\t')).count(), 48);
}

#[test]
fn minimize_reports_parse_errors_with_lines() {
    let o = divdfa_stdin(&["minimize"], "states 2\nalphabet 1\nstart 0\naccept 0\ntrans 0 0 1\ntrans 1 0 2\n");
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 6"), "{err}");
    let o = divdfa(&["minimize", "--in", "/nonexistent/file.txt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_subcommand() {
    let o = divdfa(&["verify", "-b", "2..3", "-k", "1..40", "--jobs", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("0 failures\n"));
    let o = divdfa(&["verify", "-b", "2", "-k", "990..1010", "--max-states", "1000", "--fail-fast", "--jobs", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL b=2 k=1001"), "{out}");
    assert!(out.contains("pairs checked: 12"));
}

#[test]
fn dot_and_breakdown_output() {
    let o = divdfa(&["build", "-b", "6", "-k", "16", "--minimal", "--format", "dot"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph dfa {"));
    assert!(dot.contains("pkg=2* c=4 {3,7,11,15}"));
    let o = divdfa(&["breakdown", "-b", "2", "-k", "3"]);
    assert!(stdout(&o).ends_with("A0=0 laminf=3 f=3\nbounds 3 4 6\n"));
}
