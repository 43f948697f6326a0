use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn defset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_defset"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn field(text: &str, key: &str) -> String {
    let prefix = format!("{key}: ");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no `{key}` in:\n{text}"))
        .to_string()
}

#[test]
fn unique_model_needs_no_defining_literals() {
    let dir = TempDir::new().unwrap();
    let cnf = put(&dir, "u.cnf", "p cnf 2 2\n1 0\n-2 0\n");
    let asg = put(&dir, "u.asg", "1 -2 0\n");
    let out = defset(&["sat", "min", "--cnf", s(&cnf), "--anchor", s(&asg)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(field(&text, "min_size"), "0");
    assert_eq!(field(&text, "witness"), "[]");
    assert_eq!(field(&text, "model_count_hint"), "1");
}

#[test]
fn decision_forms_exit_by_answer() {
    let dir = TempDir::new().unwrap();
    let cnf = put(&dir, "x.cnf", "p cnf 2 2\n1 2 0\n-1 -2 0\n");
    let asg = put(&dir, "x.asg", "1 -2 0\n");
    let yes = defset(&["sat", "min", "--cnf", s(&cnf), "--anchor", s(&asg), "--k", "1"]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(field(&stdout(&yes), "answer"), "yes");
    let no = defset(&["sat", "min", "--cnf", s(&cnf), "--anchor", s(&asg), "--k", "0"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(field(&stdout(&no), "answer"), "no");

    let empty = put(&dir, "empty.asg", "0\n");
    let check = defset(&["sat", "check", "--cnf", s(&cnf), "--anchor", s(&asg), "--candidate", s(&empty)]);
    assert_eq!(check.status.code(), Some(1));
    let one = put(&dir, "one.asg", "-2 0\n");
    let check = defset(&["sat", "check", "--cnf", s(&cnf), "--anchor", s(&asg), "--candidate", s(&one)]);
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = put(&dir, "bad.cnf", "p cnf 2 1\n3 0\n");
    let asg = put(&dir, "a.asg", "1 2 0\n");
    let out = defset(&["sat", "min", "--cnf", s(&bad), "--anchor", s(&asg)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    let cnf = put(&dir, "ok.cnf", "p cnf 2 1\n1 0\n");
    let wrong = put(&dir, "w.asg", "-1 2 0\n");
    let out = defset(&["sat", "min", "--cnf", s(&cnf), "--anchor", s(&wrong)]);
    assert_eq!(out.status.code(), Some(2));

    let out = defset(&["sat", "min", "--cnf", s(&cnf), "--anchor", s(&asg), "--max-vars", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = defset(&["verify", "no-such-target"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn coloring_commands() {
    let dir = TempDir::new().unwrap();
    let star = put(&dir, "star.col", "p edge 4 3\ne 1 2\ne 1 3\ne 1 4\n");
    let coloring = put(&dir, "star.clr", "v 1 0\nv 2 1\nv 3 1\nv 4 1\n");
    let out = defset(&["color", "min", "--graph", s(&star), "--coloring", s(&coloring)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(field(&text, "min_size"), "1");
    assert_eq!(field(&text, "model_count_hint"), "2");

    let tri = put(&dir, "tri.col", "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    let out = defset(&["color", "family-min", "--graph", s(&tri), "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = defset(&["color", "family-min", "--graph", s(&tri)]);
    assert_eq!(field(&stdout(&out), "min_size"), "2");

    let cand = put(&dir, "cand.clr", "v 1 0\nv 2 1\n");
    let tri_c = put(&dir, "tri.clr", "v 1 0\nv 2 1\nv 3 2\n");
    let out = defset(&["color", "check", "--graph", s(&tri), "--coloring", s(&tri_c), "--candidate", s(&cand)]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn gphi_shifts_the_minimum_by_four() {
    let dir = TempDir::new().unwrap();
    let cnf = put(&dir, "f.cnf", "p cnf 3 3\n1 0\n-1 2 0\n2 3 0\n");
    let asg = put(&dir, "f.asg", "1 2 3 0\n");
    let sat = defset(&["sat", "min", "--cnf", s(&cnf), "--anchor", s(&asg)]);
    let sat_min: usize = field(&stdout(&sat), "min_size").parse().unwrap();

    let graph = dir.path().join("g.col");
    let clr = dir.path().join("g.clr");
    let prov = dir.path().join("g.prov");
    let out = defset(&[
        "reduce", "gphi", "--cnf", s(&cnf), "--anchor", s(&asg), "--out", s(&graph), "--anchor-out", s(&clr),
        "--provenance-out", s(&prov),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let sidecar = fs::read_to_string(&prov).unwrap();
    assert!(sidecar.lines().any(|l| l == "vertex 1 role w0"));

    let color = defset(&["color", "min", "--graph", s(&graph), "--coloring", s(&clr)]);
    assert_eq!(color.status.code(), Some(0));
    let color_min: usize = field(&stdout(&color), "min_size").parse().unwrap();
    assert_eq!(color_min, sat_min + 4);
}

#[test]
fn sat_reduction_chain_writes_files() {
    let dir = TempDir::new().unwrap();
    let cnf = put(&dir, "q.cnf", "p cnf 2 1\n1 2 0\n");
    let t = put(&dir, "t.asg", "2 0\n");
    let out_cnf = dir.path().join("q2.cnf");
    let out_asg = dir.path().join("q2.asg");
    let out = defset(&[
        "reduce", "q2", "--cnf", s(&cnf), "--x", "1", "--anchor", s(&t), "--out", s(&out_cnf), "--anchor-out",
        s(&out_asg),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(field(&stdout(&out), "budget"), "1");

    let q3 = defset(&["reduce", "q3", "--cnf", s(&out_cnf), "--anchor", s(&out_asg), "--k", "1"]);
    assert_eq!(q3.status.code(), Some(0));
    assert!(stdout(&q3).starts_with("p cnf") || stdout(&q3).starts_with('c'));

    let mu = defset(&["reduce", "mu", "--cnf", s(&cnf), "--x", "1"]);
    assert!(stdout(&mu).contains("p cnf 3 2"));
    let split = defset(&["reduce", "split3", "--cnf", s(&cnf), "--x", "1"]);
    assert_eq!(split.status.code(), Some(0));
}

#[test]
fn verify_cprime_reports_the_tally() {
    let out = defset(&["verify", "cprime"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(field(&text, "tally unique"), "15");
    assert_eq!(field(&text, "tally none"), "1");
    assert!(text.contains("VERIFY cprime instances=16 mismatches=0"));
}

#[test]
fn records_do_not_depend_on_jobs() {
    let dir = TempDir::new().unwrap();
    let cnf = put(&dir, "j.cnf", "p cnf 6 4\n1 2 0\n-2 3 0\n4 5 6 0\n-4 -5 0\n");
    let g = put(&dir, "j.col", "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n");
    let runs: [&[&str]; 3] = [
        &["sat", "family-min", "--cnf", s(&cnf)],
        &["color", "family-min", "--graph", s(&g)],
        &["verify", "q2", "--count", "20"],
    ];
    for args in runs {
        let one = defset(&[args, &["--format", "record", "--jobs", "1"]].concat());
        let four = defset(&[args, &["--format", "record", "--jobs", "4"]].concat());
        assert_eq!(one.status.code(), four.status.code());
        assert_eq!(stdout(&one), stdout(&four), "{args:?}");
    }
}
