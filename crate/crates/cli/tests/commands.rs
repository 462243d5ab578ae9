use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ctvd_cli::format::{EdgeListDocument, TraceDocument, TraceOutcome};
use ctvd_core::solvers::brute_force;
use tempfile::TempDir;

fn ctvd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctvd")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const C4: &str = "ctvd 4 4 0\n0 1\n1 2\n2 3\n3 0\n";

#[test]
fn kernelize_c4_without_budget_gives_canonical_no_instance() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "c4.txt", C4);
    let out = dir.path().join("k.txt");
    let o = ctvd(&["kernelize", s(&input), "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "ctvd 4 4 0\n0 1\n0 3\n1 2\n2 3\n");
}

#[test]
fn kernelize_forest_does_not_grow() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "t.txt", "ctvd 7 5 1\n0 1\n1 2\n1 3\n3 4\n5 6\n");
    let o = ctvd(&["kernelize", s(&input)]);
    assert_eq!(o.status.code(), Some(0));
    let kernel = EdgeListDocument::parse(&stdout(&o)).unwrap();
    assert!(kernel.n <= 7);
}

/// `|S| + 2|S| eps + 1525 k |S|` with `eps = (8 C(s,3) + 4 C(s,2) + 2s)(k + 4)`.
fn bound(k: u128, s: u128) -> u128 {
    let c2 = s * s.saturating_sub(1) / 2;
    let c3 = s * s.saturating_sub(1) * s.saturating_sub(2) / 6;
    let eps = (8 * c3 + 4 * c2 + 2 * s) * (k + 4);
    s + 2 * s * eps + 1525 * k * s
}

#[test]
fn planted_kernel_is_within_bound_and_trace_round_trips() {
    let dir = TempDir::new().unwrap();
    for seed in 0..10 {
        let g = dir.path().join(format!("g{seed}.txt"));
        let seed = seed.to_string();
        let o = ctvd(&["gen", "--cliques", "3", "--trees", "3", "--noise-vertices", "2", "--k", "2", "--seed", &seed, "-o", s(&g)]);
        assert_eq!(o.status.code(), Some(0));
        let (k_out, t_out) = (dir.path().join("k.txt"), dir.path().join("t.txt"));
        let o = ctvd(&["kernelize", s(&g), "-o", s(&k_out), "--trace", s(&t_out)]);
        assert_eq!(o.status.code(), Some(0));
        let text = std::fs::read_to_string(&t_out).unwrap();
        let trace = TraceDocument::parse(&text).unwrap();
        assert_eq!(trace.to_string(), text);
        let kernel = EdgeListDocument::parse(&std::fs::read_to_string(&k_out).unwrap()).unwrap();
        match trace.outcome {
            TraceOutcome::Kernel { n, k, s, within, .. } => {
                assert!(within);
                assert_eq!(n, kernel.n);
                assert!(n as u128 <= bound(k as u128, s as u128));
            }
            TraceOutcome::NoInstance { reason } => panic!("planted instance rejected: {reason}"),
        }
    }
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "ctvd 2 1 0\n0 7\n");
    for args in [vec!["kernelize", s(&bad)], vec!["solve", s(&bad), "--exact"]] {
        let o = ctvd(&args);
        assert_eq!(o.status.code(), Some(2));
        assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    }
    assert_eq!(ctvd(&["kernelize", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn solve_exact_examples() {
    let dir = TempDir::new().unwrap();
    let paw = write(&dir, "paw.txt", "ctvd 4 4 1\n0 1\n1 2\n0 2\n2 3\n");
    let o = ctvd(&["solve", s(&paw), "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("YES\n"));
    let witness = text.lines().nth(1).unwrap().strip_prefix("witness: ").unwrap();
    assert_eq!(witness.split(' ').count(), 1);

    let two_c4 = write(&dir, "2c4.txt", "ctvd 8 8 1\n0 1\n1 2\n2 3\n3 0\n4 5\n5 6\n6 7\n7 4\n");
    let o = ctvd(&["solve", s(&two_c4), "--exact"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(1), "NO\n"));

    let empty = write(&dir, "e.txt", "ctvd 0 0 0\n");
    let o = ctvd(&["solve", s(&empty), "--exact"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "YES\nwitness: -\n"));
}

#[test]
fn solve_approx_reports_modulator_and_factor() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.txt", C4);
    let o = ctvd(&["solve", s(&c4), "--approx"]);
    let text = stdout(&o);
    assert!(text.contains("factor: 6"));
    assert!(text.ends_with("NO\n"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_campaigns() {
    let o = ctvd(&["verify", "--count", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 failed"));

    let o = ctvd(&["verify", "--count", "500", "--max-n", "14", "--max-k", "4", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("500 passed, 0 failed"));
}

#[test]
fn verify_catches_a_corrupted_rule() {
    let o = ctvd(&["verify", "--count", "500", "--seed", "1", "--sabotage", "drop-tail-anchor"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let doc = &text[text.find("ctvd ").expect("failing instance printed")..];
    let inst = EdgeListDocument::parse(doc).unwrap().to_instance();
    assert!(!brute_force(&inst.graph, inst.k).feasible);
}

#[test]
fn gen_examples() {
    let o = ctvd(&["gen", "--cliques", "0", "--trees", "0", "--noise-vertices", "0", "--k", "0"]);
    assert_eq!(stdout(&o), "ctvd 0 0 0\n");

    let args = ["gen", "--cliques", "3", "--trees", "3", "--noise-vertices", "2", "--k", "2", "--seed", "11"];
    let (a, b) = (ctvd(&args), ctvd(&args));
    assert_eq!(a.stdout, b.stdout);
    let inst = EdgeListDocument::parse(&stdout(&a)).unwrap().to_instance();
    assert!(brute_force(&inst.graph, 2).feasible);
}

#[test]
fn stats_examples() {
    let o = ctvd(&["stats", "--k-range", "1..1", "--reps", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2);
    assert_eq!(text.lines().next(), Some("k,input_n,kernel_n,bound,rules_fired"));

    let o = ctvd(&["stats", "--k-range", "3..2"]);
    assert_eq!(stdout(&o), "k,input_n,kernel_n,bound,rules_fired\n");

    let o = ctvd(&["stats", "--k-range", "1..4", "--reps", "20", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 81);
    for row in text.lines().skip(1) {
        let f: Vec<u128> = row.split(',').map(|x| x.parse().unwrap()).collect();
        assert!(f[2] <= f[3], "{row}");
    }
    assert_eq!(ctvd(&["stats", "--k-range", "1..4", "--reps", "20", "--seed", "5"]).stdout, o.stdout);
    assert_eq!(ctvd(&["stats", "--k-range", "x"]).status.code(), Some(2));
}
