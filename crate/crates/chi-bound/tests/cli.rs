//! End-to-end CLI behavior: exit codes, batch stdin, formats, env cap.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chi-bound"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.lines().next().expect("one line of output")).expect("valid JSON")
}

#[test]
fn check_member() {
    let out = run(&["check", "--g6", "Dhc"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["member"], true);
    assert_eq!(v["graph6"], "Dhc");
}

#[test]
fn check_non_member_carries_witness() {
    // C6
    let out = run(&["check", "--g6", "EhEG"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["member"], false);
    assert_eq!(v["witness"]["kind"], "3K1");
}

#[test]
fn check_without_input_is_usage_error() {
    let mut child = bin()
        .arg("check")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn conflicting_sources_rejected() {
    let out = run(&["check", "--g6", "Dhc", "--file", "/dev/null"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariants_c5() {
    let out = run(&["invariants", "--g6", "Dhc"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["n"], 5);
    assert_eq!(v["m"], 5);
    assert_eq!(v["max_degree"], 2);
    assert_eq!(v["alpha"], 2);
    assert_eq!(v["omega"], 2);
    assert_eq!(v["chi"], 3);
}

#[test]
fn invariants_respects_cap_env() {
    // complete graph on 10 vertices, cap lowered to 8
    let g6 = {
        let g = chi_bound::generate::complete(10).unwrap();
        chi_bound::codec::graph6_encode(&g)
    };
    let out = bin()
        .args(["invariants", "--g6", &g6])
        .env("CHI_BOUND_MAX_N", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oversized_input_is_invalid() {
    // 100-vertex graph6 header exceeds the representation limit
    let g6 = "~?@c".to_string() + &"?".repeat(825);
    let out = run(&["invariants", "--g6", &g6]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_member() {
    let out = run(&["decompose", "--g6", "Dhc"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["partition"]["parts"][0], serde_json::json!([0, 1]));
    assert_eq!(v["decomposition"]["v"], 0);
    assert_eq!(v["decomposition"]["w"], 2);
    assert_eq!(v["structure"]["claims"]["S1"]["holds"], true);
}

#[test]
fn decompose_non_member_is_invalid_input() {
    let out = run(&["decompose", "--g6", "EhEG"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stdin_batch_mode() {
    let mut child = bin()
        .arg("check")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"Dhc\nBw\nEhEG\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 3);
}

#[test]
fn verify_bound_exhaustive_small() {
    let out = run(&["verify-bound", "--exhaustive", "--min-n", "5", "--max-n", "5"]);
    assert!(out.status.success(), "exit 0 when no violations");
    let v = stdout_json(&out);
    assert_eq!(v["graphs_scanned"], 1024);
    assert_eq!(v["violations"], serde_json::json!([]));
}

#[test]
fn verify_bound_writes_jsonl() {
    let dir = std::env::temp_dir().join("chi-bound-test-out");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("campaign.jsonl");
    let out = run(&[
        "verify-bound",
        "--exhaustive",
        "--max-n",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let last = text.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(last).unwrap();
    assert_eq!(v["type"], "summary");
    std::fs::remove_file(&path).ok();
}

#[test]
fn generate_subcommands() {
    let out = run(&["generate", "cycle", "--len", "5"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "Dhc");
    let out = run(&["generate", "complete", "--size", "3"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "Bw");
    let out = run(&["generate", "join-power", "--g6", "Dhc", "--copies", "2"]);
    assert!(out.status.success());
    let g6 = String::from_utf8_lossy(&out.stdout).trim().to_string();
    let g = chi_bound::codec::graph6_decode(&g6).unwrap();
    assert_eq!(g.n(), 10);
}

#[test]
fn generate_member_deterministic() {
    let a = run(&["generate", "member", "--n", "6", "--p", "0.7", "--seed", "3"]);
    let b = run(&["generate", "member", "--n", "6", "--p", "0.7", "--seed", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn remark_rows() {
    let out = run(&["remark", "--k-max", "2"]);
    assert!(out.status.success());
    let lines: Vec<&str> = std::str::from_utf8(&out.stdout)
        .unwrap()
        .lines()
        .collect();
    assert_eq!(lines.len(), 6);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["type"], "remark_row");
    }
}

#[test]
fn text_format_renders_same_record() {
    let json = run(&["check", "--g6", "Dhc"]);
    let text = run(&["check", "--g6", "Dhc", "--format", "text"]);
    assert!(text.status.success());
    let rendered = String::from_utf8_lossy(&text.stdout);
    assert!(rendered.contains("member: true"));
    assert!(rendered.contains("graph6: \"Dhc\""));
    assert!(json.status.success());
}

#[test]
fn unknown_subcommand_fails() {
    let out = run(&["frobnicate"]);
    assert!(!out.status.success());
}
