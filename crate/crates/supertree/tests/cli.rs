//! End-to-end tests of the command-line binary.

use std::io::Write;
use std::process::{Command, Output};
use supertree::instance::ProblemInstance;
use supertree::tree::{is_agreement_supertree, is_compatible_supertree, Mode};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_supertree"))
}

fn write_input(dir: &std::path::Path, name: &str, lines: &[&str]) -> std::path::PathBuf {
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    for l in lines {
        writeln!(f, "{l}").unwrap();
    }
    path
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("supertree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(str::to_string)
        .collect()
}

#[test]
fn masp_rooted_end_to_end() {
    let dir = tempdir();
    let input = write_input(&dir, "masp.nwk", &["((a,b),c);", "((a,b),d);"]);
    let out = bin()
        .args(["--problem", "masp", "--mode", "rooted", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let lines = stdout_lines(&out);
    assert_eq!(lines[0], "size=4");
    // the witness must reparse and pass the independent checker
    let inst =
        ProblemInstance::from_newick(&["((a,b),c);", "((a,b),d);", &lines[1]], Mode::Rooted)
            .unwrap();
    let trees = inst.rooted_trees().unwrap();
    assert_eq!(trees[2].num_leaves(), 4);
    assert!(is_agreement_supertree(&trees[2], &trees[..2]));
}

#[test]
fn mcsp_rooted_end_to_end() {
    let dir = tempdir();
    let input = write_input(&dir, "mcsp.nwk", &["(a,b,c);", "((a,b),c);"]);
    let out = bin()
        .args(["--problem", "mcsp", "--mode", "rooted", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines[0], "size=3");
    let inst =
        ProblemInstance::from_newick(&["(a,b,c);", "((a,b),c);", &lines[1]], Mode::Rooted)
            .unwrap();
    let trees = inst.rooted_trees().unwrap();
    assert!(is_compatible_supertree(&trees[2], &trees[..2]));
}

#[test]
fn parse_error_reports_position_and_exit_2() {
    let dir = tempdir();
    let input = write_input(&dir, "bad.nwk", &["((a,b),c);", "((a,b;"]);
    let out = bin()
        .args(["--problem", "masp", "--mode", "rooted", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.nwk:2:"), "stderr: {err}");
}

#[test]
fn degenerate_unrooted_input_exits_3() {
    let dir = tempdir();
    let input = write_input(&dir, "deg.nwk", &["(a,b);", "(a,b,c);"]);
    let out = bin()
        .args(["--problem", "masp", "--mode", "unrooted", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn missing_required_flags_exit_1() {
    let dir = tempdir();
    let input = write_input(&dir, "ok.nwk", &["(a,b);"]);
    let out = bin()
        .args(["--mode", "rooted", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = bin().args(["--problem", "nope", "--mode", "rooted"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_accepts_correct_answers() {
    let dir = tempdir();
    let input = write_input(&dir, "verify.nwk", &["((a,b),c);", "((a,c),b);"]);
    for problem in ["masp", "mcsp"] {
        let out = bin()
            .args(["--problem", problem, "--mode", "rooted", "--verify", "--input"])
            .arg(&input)
            .output()
            .unwrap();
        assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
        assert!(String::from_utf8_lossy(&out.stderr).contains("verified"));
    }
}

#[test]
fn verify_over_cap_is_usage_error() {
    let dir = tempdir();
    let input = write_input(
        &dir,
        "big.nwk",
        &["((a,b),(c,d),((e,f),(g,h)));"],
    );
    let out = bin()
        .args(["--problem", "masp", "--mode", "rooted", "--verify", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn stats_emit_json_on_stderr() {
    let dir = tempdir();
    let input = write_input(&dir, "stats.nwk", &["((a,b),c);"]);
    let out = bin()
        .args(["--problem", "mcsp", "--mode", "rooted", "--stats", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    let v: serde_json::Value = serde_json::from_str(err.lines().next().unwrap()).unwrap();
    assert!(v["states_visited"].as_u64().unwrap() >= 1);
    assert!(v["wall_ms"].as_f64().is_some());
}

#[test]
fn dump_states_lists_every_state() {
    let dir = tempdir();
    let input = write_input(&dir, "dump.nwk", &["((a,b),c);"]);
    let out = bin()
        .args([
            "--problem", "mcsp", "--mode", "rooted", "--stats", "--dump-states", "--input",
        ])
        .arg(&input)
        .output()
        .unwrap();
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    let stats: serde_json::Value = serde_json::from_str(err.lines().next().unwrap()).unwrap();
    let dumped = err.lines().skip(1).filter(|l| l.contains("value=")).count();
    assert_eq!(dumped as u64, stats["states_visited"].as_u64().unwrap());
}

#[test]
fn generation_is_deterministic_and_reparses() {
    let run = || {
        bin()
            .args([
                "--mode", "rooted", "--seed", "1", "--gen-k", "2", "--gen-n", "5", "--gen-d",
                "3",
            ])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "generation must be byte-deterministic");
    let text = String::from_utf8_lossy(&a.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let inst = ProblemInstance::from_newick(&lines, Mode::Rooted).unwrap();
    assert!(inst.max_degree() <= 3);
}

#[test]
fn unsatisfiable_generation_exits_1() {
    let out = bin()
        .args(["--mode", "unrooted", "--seed", "1", "--gen-d", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn generated_instances_solve_cleanly() {
    let dir = tempdir();
    for (mode, d) in [("rooted", "3"), ("unrooted", "3")] {
        let gen = bin()
            .args(["--mode", mode, "--seed", "7", "--gen-k", "3", "--gen-n", "6", "--gen-d", d])
            .output()
            .unwrap();
        assert!(gen.status.success());
        let path = dir.join(format!("gen-{mode}.nwk"));
        std::fs::write(&path, &gen.stdout).unwrap();
        for problem in ["masp", "mcsp"] {
            let out = bin()
                .args(["--problem", problem, "--mode", mode, "--verify", "--input"])
                .arg(&path)
                .output()
                .unwrap();
            assert!(
                out.status.success(),
                "{problem} {mode}: {}",
                String::from_utf8_lossy(&out.stderr)
            );
        }
    }
}
