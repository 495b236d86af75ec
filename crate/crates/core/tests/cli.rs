use std::fs;
use std::path::Path;

use ovc::cli::{run_command, EXIT_CAP, EXIT_DISAGREE, EXIT_INVALID, EXIT_OK};
use ovc::io::load_instance;
use tempfile::TempDir;

fn run_with_input(args: &[&str], input: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ovc").chain(args.iter().copied());
    let code = run_command(argv, &mut input.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_with_input(args, "")
}

fn gen_to(dir: &TempDir, name: &str, args: &[&str]) -> String {
    let path = dir.path().join(name);
    let p = path.to_str().unwrap().to_string();
    let mut full: Vec<&str> = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &p]);
    let (code, _, err) = run(&full);
    assert_eq!(code, EXIT_OK, "{err}");
    p
}

const AV_QBF: &str = r#"{
  "control": "AV", "mode": "constructive", "system": "qbf-dv",
  "candidates": ["(x1|x2)", "(x1|x2)0"], "sigma": ["(x1|x2)", "(x1|x2)0"], "distinguished": "(x1|x2)",
  "budget": 1, "past": [],
  "current": {"voter": "0101", "ballot": ["(x1|x2)", "(x1|x2)0"]},
  "future": [{"voter": "1010", "registered": false}]
}"#;

#[test]
fn fast_engine_refuses_other_systems() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("av.json");
    fs::write(&p, AV_QBF).unwrap();
    let (code, _, err) = run(&["solve", "--instance", p.to_str().unwrap(), "--engine", "fast"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("plurality"), "{err}");
    let (code, out, _) = run(&["solve", "--instance", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("chair-"));
}

#[test]
fn generated_qbf_instance_is_chair_winning() {
    let dir = TempDir::new().unwrap();
    let p = gen_to(&dir, "q.json", &["qbf", "--family", "ccdv", "--formula", "(x1|x2)"]);
    let (code, out, _) = run(&["solve", "--instance", &p, "--engine", "exact"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("chair-wins"));
    assert!(out.contains("witness: "));
}

#[test]
fn every_generator_output_loads() {
    let dir = TempDir::new().unwrap();
    let sets = dir.path().join("sets.txt");
    fs::write(&sets, "2 2 1\n1 2\n2\n").unwrap();
    let sets = sets.to_str().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["qbf", "--family", "dcpv", "--formula", "(x1&x2)"],
        vec!["sat1c", "--formula", "((x1|x2)&!x1)"],
        vec!["taut", "--formula", "(x1|!x1)"],
        vec!["hs", "--sets-file", sets, "--variant", "cc"],
        vec!["hs", "--sets-file", sets, "--variant", "dc", "--k", "2"],
        vec!["random", "--control", "AV", "--mode", "dc", "--seed", "9"],
        vec!["random", "--control", "PV", "--mode", "cc", "--past", "4"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let p = gen_to(&dir, &format!("g{i}.json"), args);
        assert!(load_instance(Path::new(&p)).is_ok(), "{args:?}");
    }
}

#[test]
fn gen_is_deterministic_under_seed() {
    let args = ["gen", "random", "--control", "DV", "--mode", "constructive", "--seed", "42", "--future", "3"];
    assert_eq!(run(&args).1, run(&args).1);
    let other = ["gen", "random", "--control", "DV", "--mode", "constructive", "--seed", "43", "--future", "3"];
    assert_ne!(run(&args).1, run(&other).1);
}

#[test]
fn fast_and_exact_agree_through_the_cli() {
    let dir = TempDir::new().unwrap();
    for seed in 0..20 {
        let s = seed.to_string();
        let control = if seed % 2 == 0 { "DV" } else { "AV" };
        let p = gen_to(&dir, &format!("r{seed}.json"), &["random", "--control", control, "--mode", "cc", "--seed", &s]);
        let exact = run(&["solve", "--instance", &p]).1;
        let fast = run(&["solve", "--instance", &p, "--engine", "fast"]).1;
        assert_eq!(exact.lines().next(), fast.lines().next(), "seed {seed}");
    }
}

#[test]
fn cap_exceeded_exit_three() {
    let dir = TempDir::new().unwrap();
    let p = gen_to(&dir, "big.json", &["random", "--control", "DV", "--mode", "cc", "--candidates", "4"]);
    let (code, _, err) = run(&["solve", "--instance", &p, "--max-candidates", "3"]);
    assert_eq!(code, EXIT_CAP);
    assert!(err.contains("cap"));
}

#[test]
fn invalid_instance_exit_two() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bad.json");
    fs::write(&p, r#"{"control": "DV"}"#).unwrap();
    assert_eq!(run(&["solve", "--instance", p.to_str().unwrap()]).0, EXIT_INVALID);
    assert_eq!(run(&["solve", "--instance", "/nonexistent/x.json"]).0, EXIT_INVALID);
}

#[test]
fn verify_plurality_exhaustive_is_clean() {
    let dir = TempDir::new().unwrap();
    let json = dir.path().join("report.json");
    let (code, out, _) = run(&["verify", "--suite", "plurality-fast-vs-exact", "--json", json.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let summary = out.lines().last().unwrap();
    assert!(summary.ends_with(" 0 disagree, 0 errors"), "{summary}");
    let dump: serde_json::Value = serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(dump["total"].as_u64().unwrap() as usize, dump["cases"].as_array().unwrap().len());
    assert_eq!(dump["disagreed"], 0);
}

#[test]
fn verify_reports_repeat_under_seed() {
    let args = ["verify", "--suite", "plurality-random", "--seed", "11", "--limit", "300"];
    let first = run(&args);
    assert_eq!(first.0, EXIT_OK);
    assert_eq!(first, run(&args));
    for suite in ["qbf", "sat1c", "taut", "hs-scores"] {
        let (code, out, _) = run(&["verify", "--suite", suite, "--seed", "5"]);
        assert_eq!(code, EXIT_OK, "{out}");
    }
}

#[test]
fn winners_subcommand() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("e.json");
    fs::write(
        &p,
        r#"{"candidates": ["a", "b", "c"], "ballots": [
            {"voter": "v1", "order": ["a", "b", "c"]},
            {"voter": "v2", "order": ["b", "a", "c"]},
            {"voter": "v3", "order": ["a", "c", "b"]}]}"#,
    )
    .unwrap();
    let (code, out, _) = run(&["winners", "--system", "plurality", "--election", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "{a}");
    let (code, out, _) = run(&["winners", "--system", "taut", "--election", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "{}");
    assert_eq!(run(&["winners", "--system", "borda", "--election", p.to_str().unwrap()]).0, EXIT_INVALID);
}

#[test]
fn play_one_candidate_offers_left_right_only() {
    let dir = TempDir::new().unwrap();
    let p = gen_to(&dir, "s.json", &["sat1c", "--formula", "x1"]);
    let (code, out, _) = run_with_input(&["play", "--instance", &p], "keep\nleft\nright\n");
    assert!(out.contains("choose [left right]:"));
    assert!(out.contains("illegal action \"keep\""));
    // the sole future voter's ballot is forced
    assert_eq!(out.lines().filter(|l| l.starts_with("reveal ")).count(), 1);
    assert!(out.contains("goal met") || out.contains("goal not met"));
    assert_eq!(code, EXIT_OK);
}

#[test]
fn play_quit_leaves_partial_transcript() {
    let dir = TempDir::new().unwrap();
    let p = gen_to(&dir, "r.json", &["random", "--control", "DV", "--mode", "cc", "--future", "2", "--seed", "3"]);
    let (code, out, _) = run_with_input(&["play", "--instance", &p], "keep\nquit\n");
    assert_eq!(code, EXIT_DISAGREE);
    assert!(out.contains("transcript:\n  chair keep u\n  reveal v1 "), "{out}");
    assert!(!out.contains("winners:"));
    let (code, out, _) = run_with_input(&["play", "--instance", &p], "");
    assert_eq!(code, EXIT_DISAGREE);
    assert!(out.contains("aborted"));
}

#[test]
fn play_following_hints_meets_goal() {
    let dir = TempDir::new().unwrap();
    let p = gen_to(&dir, "q.json", &["qbf", "--family", "ccav", "--formula", "(x1|x2)"]);
    // Feed the hint back each time by replaying with a growing script.
    let mut script = String::new();
    loop {
        let (code, out, _) = run_with_input(&["play", "--instance", &p], &script);
        if code == EXIT_OK {
            assert!(out.contains("goal met"), "{out}");
            break;
        }
        let hint = out.lines().filter_map(|l| l.strip_prefix("hint: ")).next_back().unwrap();
        assert!(!hint.starts_with("none"), "{out}");
        script.push_str(hint);
        script.push('\n');
    }
}
