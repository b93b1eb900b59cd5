use std::collections::BTreeMap;
use std::process::Command;

use modlie::cli::{emit_algebra_file, parse_algebra_file, run_command, CommandOutput};
use modlie::liealg::{family_build, FamilyMember};

fn run(args: &[&str]) -> CommandOutput {
    run_command(std::iter::once("modlie").chain(args.iter().copied()))
}

fn summary(out: &str) -> BTreeMap<String, String> {
    let block: Vec<&str> = out.split("---summary---\n").collect();
    assert_eq!(block.len(), 3, "one fenced summary block:\n{out}");
    block[1]
        .lines()
        .map(|l| {
            let (k, v) = l.split_once(": ").expect("key: value");
            (k.to_string(), v.to_string())
        })
        .collect()
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("modlie-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn assert_single_line_error(out: &CommandOutput, code: i32, kind: &str) {
    assert_eq!(out.code, code, "{out:?}");
    assert_eq!(out.stderr.lines().count(), 1, "{out:?}");
    assert!(
        out.stderr.starts_with(&format!("error[{kind}]: ")),
        "{out:?}"
    );
}

#[test]
fn family_emit_then_check() {
    let path = tmp("l34.json");
    let out = run(&[
        "family",
        "--p",
        "3",
        "--k",
        "4",
        "--which",
        "L",
        "--emit",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{out:?}");
    assert_eq!(summary(&out.stdout)["dim"], "6");
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{out:?}");
    assert_eq!(summary(&out.stdout)["valid"], "true");
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        parse_algebra_file(&text).unwrap(),
        family_build(3, 1, 4, FamilyMember::L).unwrap()
    );
}

#[test]
fn index_closure_restrictable() {
    let path = tmp("l23.json");
    std::fs::write(
        &path,
        emit_algebra_file(&family_build(2, 1, 3, FamilyMember::L).unwrap()),
    )
    .unwrap();
    let f = path.to_str().unwrap();

    let s = summary(&run(&["index", f, "--sample", "20", "--ext", "2", "--seed", "5"]).stdout);
    assert_eq!(s["ind"], "3");
    assert_eq!(s["kw1_exponent"], "1");
    assert!(s["sampled_bound"].parse::<usize>().unwrap() >= 3);
    assert_eq!(s["seed"], "5");

    let s = summary(&run(&["restrictable", f]).stdout);
    assert_eq!(s["restrictable"], "false");
    assert_eq!(s["witness"], "D");

    let s = summary(&run(&["closure", f]).stdout);
    assert_eq!(s["verified"], "true");
    assert!(s["closure_dim"].parse::<usize>().unwrap() > s["ad_dim"].parse::<usize>().unwrap());
}

#[test]
fn chop_all_ones_character() {
    let path = tmp("l23chop.json");
    std::fs::write(
        &path,
        emit_algebra_file(&family_build(2, 1, 3, FamilyMember::L).unwrap()),
    )
    .unwrap();
    let out = run(&[
        "chop",
        path.to_str().unwrap(),
        "--character",
        "ones",
        "--seed",
        "7",
    ]);
    assert_eq!(out.code, 0, "{out:?}");
    let s = summary(&out.stdout);
    assert_eq!(s["max_abs_simple_dim"], "4");
    assert_eq!(s["accounting"], "ok");
    assert_eq!(s["seed"], "7");
    let again = run(&[
        "chop",
        path.to_str().unwrap(),
        "--character",
        "ones",
        "--seed",
        "7",
    ]);
    assert_eq!(out.stdout, again.stdout);
    let bad = run(&["chop", path.to_str().unwrap(), "--character", "y=1"]);
    assert_single_line_error(&bad, 2, "usage");
}

#[test]
fn iso_check_passes() {
    let out = run(&["iso-check", "--p", "3", "--k", "3"]);
    assert_eq!(out.code, 0, "{out:?}");
    let s = summary(&out.stdout);
    assert_eq!(s["verdict"], "pass");
    assert_eq!(s["cap"], "5");
    let low = run(&["iso-check", "--p", "3", "--k", "3", "--cap", "1"]);
    assert_ne!(low.code, 0);
    assert_eq!(low.stderr.lines().count(), 1);
}

#[test]
fn kw1_pipeline_summary() {
    let out = run(&[
        "kw1", "--p", "2", "--k", "3", "--random", "8", "--seed", "3",
    ]);
    assert_eq!(out.code, 0, "{out:?}");
    let s = summary(&out.stdout);
    assert_eq!(s["dim"], "5");
    assert_eq!(s["ind"], "3");
    assert_eq!(s["ind_prime"], "1");
    assert_eq!(s["kw1_predicted"], "2");
    assert_eq!(s["max_abs_simple_dim"], "4");
    assert_eq!(s["verdict"], "KW1 FAILS for L");
    assert_eq!(s["seed"], "3");
    let again = run(&[
        "kw1", "--p", "2", "--k", "3", "--random", "8", "--seed", "3",
    ]);
    assert_eq!(summary(&out.stdout), summary(&again.stdout));
}

#[test]
fn failure_paths() {
    assert_single_line_error(&run(&["kw1", "--p", "2", "--k", "12"]), 2, "budget");
    assert_single_line_error(
        &run(&["family", "--p", "2", "--k", "3", "--which", "Q"]),
        2,
        "usage",
    );
    assert_single_line_error(
        &run(&["family", "--p", "4", "--k", "3", "--which", "L"]),
        2,
        "usage",
    );
    assert_single_line_error(
        &run(&["family", "--p", "2", "--k", "2", "--which", "L"]),
        2,
        "usage",
    );
    assert_single_line_error(&run(&["frobnicate"]), 2, "usage");
    assert_single_line_error(&run(&["check", "/nonexistent/file.json"]), 2, "io");
    let out = run(&["kw1", "--p", "2", "--bogus", "1"]);
    assert_single_line_error(&out, 2, "usage");
    assert!(out.stderr.contains("--bogus"));

    let path = tmp("bad.json");
    std::fs::write(&path, r#"{"field": {"p": 2}, "basis": ["a"], "brackets": [{"left": "a", "right": "b", "coeffs": {}}]}"#).unwrap();
    assert_single_line_error(&run(&["check", path.to_str().unwrap()]), 1, "parse");
    std::fs::write(
        &path,
        r#"{"field": {"p": 5}, "basis": ["a", "b", "c"], "brackets": [
            {"left": "a", "right": "b", "coeffs": {"a": "1"}},
            {"left": "a", "right": "c", "coeffs": {"b": "1"}}]}"#,
    )
    .unwrap();
    assert_single_line_error(&run(&["check", path.to_str().unwrap()]), 1, "validation");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_modlie");
    let ok = Command::new(bin)
        .args(["family", "--p", "2", "--k", "3", "--which", "Lprime"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("dim: 5"));
    let budget = Command::new(bin)
        .args(["kw1", "--p", "2", "--k", "12"])
        .output()
        .unwrap();
    assert_eq!(budget.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&budget.stderr).starts_with("error[budget]: BudgetExceeded"));
}
