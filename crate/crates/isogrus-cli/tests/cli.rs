use std::process::{Command, Output};

fn isogrus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isogrus")).args(args).env_remove("ISOGRUS_CACHE_DIR").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = isogrus(args);
    assert!(out.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(isogrus(&["enumerate"]).status.code(), Some(2));
    assert_eq!(isogrus(&["enumerate", "--n", "0"]).status.code(), Some(2));
    assert_eq!(isogrus(&["cupdiag", "--lambda", "duuu"]).status.code(), Some(2));
    assert_eq!(isogrus(&["multiply", "--n", "2", "--word", "L(uu,1-3)"]).status.code(), Some(2));
    assert_eq!(isogrus(&["--help"]).status.code(), Some(0));
}

#[test]
fn enumerate_lists_weights() {
    assert_eq!(stdout(&["enumerate", "--n", "3"]), "ddd ∨∨∨ ()\nduu ∨∧∧ (1,2)\nudu ∧∨∧ (1,1)\nuud ∧∧∨ (1)\n");
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--format", "json", "enumerate", "--n", "4"])).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 8);
}

#[test]
fn kl_polynomial() {
    assert_eq!(stdout(&["kl", "--lambda", "dduududud", "--mu", "uuudduuud"]).trim(), "q^2");
    assert_eq!(stdout(&["kl", "--lambda", "uu", "--mu", "dd"]).trim(), "0");
}

#[test]
fn cup_diagrams() {
    assert_eq!(stdout(&["cupdiag", "--lambda", "dddd"]), "| | | |\n");
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--format", "json", "cupdiag", "--lambda", "uuudduuud"])).unwrap();
    assert_eq!(v["cups"].as_array().unwrap().len(), 4);
}

#[test]
fn alperin_dot() {
    let dot = stdout(&["--format", "dot", "alperin", "--lambda", "dd"]);
    assert_eq!(dot.matches(" -> ").count(), 1);
    assert_eq!(dot.matches("rank=same").count(), 2);
}

#[test]
fn multiply_outputs() {
    let text = stdout(&["multiply", "--n", "2", "--word", "R(uu,1-2);L(uu,1-2)"]);
    assert_eq!(text, "word: R(uu,1-2);L(uu,1-2)\n1 * D[uu <- dd <- uu]\n");
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--format", "json", "multiply", "--n", "2", "--word", "L(uu,1-2);R(uu,1-2)"])).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 0);
    assert_eq!(stdout(&["--seed", "9", "multiply", "--n", "5", "--random", "5"]), stdout(&["--seed", "9", "multiply", "--n", "5", "--random", "5"]));
}

#[test]
fn selfcheck_small() {
    let out = stdout(&["selfcheck", "--n", "4"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 11);
}
