use std::path::PathBuf;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_paperfold");

fn paperfold(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = paperfold(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden(file: &str) -> String {
    std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(file)).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("paperfold-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn tables_match_golden_files() {
    assert_eq!(stdout(&["gen", "--regular", "--length", "5", "--terms", "16"]), golden("table1_regular_terms.tsv"));
    assert_eq!(stdout(&["gen", "--code", "++++"]), golden("table2_word.tsv"));
    assert_eq!(stdout(&["runs", "--code", "++++"]), golden("table2_runs.tsv"));
}

#[test]
fn output_is_deterministic() {
    let args = ["runs", "--code", "+-+--+", "--format", "json-lines"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn single_term_agrees_with_the_word() {
    let word = stdout(&["gen", "--code", "+--++-"]);
    for line in word.lines().skip(1).step_by(7) {
        let (n, p) = line.split_once('\t').unwrap();
        let single = stdout(&["gen", "--code", "+--++-", "--index", n]);
        assert_eq!(single.lines().nth(1).unwrap(), format!("{n}\t{p}"));
    }
}

#[test]
fn squares_of_a_long_code() {
    let out = stdout(&["runs", "--code", "+++++++", "--squares"]);
    let found: Vec<&str> = out.lines().collect();
    assert_eq!(found, ["22", "123123", "321321"]);
}

#[test]
fn cf_for_the_worked_example() {
    let out = stdout(&["cf", "--eps", "+,-,-,+"]);
    assert!(out.contains("[0, 1, 4, 4, 2, 6, 4, 2, 4, 4, 6, 4, 2, 4, 6, 2, 4, 5]"), "{out}");
    assert!(out.contains("MATCH"), "{out}");
}

#[test]
fn bad_input_is_a_usage_error() {
    for args in [
        vec!["gen", "--code", "+x+"],
        vec!["gen"],
        vec!["frobnicate"],
        vec!["cf", "--eps", ""],
        vec!["dot", "--input", "/nonexistent/automaton.txt"],
    ] {
        let out = paperfold(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let out = paperfold(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for sub in ["gen", "runs", "infer", "verify", "cf", "complexity", "dot"] {
        assert!(text.contains(sub), "{sub} missing from help");
    }
}

#[test]
fn infer_then_render_from_file() {
    let path = scratch("rlr.txt");
    let p = path.to_str().unwrap();
    let summary = stdout(&["infer", "--relation", "rlr", "--sample-depth", "8", "--test-depth", "5", "--out", p]);
    assert!(summary.starts_with("relation\tstates\tlive\n"), "{summary}");
    let dot = stdout(&["dot", "--input", p]);
    assert!(dot.starts_with("digraph"), "{dot}");
    let direct = stdout(&["dot", "--relation", "rlr"]);
    assert!(direct.starts_with("digraph"));
    std::fs::remove_file(path).ok();
}

#[test]
fn verify_cf_suite_passes() {
    let out = paperfold(&["verify", "--suite", "cf", "--max-code-len", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("check\tbound\tverdict\twitness\n"));
    assert!(text.lines().skip(1).all(|l| l.split('\t').nth(2) == Some("PASS")), "{text}");
}

#[test]
fn complexity_table_on_the_regular_code() {
    let out = stdout(&["complexity", "--from", "6", "--to", "8"]);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows, ["n\tfactors\tright_special", "6\t28\t4", "7\t32\t4", "8\t36\t4"]);
}
