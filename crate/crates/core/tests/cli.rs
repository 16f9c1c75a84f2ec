//! Exit codes and outputs of the command-line binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_discourse-dynamics"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

#[test]
fn missing_corpus_exits_1() {
    let out = tempfile::tempdir().unwrap();
    let o = run(&[
        "--quiet",
        "--output",
        out.path().to_str().unwrap(),
        "ingest",
        "--corpus",
        "/nonexistent/corpus.jsonl",
        "--keywords",
        data("keywords.csv").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn editorial_record_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.jsonl");
    std::fs::write(
        &corpus,
        concat!(
            r#"{"id":"1","date":"1930-01-01","type":"article","source":"s","text":"radio"}"#,
            "\n",
            r#"{"id":"2","date":"1930-05-01","type":"editorial","source":"s","text":"radio"}"#,
            "\n"
        ),
    )
    .unwrap();
    let o = run(&[
        "--quiet",
        "--output",
        dir.path().to_str().unwrap(),
        "ingest",
        "--corpus",
        corpus.to_str().unwrap(),
        "--keywords",
        data("keywords.csv").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("c.jsonl:2: malformed record"));
}

#[test]
fn empty_keyword_list_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let kw = dir.path().join("kw.csv");
    std::fs::write(&kw, "canonical,surface_forms\n").unwrap();
    let o = run(&[
        "--quiet",
        "--output",
        dir.path().to_str().unwrap(),
        "ingest",
        "--corpus",
        data("mini_corpus.jsonl").to_str().unwrap(),
        "--keywords",
        kw.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_arguments_exit_1() {
    assert_eq!(run(&["validate", "--reps", "0"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn synth_then_afa_and_granger() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = run(&["--quiet", "--output", d, "--seed", "5", "synth", "fgn", "--n", "4096", "--hurst", "0.8"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["--quiet", "--output", d, "afa", dir.path().join("fgn.csv").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let afa: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("afa.json")).unwrap()).unwrap();
    assert!((afa["hurst"].as_f64().unwrap() - 0.8).abs() < 0.1);

    let o = run(&["--quiet", "--output", d, "synth", "var", "--n", "500", "--axy", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let var = std::fs::read_to_string(dir.path().join("var.csv")).unwrap();
    let (mut x, mut y) = (String::from("x\n"), String::from("y\n"));
    for line in var.lines().skip(1) {
        let (a, b) = line.split_once(',').unwrap();
        x.push_str(a);
        x.push('\n');
        y.push_str(b);
        y.push('\n');
    }
    std::fs::write(dir.path().join("x.csv"), x).unwrap();
    std::fs::write(dir.path().join("y.csv"), y).unwrap();
    let o = run(&[
        "--quiet",
        "--output",
        d,
        "granger",
        "--no-difference",
        dir.path().join("x.csv").to_str().unwrap(),
        dir.path().join("y.csv").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let g: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("granger.json")).unwrap()).unwrap();
    assert!(g["p_xy"].as_f64().unwrap() < 0.005);
}
