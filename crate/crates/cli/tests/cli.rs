//! End-to-end checks of the binary: the corpus of worked examples
//! reproduces its expected records byte for byte, output is
//! deterministic across runs, and the exit codes separate malformed
//! input from honest domain failures.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn run_in_corpus<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polychi"))
        .args(args)
        .current_dir(corpus_dir())
        .output()
        .expect("the binary runs")
}

#[test]
fn corpus_reproduces_expected_records() {
    let manifest = std::fs::read_to_string(corpus_dir().join("expected.jsonl")).unwrap();
    let mut checked = 0;
    for (i, line) in manifest.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let entry: serde_json::Value = serde_json::from_str(line)
            .unwrap_or_else(|e| panic!("manifest line {}: {e}", i + 1));
        let args: Vec<String> = entry["args"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap().to_string())
            .collect();
        let out = run_in_corpus(&args);
        let expected_exit = entry["exit"].as_i64().unwrap() as i32;
        assert_eq!(
            out.status.code(),
            Some(expected_exit),
            "args {args:?}: stdout {:?} stderr {:?}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        );
        if let Some(expected) = entry["stdout"].as_str() {
            assert_eq!(
                String::from_utf8(out.stdout).unwrap(),
                format!("{expected}\n"),
                "args {args:?}"
            );
        }
        if let Some(needle) = entry["stderr_contains"].as_str() {
            let err = String::from_utf8_lossy(&out.stderr);
            assert!(err.contains(needle), "args {args:?}: stderr {err:?}");
        }
        checked += 1;
    }
    assert!(checked >= 25, "the corpus should stay comprehensive, found {checked} entries");
}

#[test]
fn output_is_deterministic() {
    let first = run_in_corpus(&["chi", "check.pset", "S"]);
    let second = run_in_corpus(&["chi", "check.pset", "S"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stderr, second.stderr);
}

#[test]
fn malformed_input_exits_one() {
    let missing = run_in_corpus(&["chi", "no_such_file.pset", "S"]);
    assert_eq!(missing.status.code(), Some(1));

    let unknown = run_in_corpus(&["chi", "check.pset", "NOPE"]);
    assert_eq!(unknown.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("no set named"));

    let syntax = {
        let bad = std::env::temp_dir().join(format!("polychi_bad2_{}.pset", std::process::id()));
        std::fs::write(&bad, "dim 1;\nA = x2 < 1;").unwrap();
        let out = run_in_corpus(&["chi", bad.to_str().unwrap(), "A"]);
        std::fs::remove_file(&bad).unwrap();
        out
    };
    assert_eq!(syntax.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&syntax.stderr).contains("line 2, column 5"));
}

#[test]
fn usage_errors_and_help() {
    let none = run_in_corpus::<&str>(&[]);
    assert_eq!(none.status.code(), Some(1));

    let help = run_in_corpus(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("chi"));

    let bad_method = run_in_corpus(&["chi", "check.pset", "S", "--method", "guess"]);
    assert_eq!(bad_method.status.code(), Some(1));
}
