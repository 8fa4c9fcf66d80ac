use std::path::{Path, PathBuf};

use hpdual::cli::{run_cli, EXIT_INPUT, EXIT_NOT_NORMAL, EXIT_OK, EXIT_TRUNCATION};
use serde_json::Value;
use tempfile::TempDir;

const WORKED: &str = r#"{"m": 1, "coefficients": [["1", "0"], ["1", "1"]]}"#;
const GEOMETRIC: &str = r#"{"m": 1, "coefficients": [["1", "0", "0", "0"], ["1", "1", "1", "1"]]}"#;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_cli(
        std::iter::once("hpdual").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn theorem1_on_worked_example() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "w.json", WORKED);
    let o = run(&["theorem1", "--input", s(&input), "--n", "1"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    for line in [
        "M1 =\n  [1 + 1*z, -1*z]\n  [1*z, 1 - 1*z]\n",
        "M2 =\n  [1 - 1*z, 1*z]\n  [-1*z, 1 + 1*z]\n",
        "M1*M2 =\n  [1, 0]\n  [0, 1]\n",
        "det M1 = 1\n",
        "M1*M2 = I: true\n",
    ] {
        assert!(o.stdout.contains(line), "missing {line:?} in\n{}", o.stdout);
    }
}

#[test]
fn theorem1_json_on_worked_example() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "w.json", WORKED);
    let o = run(&[
        "--format",
        "json",
        "theorem1",
        "--input",
        s(&input),
        "--n",
        "1",
    ]);
    assert_eq!(o.code, EXIT_OK);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["holds"], true);
    assert_eq!(
        v["m1"],
        serde_json::json!([[["1", "1"], ["0", "-1"]], [["0", "1"], ["1", "-1"]]])
    );
    assert_eq!(
        v["m2"],
        serde_json::json!([[["1", "-1"], ["0", "1"]], [["0", "-1"], ["1", "1"]]])
    );
    assert_eq!(v["det_m1"], serde_json::json!(["1"]));
}

#[test]
fn theorem1_reports_degenerate_tuple() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "g.json", GEOMETRIC);
    let o = run(&["theorem1", "--input", s(&input), "--n", "2"]);
    assert_eq!(o.code, EXIT_NOT_NORMAL);
    assert!(o.stderr.contains("not normal"), "{}", o.stderr);
    assert!(
        o.stdout.contains("type I  k=0: singular (rank 3 of 4)"),
        "{}",
        o.stdout
    );
    assert!(o.stdout.contains("general position at n: false"));
}

#[test]
fn normality_exit_codes() {
    let dir = TempDir::new().unwrap();
    let w = write(&dir, "w.json", WORKED);
    let g = write(&dir, "g.json", GEOMETRIC);
    assert_eq!(
        run(&["normality", "--input", s(&w), "--n", "1"]).code,
        EXIT_OK
    );
    let o = run(&[
        "--format",
        "json",
        "normality",
        "--input",
        s(&g),
        "--n",
        "2",
    ]);
    assert_eq!(o.code, EXIT_NOT_NORMAL);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["general_position_at_n"], false);
    assert_eq!(v["type1"][0]["verdict"], "singular");
}

#[test]
fn gen_then_theorem1() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("t.json");
    let o = run(&[
        "gen",
        "--seed",
        "42",
        "--m",
        "2",
        "--coeffs",
        "8",
        "--out",
        s(&path),
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let o = run(&["theorem1", "--input", s(&path), "--n", "2"]);
    assert_eq!(o.code, EXIT_OK, "{}{}", o.stdout, o.stderr);
    assert!(o.stdout.contains("M1*M2 = I: true"));
}

#[test]
fn gen_is_deterministic() {
    let a = run(&["gen", "--seed", "7", "--m", "1", "--coeffs", "4"]);
    let b = run(&["gen", "--seed", "7", "--m", "1", "--coeffs", "4"]);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn single_index_subcommands() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "w.json", WORKED);
    let o = run(&["type1", "--input", s(&input), "--n", "1", "--k", "1"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("Q = [1, 1 - 1*z]"), "{}", o.stdout);
    let o = run(&["type2", "--input", s(&input), "--n", "1", "--s", "0"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("P = [1 - 1*z, -1]"), "{}", o.stdout);
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        r#"{"m": 1, "coefficients": [["1", "x"], ["1", "1"]]}"#,
    );
    let o = run(&["theorem1", "--input", s(&bad), "--n", "1"]);
    assert_eq!(o.code, EXIT_INPUT);
    assert!(o.stderr.contains("coefficients[0][1]"), "{}", o.stderr);

    let lead = write(
        &dir,
        "lead.json",
        r#"{"m": 1, "coefficients": [["0", "1"], ["1", "1"]]}"#,
    );
    assert_eq!(
        run(&["type1", "--input", s(&lead), "--n", "1"]).code,
        EXIT_INPUT
    );

    let w = write(&dir, "w.json", WORKED);
    assert_eq!(
        run(&["type1", "--input", s(&w), "--n", "1", "--k", "5"]).code,
        EXIT_INPUT
    );
    assert_eq!(run(&["theorem1", "--input", s(&w)]).code, EXIT_INPUT);
    assert_eq!(run(&["frobnicate"]).code, EXIT_INPUT);
}

#[test]
fn short_series_exit_4() {
    let dir = TempDir::new().unwrap();
    let w = write(&dir, "w.json", WORKED);
    let o = run(&["theorem1", "--input", s(&w), "--n", "3"]);
    assert_eq!(o.code, EXIT_TRUNCATION);
    assert!(o.stderr.contains("insufficient truncation"), "{}", o.stderr);
}

#[test]
fn help_exits_0() {
    let o = run(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("theorem1"));
}
