use std::process::Command;

use stepwalk::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("stepwalk").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn count_to_a_target() {
    let (code, out, _) = call(&["count", "--family", "EN", "--target", "3,2"]);
    assert_eq!(code, 0);
    assert!(out.contains("10"), "{out}");
    let (code, out, _) = call(&["count", "--steps", "[[1,0],[0,1],[-1,0],[0,-1]]", "--target", "1,1"]);
    assert_eq!(code, 0);
    assert!(out.contains("inf"), "{out}");
}

#[test]
fn count_json_format() {
    let (code, out, _) = call(&["count", "--family", "EN", "--target", "4,4", "--constraint", "below-diagonal", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v.to_string().contains("\"14\""), "{v}");
}

#[test]
fn count_window_to_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t.csv");
    let (code, _, err) = call(&["count", "--family", "EN", "--window", "2", "--csv-out", csv.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(csv).unwrap();
    assert!(text.lines().count() >= 9);
    assert!(text.contains("2,2,") && text.contains(",6"), "{text}");
}

#[test]
fn classify_commands() {
    let (code, out, _) = call(&["classify", "--steps", "[[0,1],[1,0]]"]);
    assert_eq!(code, 0);
    assert!(out.contains("(I)"), "{out}");
    let (code, out, _) = call(&["classify", "--steps", "[[0,1],[1,0],[0,-1],[-1,0],[1,1]]", "--constraint", "punctured-quadrant"]);
    assert_eq!(code, 0);
    assert!(out.contains("(IX)"), "{out}");
    let (code, out, _) = call(&["classify", "--family", "one_times_Z", "--bound", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("(III)"), "{out}");
}

#[test]
fn sequence_with_fixture_lookup() {
    let (code, out, err) = call(&[
        "sequence", "--family", "EN", "--constraint", "below-diagonal", "--diagonal", "--oeis", "fixture",
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("1, 1, 2, 5, 14, 42") || out.contains("1,1,2,5,14,42"), "{out}");
    assert!(out.contains("A000108"), "{out}");
}

#[test]
fn graph_files() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let tex = dir.path().join("g.tex");
    let (code, _, err) = call(&[
        "graph", "--steps", "[[1,0],[0,1]]", "--window", "3",
        "--dot-out", dot.to_str().unwrap(), "--tikz-out", tex.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(std::fs::read_to_string(dot).unwrap(), include_str!("golden/en_square3.dot"));
    assert!(std::fs::read_to_string(tex).unwrap().contains("tikzpicture"));
}

#[test]
fn job_files() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("job.json");
    std::fs::write(&job, r#"{"v":1,"command":"count","stepset":{"family":"EN"},"target":[5,5]}"#).unwrap();
    let (code, out, err) = call(&["count", "--job", job.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("252"), "{out}");
    // flags override the file
    let (code, out, _) = call(&["count", "--job", job.to_str().unwrap(), "--target", "2,1"]);
    assert_eq!(code, 0);
    assert!(out.contains('3'), "{out}");
    // the file must match the subcommand
    let (code, _, err) = call(&["classify", "--job", job.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("job file"), "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["count", "--steps", "[[0,1],"]).0, 1);
    assert_eq!(call(&["frobnicate"]).0, 1);
    assert_eq!(call(&["count", "--family", "nope", "--target", "1,1"]).0, 1);
    assert_eq!(call(&["count", "--family", "one_times_N", "--target", "1,1"]).0, 1, "missing truncation");
    assert_eq!(call(&["count", "--constraint", "hexagon", "--family", "EN", "--target", "1,1"]).0, 1);
    assert_eq!(call(&["appendix", "--pairs", "3"]).0, 2);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("classify"));
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_stepwalk");
    let ok = Command::new(bin).args(["count", "--family", "EN", "--target", "3,2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("10"));
    let bad = Command::new(bin).args(["count", "--steps", "[[0,0]]", "--target", "1,1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(!bad.stderr.is_empty());
}
