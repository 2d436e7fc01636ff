//! Golden tests for the command-line surface: outputs are pinned exactly, so
//! any formatting or computation drift fails here.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_charclass")
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn bgo2() -> String {
    data_dir().join("bgo2.json").display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("CHARCLASS_DATA")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("charclass-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn ring_poincare_golden() {
    let out = run(&["ring", "BGO", "3", "--poincare", "--max-degree", "6"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("ring BGO(3) = F2[c:2, w2:2, w3:3]"), "{text}");
    assert!(text.contains("poincare: 1,0,2,1,3,2,5"), "{text}");
}

#[test]
fn ring_basis_golden() {
    let out = run(&["ring", "BO", "2", "--basis", "4"]);
    assert!(out.status.success());
    assert!(
        stdout(&out).contains("basis degree 4: w1^4, w1^2*w2, w2^2"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn ring_even_without_file_is_data_required() {
    let out = run(&["ring", "BGO", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("data required"), "{err}");
    assert!(err.contains("d_table"), "schema named: {err}");
}

#[test]
fn ring_even_with_file() {
    let out = run(&["ring", "BGO", "2", "--file", &bgo2(), "--poincare", "--max-degree", "8"]);
    assert!(out.status.success(), "{}", stderr(&out));
    // dims of F2[a1, lambda, b4]/(a1*lambda): 1,1,2,1,3,2,4,2,5
    assert!(stdout(&out).contains("poincare: 1,1,2,1,3,2,4,2,5"), "{}", stdout(&out));
}

#[test]
fn ring_rejects_unknown_family() {
    let out = run(&["ring", "XX", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn primitive_goldens() {
    let out = run(&["primitive", "BGO", "3", "--degree", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "w2*w3");

    let out2 = run(&["primitive", "BGO", "3", "--degree", "2"]);
    assert_eq!(stdout(&out2).trim(), "w2");

    let out0 = run(&["primitive", "BGO", "3", "--degree", "0"]);
    assert_eq!(stdout(&out0).trim(), "1");
}

#[test]
fn delta_goldens() {
    let out = run(&["delta", "3", "--alpha", "1", "--target-file", &bgo2()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "delta(1) = 0");

    let out2 = run(&["delta", "3", "--alpha", "w2", "--target-file", &bgo2()]);
    assert_eq!(stdout(&out2).trim(), "delta(w2) = a1");

    let out3 = run(&["delta", "3", "--alpha", "w3", "--target-file", &bgo2()]);
    assert_eq!(stdout(&out3).trim(), "delta(w3) = a1^2");
}

#[test]
fn delta_rejects_non_primitive_with_residue() {
    let out = run(&["delta", "3", "--alpha", "c", "--target-file", &bgo2()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("not primitive"), "{err}");
    assert!(err.contains("cK"), "residue printed: {err}");
}

#[test]
fn delta_finds_file_through_data_dir_env() {
    let out = Command::new(bin())
        .args(["delta", "3", "--alpha", "w2", "--target-file", "bgo2.json"])
        .env("CHARCLASS_DATA", data_dir())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "delta(w2) = a1");
}

#[test]
fn verify_clean_file_exits_zero() {
    let out = run(&["verify", "--file", &bgo2(), "--max-degree", "12"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("ok: datum verified to degree 12"));
}

#[test]
fn verify_corrupt_file_exits_three() {
    let good = std::fs::read_to_string(bgo2()).unwrap();
    let corrupt = good.replace("\"w2\": \"a1\"", "\"w2\": \"0\"");
    let path = write_temp("corrupt.json", &corrupt);
    let out = run(&["verify", "--file", path.to_str().unwrap(), "--max-degree", "8"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("verification failed"));
    let _ = std::fs::remove_file(path);
}

#[test]
fn quad_mult_golden() {
    let path = write_temp(
        "t2.json",
        r#"{"field":"Q","n":2,"entries":[[[0,0,1],[0]],[[0],[1]]]}"#,
    );
    let out = run(&["quad", "mult", "--triple", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("multiplicity = 2"), "{}", stdout(&out));
    let _ = std::fs::remove_file(path);
}

#[test]
fn quad_profile_and_reduce_goldens() {
    let path = write_temp(
        "t311.json",
        r#"{"field":"Q","n":3,"entries":[[[0,1],[0],[0]],[[0],[1],[0]],[[0],[0],[1]]]}"#,
    );
    let out = run(&["quad", "profile", "--triple", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("n = 3, generic rank = 3, special rank = 2, mildly degenerating: true"),
        "{text}"
    );

    let out2 = run(&["quad", "reduce", "--triple", path.to_str().unwrap()]);
    assert!(out2.status.success());
    assert!(
        stdout(&out2).contains("reduced triple: rank 2, diag = [1, 1]"),
        "{}",
        stdout(&out2)
    );
    let _ = std::fs::remove_file(path);
}

#[test]
fn quad_model_golden() {
    let path = write_temp(
        "q22.json",
        r#"{"field":"F","n":2,"entries":[[[1],[0]],[[0],[1]]]}"#.replace("\"F\"", "\"Q\"").as_str(),
    );
    let out = run(&["quad", "model", "--triple", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("multiplicity = 1"), "{text}");
    // the printed triple is diag(t,1,1) in the file schema
    assert!(text.contains("\"n\":3"), "{text}");
    let _ = std::fs::remove_file(path);
}

#[test]
fn quad_boundary_golden_over_f5() {
    let path = write_temp(
        "model5.json",
        r#"{"field":"Fp","p":5,"n":3,"entries":[[[0,1],[0],[0]],[[0],[1],[0]],[[0],[0],[1]]]}"#,
    );
    let out = run(&[
        "quad",
        "boundary",
        "--triple",
        path.to_str().unwrap(),
        "--alpha",
        "w2",
        "--target-file",
        &bgo2(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("nu = 1, parity = 1"), "{text}");
    assert!(text.contains("delta(alpha) = a1"), "{text}");
    assert!(text.contains("boundary class = a1"), "{text}");
    assert!(text.contains("reduced triple: rank 2, diag = [1, 1]"), "{text}");
    let _ = std::fs::remove_file(path);
}

#[test]
fn quad_boundary_even_multiplicity_kills_class() {
    let path = write_temp(
        "even.json",
        r#"{"field":"Q","n":3,"entries":[[[0,0,1],[0],[0]],[[0],[1],[0]],[[0],[0],[1]]]}"#,
    );
    let out = run(&[
        "quad",
        "boundary",
        "--triple",
        path.to_str().unwrap(),
        "--alpha",
        "w2",
        "--target-file",
        &bgo2(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("nu = 2, parity = 0"), "{text}");
    assert!(text.contains("delta(alpha) = a1"), "{text}");
    assert!(text.contains("boundary class = 0"), "{text}");
    let _ = std::fs::remove_file(path);
}

#[test]
fn quad_rejects_non_mild_with_diagnosis() {
    let path = write_temp(
        "notmild.json",
        r#"{"field":"Q","n":3,"entries":[[[0,1],[0],[0]],[[0],[0,1],[0]],[[0],[0],[1]]]}"#,
    );
    let out = run(&["quad", "reduce", "--triple", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("special rank 1 = n-2: not minimally degenerate"), "{err}");
    let _ = std::fs::remove_file(path);
}

#[test]
fn json_mode_is_stable_and_versioned() {
    let args = ["ring", "BGO", "3", "--poincare", "--max-degree", "6", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b), "byte-identical reruns");
    let value: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(value["schema_version"], 1);
    assert_eq!(value["status"], "ok");
    assert_eq!(value["payload"]["kind"], "ring");
    assert_eq!(value["payload"]["poincare"][4], 3);
}

#[test]
fn json_mode_reports_errors() {
    let out = run(&["ring", "BGO", "4", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["status"], "error");
    assert!(value["error"].as_str().unwrap().contains("data required"));
}

#[test]
fn delta_even_rank_is_data_required() {
    let out = run(&["delta", "4", "--alpha", "lambda", "--target-file", &bgo2()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("external data"), "{}", stderr(&out));
}

#[test]
fn delta_rank_five_needs_even_target_file() {
    let out = run(&["delta", "5", "--alpha", "w2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("rank 4"), "{}", stderr(&out));
}

#[test]
fn primitive_even_rank_from_file() {
    let out = run(&["primitive", "BGO", "2", "--file", &bgo2(), "--degree", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.trim(), "lambda\na1^2");
}
