//! End-to-end tests of the qcalc binary: exit codes and printed lines.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn qcalc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qcalc"))
}

fn write_file(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn check_runs_the_worked_example_file() {
    let dir = TempDir::new().unwrap();
    let file = write_file(
        &dir,
        "demo.units",
        "\
# comment
basis m s kg
unit cm = 1/100 m
unit min = 60 s
unit N = kg m s^-2
let E = 1/2 kg (3 m s^-1)^2
check E
assert E == 9/2 N m
convert E -> N m
",
    );
    let out = qcalc().arg("check").arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    assert_eq!(stdout_of(&out), "OK 9/2 m^2 s^-2 kg\nPASS\n9/2\n");
}

#[test]
fn square_feet_conversion_prints_24() {
    let dir = TempDir::new().unwrap();
    let units = write_file(&dir, "imperial.units", "basis foot\nunit yard = 3 foot\n");
    let out = qcalc()
        .args(["convert", "4 foot * 2 yard", "--to", "foot^2", "--units"])
        .arg(&units)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    assert_eq!(stdout_of(&out), "24\n");
}

#[test]
fn quotient_reports_rank_and_unit_projections() {
    let dir = TempDir::new().unwrap();
    let units = write_file(
        &dir,
        "si.units",
        "\
basis m s kg
unit c = 299792458 m s^-1
unit hbar = 0.0000000000000000000000000000000001054571817 m^2 s^-1 kg
",
    );
    let out = qcalc()
        .arg("quotient")
        .arg(&units)
        .args(["--set", "c", "--set", "hbar"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    assert_eq!(stdout_of(&out), "rank 1\nc -> 1\nhbar -> 1\n");
}

#[test]
fn torsion_quotient_exits_with_semantic_error() {
    let dir = TempDir::new().unwrap();
    let units = write_file(
        &dir,
        "bad_quotient.units",
        "basis m s kg\nunit u = m^2 s^-2\n",
    );
    let out = qcalc()
        .arg("quotient")
        .arg(&units)
        .args(["--set", "u"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr_of(&out).contains("[2]"),
        "stderr: {}",
        stderr_of(&out)
    );
}

#[test]
fn mixed_dimension_addition_exits_one_and_reports_tuples() {
    let dir = TempDir::new().unwrap();
    let file = write_file(&dir, "bad.units", "basis m s\ncheck 1 m + 1 s\n");
    let out = qcalc().arg("check").arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    assert!(
        err.contains("(1,0)") && err.contains("(0,1)"),
        "stderr: {err}"
    );
}

#[test]
fn failed_assertions_print_fail_and_exit_one() {
    let dir = TempDir::new().unwrap();
    let file = write_file(&dir, "fail.units", "basis m\nassert 2 m == 3 m\n");
    let out = qcalc().arg("check").arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).starts_with("FAIL"));
}

#[test]
fn parse_errors_exit_two_with_position() {
    let dir = TempDir::new().unwrap();
    let file = write_file(&dir, "syntax.units", "basis m\ncheck m +\n");
    let out = qcalc().arg("check").arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr_of(&out).contains("2:10"),
        "stderr: {}",
        stderr_of(&out)
    );
}

#[test]
fn missing_files_exit_three() {
    let out = qcalc()
        .args(["check", "/nonexistent/qcalc-test.units"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    let out = qcalc().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_prints_the_canonical_form() {
    let dir = TempDir::new().unwrap();
    let units = write_file(&dir, "si.units", "basis m s kg\nunit cm = 1/100 m\n");
    let out = qcalc()
        .args(["eval", "1 m + 50 cm", "--units"])
        .arg(&units)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "3/2 m\n");

    // Without a unit file, plain arithmetic still evaluates.
    let out = qcalc().args(["eval", "1/2 + 1/4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "3/4\n");
}

#[test]
fn eval_expression_syntax_errors_exit_two() {
    let out = qcalc().args(["eval", "1 +"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("expected"));
}

#[test]
fn incommensurable_conversion_exits_one() {
    let dir = TempDir::new().unwrap();
    let units = write_file(&dir, "si.units", "basis m s\n");
    let out = qcalc()
        .args(["convert", "1 m", "--to", "s", "--units"])
        .arg(&units)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    assert!(
        err.contains("[1, 0]") && err.contains("[0, 1]"),
        "stderr: {err}"
    );
}

#[test]
fn pi_prints_the_pendulum_group() {
    let dir = TempDir::new().unwrap();
    let file = write_file(
        &dir,
        "pendulum.units",
        "\
basis L T
let l = L
let g = L T^-2
let t = T
",
    );
    let out = qcalc().arg("pi").arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    assert_eq!(stdout_of(&out), "l g^-1 t^-2\n");
}

#[test]
fn exit_codes_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let file = write_file(&dir, "mix.units", "basis m s\ncheck 1 m + 1 s\ncheck 2 m\n");
    let first = qcalc().arg("check").arg(&file).output().unwrap();
    let second = qcalc().arg("check").arg(&file).output().unwrap();
    assert_eq!(first.status.code(), second.status.code());
    assert_eq!(stdout_of(&first), stdout_of(&second));
    // The well-typed statement after the failure still ran.
    assert!(stdout_of(&first).contains("OK 2 m"));
}
