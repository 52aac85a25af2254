use std::process::{Command, Output};

use kahler_contact::report::{emit_json, parse_json_lines, sort_reports};

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(args)
        .output()
        .expect("verify binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn passing_suite_exits_zero_and_round_trips() {
    let out = verify(&["theorem1", "--n", "3", "--r", "0.3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let reports = parse_json_lines(&text).unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r.pass));
    assert_eq!(emit_json(&reports), text);
    let mut sorted = reports.clone();
    sort_reports(&mut sorted);
    assert_eq!(sorted, reports);
}

#[test]
fn failing_check_exits_one() {
    let out = verify(&["theorem1", "--n", "3", "--r", "0.3", "--tol", "1e-300"]);
    assert_eq!(code(&out), 1);
    let reports = parse_json_lines(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(reports.iter().any(|r| !r.pass));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&verify(&["no-such-suite"])), 2);
    assert_eq!(code(&verify(&[])), 2);
    assert_eq!(code(&verify(&["einstein", "--format", "xml"])), 2);
    assert_eq!(code(&verify(&["einstein", "--n", "three"])), 2);
}

#[test]
fn parameter_errors_exit_three() {
    assert_eq!(code(&verify(&["theorem1", "--r", "5"])), 3);
    assert_eq!(code(&verify(&["c2-tube", "--r", "1"])), 3);
    assert_eq!(code(&verify(&["theorem2", "--case", "4"])), 3);
    assert_eq!(code(&verify(&["sphere", "--h=-1"])), 3);
}

#[test]
fn csv_output_has_header() {
    let out = verify(&["einstein", "--n", "3", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("check_name,params,residuals,tolerance,pass,runtime_ms"));
    assert_eq!(lines.count(), 5);
}
