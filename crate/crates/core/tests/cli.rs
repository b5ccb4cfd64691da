//! Runs the `defalg` binary on the bundled fixtures and checks exit codes,
//! verdicts and the JSON report.

use defalg::cli::Report;
use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn defalg(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_defalg"))
        .args(args)
        .env("DEFALG_SEED", "1")
        .output()
        .expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn json(args: &[&str]) -> (i32, Report) {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, text) = defalg(&all);
    let report = Report::from_json(&text).expect("report parses");
    assert_eq!(report.exit_code, code);
    assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
    (code, report)
}

#[test]
fn validate_and_tangent_of_sl2() {
    let sl2 = fixture("sl2.dgla");
    let (code, r) = json(&["validate", "--in", &sl2]);
    assert_eq!((code, r.verdict.as_deref()), (0, Some("valid")));
    let (code, r) = json(&["tangent", "--in", &sl2]);
    assert_eq!(code, 0);
    let t = r.table("tangent").unwrap();
    let row = t.rows.iter().position(|row| row[0] == "0").unwrap();
    assert_eq!(t.cell(row, "dim"), Some("3"));
}

#[test]
fn counterexample_is_obstructed() {
    let (code, r) = json(&[
        "mc-lift",
        "--in",
        &fixture("counterexample_element.mc"),
        "--in",
        &fixture("counterexample_algebra.alg"),
    ]);
    assert_eq!((code, r.verdict.as_deref()), (1, Some("obstructed")));
    assert!(r.table("obstruction").is_some());
}

#[test]
fn prorepresent_reports_the_base() {
    let (code, r) = json(&["prorepresent", "--in", &fixture("sl2.dgla"), "--order", "3"]);
    assert_eq!(code, 0);
    assert!(r.document("base").unwrap().contains("differential"));
}

#[test]
fn text_output_ends_with_exit_line() {
    let (code, text) = defalg(&["cohomology", "--in", &fixture("heisenberg_minus_one.dgla")]);
    assert_eq!(code, 0);
    assert!(text.trim_end().ends_with("exit: 0"));
}

#[test]
fn input_errors_exit_with_two() {
    let (code, r) = json(&["validate", "--in", "/nonexistent/input.dgla"]);
    assert_eq!((code, r.status.as_str()), (2, "input_error"));
    let (code, r) = json(&["no-such-command", "--in", &fixture("sl2.dgla")]);
    assert_eq!(code, 2);
    assert!(r.error.is_some());
    let (code, _) = json(&["tangent", "--in", &fixture("sl2.dgla"), "--order", "2"]);
    assert_eq!(code, 2);
}
