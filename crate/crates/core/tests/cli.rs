//! End-to-end runs of the `varbound` binary.

mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::{fixture, load_system};
use varbound::io::ReportFile;
use varbound::linalg::{IndexTuple, Rational, Scalar};
use varbound::obsv::thm2_system;

fn varbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_varbound")).args(args).output().expect("binary runs")
}

fn fx(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

fn code(args: &[&str]) -> i32 {
    varbound(args).status.code().unwrap()
}

#[test]
fn exit_codes_follow_the_conclusion() {
    assert_eq!(code(&["check-matrix", &fx("pena4x2.json"), "--k", "2", "--property", "ssc"]), 0);
    assert_eq!(code(&["check-matrix", &fx("example2_o3.json"), "--k", "1", "--property", "sc"]), 1);
    assert_eq!(code(&["certify", &fx("example1.json"), "--k", "2", "--property", "kpos"]), 0);
    assert_eq!(code(&["certify", &fx("example2.json"), "--k", "1", "--property", "svb"]), 1);
    assert_eq!(code(&["certify", &fx("example1.json"), "--k", "3", "--property", "vb"]), 2);
    assert_eq!(code(&["oracle", &fx("example2.json"), "--k", "1", "--trials", "1000"]), 1);
    assert_eq!(code(&["oracle", &fx("example2.json"), "--k", "2", "--trials", "1000"]), 0);
}

#[test]
fn input_errors_exit_with_three() {
    assert_eq!(code(&["certify", "/nonexistent.json", "--k", "1", "--property", "svb"]), 3);
    assert_eq!(code(&["certify", &fx("example1.json"), "--k", "4", "--property", "svb"]), 3);
    assert_eq!(code(&["certify", &fx("example1.json"), "--property", "svb"]), 3);
    assert_eq!(code(&["certify", &fx("example1.json"), "--k", "1", "--property", "svb", "--tol", "-1"]), 3);
}

#[test]
fn exact_reports_are_reproducible() {
    let args = ["certify", &fx("example2.json"), "--k", "2", "--property", "svb"];
    assert_eq!(varbound(&args).stdout, varbound(&args).stdout);
    let oracle = ["oracle", &fx("example1.json"), "--k", "1", "--trials", "300", "--seed", "4"];
    assert_eq!(varbound(&oracle).stdout, varbound(&oracle).stdout);
}

#[test]
fn traces_equal_library_responses() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let run = varbound(&["certify", &fx("example2.json"), "--k", "2", "--property", "svb", "--out", out]);
    assert_eq!(run.status.code(), Some(0));
    let report = ReportFile::from_json(&String::from_utf8(run.stdout).unwrap()).unwrap();
    assert!(!report.traces.is_empty());
    let file = load_system("example2.json");
    let a = file.matrix_a::<Rational>().unwrap();
    let c = file.vector_c::<Rational>().unwrap();
    for name in &report.traces {
        let (r, beta) = parse_trace_name(name);
        let sys = thm2_system(&a, &c, 2, r, &beta).unwrap();
        let text = std::fs::read_to_string(dir.path().join(name)).unwrap();
        let rows: Vec<&str> = text.lines().skip(1).collect();
        let g = sys.system.impulse_response(rows.len());
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(*row, format!("{},{}", i + 1, g[i].render()), "{name}");
        }
    }
}

fn parse_trace_name(name: &str) -> (usize, IndexTuple) {
    let stem = name.strip_prefix("trace_r").unwrap().strip_suffix(".csv").unwrap();
    let (r, beta) = stem.split_once("_beta").unwrap();
    let elems = beta.split('-').map(|e| e.parse().unwrap()).collect();
    (r.parse().unwrap(), IndexTuple::new(3, elems).unwrap())
}

#[test]
fn report_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let run = varbound(&["check-matrix", &fx("pena4x2.json"), "--k", "2", "--property", "vb", "--out", out]);
    let printed = ReportFile::from_json(&String::from_utf8(run.stdout).unwrap()).unwrap();
    let saved = ReportFile::from_json(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(printed, saved);
    assert_eq!(ReportFile::from_json(&saved.to_json()).unwrap(), saved);
    assert_eq!(saved.environment.k, Some(2));
    assert_eq!(saved.exit_code, 0);
}

#[test]
fn json_numbers_are_accepted_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("numbers.json");
    std::fs::write(&path, r#"{"matrix": [[1, 1], [1, 2], [1, 3]]}"#).unwrap();
    let run = varbound(&["check-matrix", path.to_str().unwrap(), "--k", "2", "--property", "sc"]);
    assert_eq!(run.status.code(), Some(0));
    let report = ReportFile::from_json(&String::from_utf8(run.stdout).unwrap()).unwrap();
    assert_eq!(report.warnings.len(), 1);
    assert!(String::from_utf8(run.stderr).unwrap().contains("warning"));
}

#[test]
fn float_backend_matches_exact_on_the_examples() {
    for (file, k, property) in [("example1.json", "2", "kpos"), ("example2.json", "2", "svb"), ("example2.json", "1", "svb")] {
        let exact = code(&["certify", &fx(file), "--k", k, "--property", property]);
        let float = code(&["certify", &fx(file), "--k", k, "--property", property, "--arith", "float"]);
        assert_eq!(exact, float, "{file} {property} k = {k}");
    }
}

#[test]
fn hankel_target_writes_prefixed_factor_traces() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let run = varbound(&["certify", &fx("example1.json"), "--k", "1", "--property", "svb", "--target", "hankel", "--out", out]);
    let report = ReportFile::from_json(&String::from_utf8(run.stdout).unwrap()).unwrap();
    assert!(report.traces.iter().any(|t| t.starts_with("obsv_")));
    assert!(report.traces.iter().any(|t| t.starts_with("ctrb_")));
    assert!(report.traces.iter().all(|t| Path::new(out).join(t).exists()));
}
