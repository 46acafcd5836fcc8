use std::path::PathBuf;

use gencohom::cli::{run_from, EXIT_FAIL, EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_PASS};

fn instance(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances");
    root.join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["gencohom"];
    full.extend_from_slice(args);
    let code = run_from(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn duality_on_the_herzog_rahimi_instance() {
    let (code, out, _) = run(&["duality", &instance("bigraded_hr.ring"), "--window", "3"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.ends_with("PASS 196/196 cells\n"), "{out}");
}

#[test]
fn sharpness_witness() {
    let (code, out, _) = run(&["sharp", &instance("nonsharp.ring")]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.starts_with("not sharp"));
    assert!(out.contains("alpha = [1], beta = [1]"));
    let (code, out, _) = run(&["sharp", &instance("bigraded_hr.ring")]);
    assert_eq!((code, out.as_str()), (EXIT_PASS, "sharp\n"));
}

#[test]
fn koszul_betti_numbers() {
    let (code, out, _) = run(&["resolve", &instance("koszul.ring")]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("betti numbers: 1 2 1\n"), "{out}");
}

#[test]
fn hypothesis_violation_exit_code() {
    let (code, _, err) = run(&["duality", &instance("nonsharp.ring")]);
    assert_eq!(code, EXIT_HYPOTHESIS);
    assert!(err.contains("not sharp"));
}

#[test]
fn input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ring");
    std::fs::write(&bad, "[ring]\nvars = x1\ndegrees = 1 2\n").unwrap();
    let (code, _, err) = run(&["resolve", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line 3"), "{err}");
    let (code, _, _) = run(&["resolve", "/nonexistent/file.ring"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn scenarios_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("ld.txt");
    let (code, out, _) = run(&["scenario", &instance("local_duality.ring"), "--report", report.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS, "{out}");
    assert_eq!(std::fs::read_to_string(&report).unwrap(), out);
    let tsv = std::fs::read_to_string(dir.path().join("ld.txt.tsv")).unwrap();
    assert_eq!(tsv.lines().count(), 1 + 3 * 13);
    let (code, _, err) = run(&["scenario", &instance("bigraded_hr.ring"), "--name", "serre", "--window", "1"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("x-block"));
}

#[test]
fn cohomology_with_oracle() {
    let (code, out, _) = run(&["cohomology", &instance("bigraded_hr.ring"), "--window", "1", "--oracle-tmax", "3"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("H^1 in degree (-1,1): 1"));
    assert!(out.contains("0 differ"));
}

#[test]
fn output_is_deterministic() {
    let args = ["duality", &instance("hypersurface.ring"), "--window", "2"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a, b);
    assert_eq!(a.0, EXIT_PASS);
}
