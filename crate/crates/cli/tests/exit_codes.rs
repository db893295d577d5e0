use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

fn golden(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualcalc")).args(args).output().unwrap()
}

fn temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn resolve_prints_the_chain() {
    let o = run(&["resolve", "--k", "4", "--m", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let c = dualcalc::format::chain_from_json(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(c.weights(), vec![-1, -2, -2, -2]);
}

#[test]
fn usage_errors_exit_2() {
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Usage"));
    assert_eq!(run(&["resolve", "--k", "3"]).status.code(), Some(2));
    assert_eq!(run(&["resolve", "--k", "3", "--m", "2", "--bogus"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_1_with_one_line() {
    let o = run(&["resolve", "--k", "4", "--m", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error: domain:"));
    assert_eq!(run(&["chi-check", "--k", "3", "--m", "2", "--c", "0", "--point", "0,1"]).status.code(), Some(1));
    let t = temp("{\"stages\":[]}");
    let o = run(&["verify-tower", t.path().to_str().unwrap(), "--alpha", "0,1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn parse_and_structural_errors_exit_2() {
    let bad = temp("{\"vertices\":[");
    assert_eq!(run(&["contract", bad.path().to_str().unwrap()]).status.code(), Some(2));
    let dangling = temp("{\"vertices\":[{\"id\":\"A\",\"weight\":-1}],\"edges\":[[\"A\",\"B\"]]}");
    let o = run(&["dot", dangling.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: structural:"));
    assert_eq!(run(&["dot", "/nonexistent/graph.json"]).status.code(), Some(2));
    let o = run(&["chi-check", "--k", "3", "--m", "2", "--c", "x", "--point", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn stuck_contraction_exits_1_and_prints_the_residual() {
    let o = run(&["contract", &golden("e8.json")]);
    assert_eq!(o.status.code(), Some(1));
    let (steps, residual) =
        dualcalc::format::contraction_from_json(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert!(steps.is_empty());
    assert_eq!(residual.unwrap().len(), 8);
}

#[test]
fn failing_certificates_exit_1() {
    let t = temp("{\"stages\":[{\"c\":\"1\",\"k\":3,\"m\":2}]}");
    let o = run(&["verify-tower", t.path().to_str().unwrap(), "--alpha", "3,5"]);
    assert_eq!(o.status.code(), Some(1));
    let certs = dualcalc::format::certificates_from_json(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert!(!certs[0].passed);
    let o = run(&["verify-tower", t.path().to_str().unwrap(), "--alpha", "3,5", "--symbolic"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn parabola_with_negative_coordinates() {
    let o = run(&["parabola", "--target", "-2,3/4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["a"], "-2");
}
