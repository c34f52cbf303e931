use std::io::Write;
use std::process::{Command, Output, Stdio};

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().unwrap()
}

fn verify_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn cybe_suite_reports_zero_residuals() {
    let o = verify(&["cybe", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in ["r_j", "r_esj", "r_sj", "r_full", "r_full_abelian"] {
        assert!(text.contains(&format!("PASS  cybe/CYBE {name}  ")), "{name}");
    }
    assert!(text.contains("status: pass"));
}

#[test]
fn full_run_as_json() {
    let o = verify(&["all", "--degree", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["suite"], "all");
    assert_eq!(v["status"], "pass");
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() > 80);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn truncation_degree_is_reported() {
    let o = verify(&["twist", "--degree", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let cocycles: Vec<_> = v["checks"].as_array().unwrap().iter().filter(|c| c["name"].as_str().unwrap().starts_with("twist/cocycle")).collect();
    assert_eq!(cocycles.len(), 7);
    assert!(cocycles.iter().all(|c| c["certified"] == 3));
    let text = stdout(&verify(&["--suite", "twist", "--degree", "3"]));
    assert!(text.contains("PASS  twist/cocycle full  [F12 (Delta0 (x) id)(F) = F23 (id (x) Delta0)(F)]  degree 3"));
}

#[test]
fn json_output_is_byte_identical() {
    let args = ["quantum", "--format", "json", "--no-timing"];
    let (a, b) = (verify(&args), verify(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a)["checks"].as_array().unwrap().iter().all(|c| c["ms"] == 0));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["bogus"][..],
        &["twist", "--n", "3"],
        &["algebra", "--degree", "0"],
        &["all", "--degree", "1"],
        &["algebra", "--n", "0"],
        &["algebra", "--format", "xml"],
        &["algebra", "--suite", "cybe"],
        &["--dump", "table"],
        &["--frobnicate"],
        &["check-dump", "/nonexistent/dump.json"],
    ] {
        let o = verify(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn dumps_round_trip_through_check_dump() {
    let dump = verify(&["--dump", "algebra", "--n", "2"]);
    assert_eq!(dump.status.code(), Some(0));
    let text = stdout(&dump);
    let o = verify_stdin(&["check-dump", "-"], &text);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("status: pass"));

    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let entry = v["brackets"].as_array_mut().unwrap().iter_mut().find(|e| e["a"] == "v+" && e["b"] == "w+").unwrap();
    entry["value"][0][1] = "2".into();
    let o = verify_stdin(&["check-dump", "-"], &v.to_string());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("status: fail"));

    let o = verify_stdin(&["check-dump", "-"], "not json");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn rep_and_rmatrix_dumps() {
    for kind in ["rep", "rmatrix"] {
        let o = verify(&["--dump", kind]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), stdout(&verify(&["--dump", kind])));
        json(&o);
    }
}

#[test]
fn normal_form_of_a_word() {
    let o = verify(&["normal-form", "v+ v+"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(1) X+");
    let o = verify(&["normal-form", "-1/2*X1+ H1", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = verify(&["normal-form", "v+ Q"]);
    assert_eq!(o.status.code(), Some(1));
    let long = vec!["H"; 40].join(" ");
    assert_eq!(verify(&["normal-form", &long]).status.code(), Some(2));
}
