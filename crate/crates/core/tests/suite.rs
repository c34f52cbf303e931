use osp_core::suite::{run_suite, Options, Status, Suite};
use osp_core::Error;

fn opts(n: usize) -> Options {
    Options { n, degree: 6, timing: false }
}

#[test]
fn every_suite_passes_at_rank_two() {
    let report = run_suite(Suite::All, &opts(2)).unwrap();
    let failed: Vec<_> = report.failures().map(|c| format!("{} ({})", c.name, c.detail)).collect();
    assert!(failed.is_empty(), "{failed:#?}");
    assert_eq!(report.status, Status::Pass);
    assert!(report.oracle_comparisons >= 40);
    assert_eq!(report.oracle_disagreements, 0);
}

#[test]
fn rank_independent_suites_pass_at_rank_three() {
    let report = run_suite(Suite::All, &opts(3)).unwrap();
    let failed: Vec<_> = report.failures().map(|c| c.name.clone()).collect();
    assert!(failed.is_empty(), "{failed:?}");
    assert!(report.checks.iter().all(|c| !c.name.starts_with("twist/")));
}

#[test]
fn reports_are_deterministic() {
    let a = run_suite(Suite::Algebra, &opts(2)).unwrap().to_json();
    let b = run_suite(Suite::Algebra, &opts(2)).unwrap().to_json();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["suite"], "algebra");
    assert_eq!(v["options"]["n"], 2);
    assert_eq!(v["options"]["degree"], 6);
    assert_eq!(v["status"], "pass");
    let check = &v["checks"][0];
    for key in ["name", "anchor", "status", "certified", "ms"] {
        assert!(check.get(key).is_some(), "{key}");
    }
    assert_eq!(check["certified"], "exact");
}

#[test]
fn truncated_checks_report_their_degree() {
    let report = run_suite(Suite::Twist, &Options { n: 2, degree: 4, timing: false }).unwrap();
    let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    let cocycle = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "twist/cocycle full").unwrap();
    assert_eq!(cocycle["certified"], 4);
    assert_eq!(cocycle["status"], "pass");
}

#[test]
fn invalid_options_are_rejected() {
    assert!(matches!(Suite::parse("nope"), Err(Error::UnknownSuite(_))));
    for (suite, o) in [
        (Suite::Twist, opts(3)),
        (Suite::Quantum, opts(1)),
        (Suite::Algebra, opts(0)),
        (Suite::Algebra, opts(9)),
        (Suite::Algebra, Options { n: 2, degree: 1, timing: false }),
        (Suite::Algebra, Options { n: 2, degree: 13, timing: false }),
    ] {
        assert!(matches!(run_suite(suite, &o), Err(Error::InvalidOption(_))), "{suite:?} {o:?}");
    }
}

#[test]
fn text_report_lists_every_check() {
    let report = run_suite(Suite::Cybe, &opts(2)).unwrap();
    let text = report.to_text();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), report.checks.len());
    assert!(text.ends_with(&format!("status: pass ({0}/{0} checks)\n", report.checks.len())));
}
