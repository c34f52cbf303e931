use osp_core::algebra::build_osp;
use osp_core::dump::{self, AlgebraDump, DumpKind};
use osp_core::Error;
use proptest::prelude::*;

fn algebra_json(n: usize) -> String {
    dump::write(DumpKind::Algebra, n).unwrap()
}

fn parsed(n: usize) -> AlgebraDump {
    serde_json::from_str(&algebra_json(n)).unwrap()
}

fn rejects(d: &AlgebraDump) -> bool {
    matches!(dump::from_dump(d), Err(Error::Dump(_) | Error::Parse { .. }))
}

#[test]
fn algebra_dump_round_trips() {
    for n in 1..=3 {
        let alg = dump::read_algebra(&algebra_json(n)).unwrap();
        assert_eq!(alg, build_osp(n).0);
        assert!(dump::check(&alg).ok(), "n={n}");
        assert_eq!(dump::algebra_dump(&alg), parsed(n));
    }
}

#[test]
fn dumps_are_canonical() {
    for kind in [DumpKind::Algebra, DumpKind::Rep, DumpKind::RMatrix] {
        assert_eq!(dump::write(kind, 2).unwrap(), dump::write(kind, 2).unwrap());
    }
    let r: Vec<dump::RMatrixDump> = serde_json::from_str(&dump::write(DumpKind::RMatrix, 2).unwrap()).unwrap();
    let names: Vec<_> = r.iter().map(|d| d.name.as_str()).collect();
    assert_eq!(names, ["r_j", "r_esj", "r_sj", "r_full", "r_full_abelian", "r_osp_chain"]);
    let rep: dump::RepDump = serde_json::from_str(&dump::write(DumpKind::Rep, 2).unwrap()).unwrap();
    assert_eq!(rep.parities, [0, 0, 1, 0, 0]);
    assert_eq!(rep.matrices.len(), 14);
    assert!(matches!(dump::write(DumpKind::Algebra, 0), Err(Error::InvalidOption(_))));
    assert!(matches!(DumpKind::parse("table"), Err(Error::InvalidOption(_))));
}

#[test]
fn corrupted_constant_is_detected() {
    let mut d = parsed(2);
    let e = d.brackets.iter_mut().find(|e| e.a == "Z+" && e.b == "U+").unwrap();
    e.value[0].1 = "3".into();
    let report = dump::check(&dump::from_dump(&d).unwrap());
    assert!(!report.ok());
    assert!(report.jacobi_violations > 0);
    assert!(!report.matches_construction);
}

#[test]
fn malformed_dumps_are_rejected() {
    assert!(matches!(dump::read_algebra("{"), Err(Error::Dump(_))));
    let mut extra: serde_json::Value = serde_json::from_str(&algebra_json(1)).unwrap();
    extra["extra"] = 1.into();
    assert!(matches!(dump::read_algebra(&extra.to_string()), Err(Error::Dump(_))));

    let base = parsed(2);
    let mut cases: Vec<AlgebraDump> = Vec::new();
    let mut d = base.clone();
    d.rank = 0;
    cases.push(d);
    let mut d = base.clone();
    d.rank = 9;
    cases.push(d);
    let mut d = base.clone();
    d.labels.pop();
    cases.push(d);
    let mut d = base.clone();
    d.labels[1] = d.labels[0].clone();
    cases.push(d);
    let mut d = base.clone();
    d.parity[0] = 2;
    cases.push(d);
    let mut d = base.clone();
    d.roots.pop();
    cases.push(d);
    let mut d = base.clone();
    let i = d.roots.iter().position(Option::is_some).unwrap();
    d.roots[i] = Some(vec![1]);
    cases.push(d);
    let mut d = base.clone();
    d.brackets[0].a = "Q".into();
    cases.push(d);
    let mut d = base.clone();
    d.brackets[0].value[0].1 = "1/0".into();
    cases.push(d);
    let mut d = base.clone();
    let first = d.brackets[0].clone();
    d.brackets.push(first);
    cases.push(d);
    let mut d = base.clone();
    let first = d.brackets[0].value[0].clone();
    d.brackets[0].value.push(first);
    cases.push(d);
    for (k, d) in cases.iter().enumerate() {
        assert!(rejects(d), "case {k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn byte_edits_never_panic(pos in 0usize..4000, byte in any::<u8>()) {
        let mut text = algebra_json(1).into_bytes();
        let pos = pos % text.len();
        text[pos] = byte;
        if let Ok(s) = std::str::from_utf8(&text) {
            let _ = dump::read_algebra(s);
        }
    }
}
