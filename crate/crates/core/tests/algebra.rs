use osp_core::algebra::{build_osp, check_relations, osp4_relations_owned, ospn_relations};
use osp_core::scalar::{int, rat};

#[test]
fn osp4_relation_table_holds_verbatim() {
    let (alg, _) = build_osp(2);
    let bad = check_relations(&alg, &osp4_relations_owned()).unwrap();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn ospn_relation_tables_hold() {
    for n in 1..=4 {
        let (alg, _) = build_osp(n);
        let bad = check_relations(&alg, &ospn_relations(n)).unwrap();
        assert!(bad.is_empty(), "n={n}: {bad:?}");
    }
}

#[test]
fn graded_jacobi_for_small_ranks() {
    for n in 1..=3 {
        let (alg, rep) = build_osp(n);
        assert!(alg.check_jacobi().is_empty());
        assert!(alg.check_antisymmetry().is_empty());
        assert!(alg.check_root_additivity().is_empty());
        assert!(rep.check_homomorphism(&alg).is_empty());
        assert!(rep.check_homogeneity(&alg).is_empty());
    }
}

#[test]
fn corrupted_constant_is_reported() {
    let (mut alg, _) = build_osp(2);
    let h = alg.index_of("H").unwrap();
    let x = alg.index_of("X+").unwrap();
    alg.set_bracket(h, x, vec![(x, int(3))]);
    let bad = alg.check_jacobi();
    assert!(!bad.is_empty());
    assert!(bad.iter().any(|t| [&t.a, &t.b, &t.c].iter().any(|l| *l == "X+")));
}

#[test]
fn squares_of_odd_generators_in_the_representation() {
    let (alg, rep) = build_osp(2);
    let m = |l: &str| rep.matrices[alg.index_of(l).unwrap()].clone();
    assert_eq!(m("v+").try_mul(&m("v+")).unwrap(), m("X+"));
    assert_eq!(m("w+").try_mul(&m("w+")).unwrap(), m("Y+"));
    assert_eq!(m("v-").try_mul(&m("v-")).unwrap(), m("X-").scale(&rat(-1, 1)));
    assert_eq!(m("w-").try_mul(&m("w-")).unwrap(), m("Y-").scale(&rat(-1, 1)));
    assert_eq!(m("X+").nilpotency_index().unwrap(), 2);
    assert_eq!(m("Y+").nilpotency_index().unwrap(), 2);
    assert_eq!(m("v+").nilpotency_index().unwrap(), 3);
    // U+ already squares to zero, so in particular its cube vanishes
    assert_eq!(m("U+").nilpotency_index().unwrap(), 2);
    assert!(m("U+").pow(3).unwrap().is_zero());
}

#[test]
fn printed_brackets() {
    let (alg, _) = build_osp(2);
    let e = |l: &str| alg.basis_element(alg.index_of(l).unwrap());
    assert_eq!(alg.bracket(&e("v+"), &e("v+")).unwrap(), e("X+").scale(&int(2)));
    assert_eq!(alg.bracket(&e("Z+"), &e("w+")).unwrap(), e("v+"));
    assert!(alg.bracket(&e("H"), &e("H")).unwrap().is_zero());
    for l in ["J", "X+", "Y+", "U+", "Z+", "v+", "w+"] {
        assert!(alg.bracket(&e("X+"), &e(l)).unwrap().is_zero(), "{l}");
    }
}
