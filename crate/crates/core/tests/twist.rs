use std::sync::{Arc, OnceLock};

use osp_core::algebra::build_osp;
use osp_core::expr::{Engines, Expr, Identity};
use osp_core::twist::{self, g, Twist, TwistKind};
use osp_core::Error;
use proptest::prelude::*;

fn engines() -> &'static Engines {
    static ENG: OnceLock<Engines> = OnceLock::new();
    ENG.get_or_init(|| {
        let (alg, rep) = build_osp(2);
        Engines::new(&Arc::new(alg), &rep, 6)
    })
}

fn build(kind: TwistKind) -> Twist {
    Twist::build(engines().algebra(), kind).unwrap()
}

#[test]
fn chains_are_cocycles() {
    let eng = engines();
    for kind in [TwistKind::Jordanian, TwistKind::Coboundary, TwistKind::Ej, TwistKind::Sj, TwistKind::Esj, TwistKind::EsjSwapped] {
        let tw = build(kind);
        let f = tw.ue(&eng.ue).unwrap();
        assert!(twist::cocycle_residual(&f).unwrap().is_zero(), "{}", kind.name());
        assert!(eng.verify_exact(&tw.cocycle_identity()).unwrap(), "{}", kind.name());
    }
}

#[test]
fn single_links_are_not_cocycles() {
    let eng = engines();
    for kind in [TwistKind::Extension, TwistKind::Super, TwistKind::Sj2] {
        let f = build(kind).ue(&eng.ue).unwrap();
        assert!(!twist::cocycle_residual(&f).unwrap().is_zero(), "{}", kind.name());
    }
}

#[test]
fn every_factor_is_counital() {
    let eng = engines();
    for kind in TwistKind::ALL {
        for id in build(kind).counit_identities() {
            assert!(eng.verify(&id).unwrap().holds(), "{}", id.name);
        }
    }
}

#[test]
fn esj_coproduct_formulas() {
    let eng = engines();
    let ids = twist::esj_coproduct_identities(eng.algebra()).unwrap();
    assert_eq!(ids.len(), 10);
    for (name, v) in twist::verify_all(eng, &ids).unwrap() {
        assert!(v.holds(), "{name}: {v:?}");
    }
}

#[test]
fn wrong_coproduct_formula_is_caught() {
    let eng = engines();
    let tw = build(TwistKind::Esj);
    // drop the e^sigma factor from Delta(v+)
    let id = Identity::new("bad v+", 2, tw.twisted_coproduct(&g("v+", 0)), g("v+", 0).add(&g("v+", 1)));
    let v = eng.verify(&id).unwrap();
    assert!(!v.universal && !v.exact && v.oracle);
}

#[test]
fn composition_matches_named_chain() {
    let eng = engines();
    let parts: Vec<_> = [TwistKind::Super, TwistKind::Extension, TwistKind::Jordanian].into_iter().map(build).collect();
    let chain = Twist::compose(&parts).unwrap();
    assert_eq!(chain.name(), "s*e*j");
    assert_eq!(chain.ue(&eng.ue).unwrap(), build(TwistKind::Esj).ue(&eng.ue).unwrap());
    assert!(matches!(Twist::compose(&[]), Err(Error::InvalidOption(_))));
}

#[test]
fn names_round_trip() {
    for kind in TwistKind::ALL {
        assert_eq!(TwistKind::parse(kind.name()).unwrap(), kind);
    }
    assert!(TwistKind::parse("x").is_err());
}

#[test]
fn twists_need_the_rank_two_labels() {
    let (alg, _) = build_osp(3);
    assert!(matches!(Twist::build(&alg, TwistKind::Jordanian), Err(Error::MissingAlias(_))));
}

const BOREL: [&str; 8] = ["H", "J", "X+", "Y+", "U+", "Z+", "v+", "w+"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn twisted_coproduct_is_an_algebra_map(a in 0..BOREL.len(), b in 0..BOREL.len()) {
        let eng = engines();
        let tw = build(TwistKind::Esj);
        let (x, y) = (g(BOREL[a], 0), g(BOREL[b], 0));
        let lhs = tw.twisted_coproduct(&x.mul(&y));
        let rhs = tw.twisted_coproduct(&x).mul(&tw.twisted_coproduct(&y));
        let v = eng.verify(&Identity::new("algebra map", 2, lhs, rhs)).unwrap();
        prop_assert!(v.holds(), "{} {}: {:?}", BOREL[a], BOREL[b], v);
    }

    #[test]
    fn twisted_coproduct_is_coassociative(a in 0..BOREL.len()) {
        let eng = engines();
        let tw = build(TwistKind::Esj);
        let d = tw.twisted_coproduct(&g(BOREL[a], 0));
        let f12 = tw.expr.remap(&[&[0], &[1]]);
        let f23 = tw.expr.remap(&[&[1], &[2]]);
        let lhs = Expr::product([f12.clone(), d.remap(&[&[0, 1], &[2]]), f12.inverse()]);
        let rhs = Expr::product([f23.clone(), d.remap(&[&[0], &[1, 2]]), f23.inverse()]);
        let v = eng.verify(&Identity::new("coassociativity", 3, lhs, rhs)).unwrap();
        prop_assert!(v.holds(), "{}: {:?}", BOREL[a], v);
    }
}
