use std::sync::Arc;

use osp_core::algebra::{build_osp, Representation};
use osp_core::pbw::{UeContext, UeTensor};
use osp_core::scalar::{int, rat, Rational};
use osp_core::Error;
use proptest::prelude::*;

fn setup(n: usize) -> (Arc<UeContext>, Representation) {
    let (alg, rep) = build_osp(n);
    (UeContext::new(Arc::new(alg)), rep)
}

fn gen(ctx: &Arc<UeContext>, label: &str, leg: usize, legs: usize, bound: Option<i32>) -> UeTensor {
    UeTensor::<Rational>::generator(ctx, ctx.label_index(label).unwrap(), leg, legs, bound)
}

#[test]
fn printed_reorderings() {
    let (ctx, _) = setup(2);
    let lhs = ctx.normal_form_str("X+ H", None).unwrap();
    let rhs = ctx.normal_form_str("H X+", None).unwrap().sub(&gen(&ctx, "X+", 0, 1, None).scale(&int(2))).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(ctx.normal_form_str("v+ v+", None).unwrap(), gen(&ctx, "X+", 0, 1, None));
    assert_eq!(ctx.normal_form_str("w+ w+", None).unwrap(), gen(&ctx, "Y+", 0, 1, None));
    let vw = ctx.normal_form_str("v+ w+", None).unwrap();
    let wv = ctx.normal_form_str("w+ v+", None).unwrap();
    // [v+, w+] = U+ with the odd bracket symmetric
    assert_eq!(vw.add(&wv).unwrap(), gen(&ctx, "U+", 0, 1, None));
}

#[test]
fn truncation_drops_high_grade() {
    let (ctx, _) = setup(2);
    let x = ctx.normal_form_str("X+ X+ Y+", Some(4)).unwrap();
    assert!(x.is_zero());
    let x = ctx.normal_form_str("X+ X+ Y+", Some(6)).unwrap();
    assert_eq!(x.len(), 1);
}

#[test]
fn truncation_counts_every_leg() {
    let (ctx, _) = setup(2);
    let d = Some(4);
    let x = gen(&ctx, "X+", 0, 2, d).mul(&gen(&ctx, "Y+", 1, 2, d)).unwrap();
    assert_eq!(x.len(), 1);
    assert!(x.mul(&gen(&ctx, "v+", 1, 2, d)).unwrap().is_zero());
}

#[test]
fn unknown_label_is_reported() {
    let (ctx, _) = setup(2);
    assert!(matches!(ctx.normal_form_str("Q+", None), Err(Error::UnknownLabel(_))));
}

fn words(n: usize, max: usize) -> impl Strategy<Value = Vec<usize>> {
    let dim = n * (2 * n + 1) + 2 * n;
    prop::collection::vec(0..dim, 0..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rewriting_is_confluent(w in words(2, 5), seed in any::<u64>()) {
        let (ctx, _) = setup(2);
        let mut s = seed;
        let naive = ctx.rewrite_word(&w, |k| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 33) as usize) % k
        });
        let mut fast = UeTensor::<Rational>::one(&ctx, 1, None);
        for &g in &w {
            fast = fast.mul(&UeTensor::<Rational>::generator(&ctx, g, 0, 1, None)).unwrap();
        }
        let fast: std::collections::HashMap<_, _> = fast.terms().map(|(k, c)| (k.clone(), c.clone())).collect();
        prop_assert_eq!(naive, fast);
    }

    #[test]
    fn rho_is_multiplicative(a in words(2, 3), b in words(2, 3)) {
        let (ctx, rep) = setup(2);
        let word = |w: &[usize]| {
            let mut t = UeTensor::<Rational>::one(&ctx, 1, None);
            for &g in w {
                t = t.mul(&UeTensor::<Rational>::generator(&ctx, g, 0, 1, None)).unwrap();
            }
            t
        };
        let (ta, tb) = (word(&a), word(&b));
        let lhs = ta.mul(&tb).unwrap().rho(&rep);
        let rhs = ta.rho(&rep).try_mul(&tb.rho(&rep)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coproduct_is_coassociative_and_multiplicative(a in words(2, 3), b in words(2, 2)) {
        let (ctx, rep) = setup(2);
        let word = |w: &[usize]| {
            let mut t = UeTensor::<Rational>::one(&ctx, 1, None);
            for &g in w {
                t = t.mul(&UeTensor::<Rational>::generator(&ctx, g, 0, 1, None)).unwrap();
            }
            t
        };
        let (ta, tb) = (word(&a), word(&b));
        let da = ta.coproduct0().unwrap();
        prop_assert_eq!(da.coproduct_leg(0).unwrap(), da.coproduct_leg(1).unwrap());
        let dab = ta.mul(&tb).unwrap().coproduct0().unwrap();
        let prod = da.mul(&tb.coproduct0().unwrap()).unwrap();
        prop_assert_eq!(&dab, &prod);
        // two-leg products agree with graded Kronecker products
        let db = tb.coproduct0().unwrap();
        let lhs = prod.rho(&rep);
        let rhs = da.rho(&rep).try_mul(&db.rho(&rep)).unwrap();
        prop_assert_eq!(lhs, rhs);
        // counit
        prop_assert_eq!(da.counit_leg(1), ta.clone());
        prop_assert_eq!(da.counit_leg(0), ta);
    }
}

#[test]
fn flip_of_odd_pair_is_signed() {
    let (ctx, _) = setup(2);
    let vw = gen(&ctx, "v+", 0, 2, None).mul(&gen(&ctx, "w+", 1, 2, None)).unwrap();
    let wv = gen(&ctx, "w+", 0, 2, None).mul(&gen(&ctx, "v+", 1, 2, None)).unwrap();
    assert_eq!(vw.flip().unwrap(), wv.neg());
    assert_eq!(vw.flip().unwrap().flip().unwrap(), vw);
}

#[test]
fn exp_log_round_trip() {
    let (ctx, _) = setup(2);
    let d = Some(6);
    let a = gen(&ctx, "v+", 0, 1, d).add(&gen(&ctx, "U+", 0, 1, d).scale(&rat(1, 3))).unwrap();
    let e = a.exp().unwrap();
    let back = e.sub(&UeTensor::<Rational>::one(&ctx, 1, d)).unwrap().log1p().unwrap();
    assert_eq!(back, a);
    let inv = e.inverse().unwrap();
    assert_eq!(inv.mul(&e).unwrap(), UeTensor::<Rational>::one(&ctx, 1, d));
}

#[test]
fn sigma_exponentiates_to_one_plus_x() {
    let (ctx, rep) = setup(2);
    let d = Some(6);
    let x = gen(&ctx, "X+", 0, 1, d);
    let sigma = x.log1p().unwrap().scale(&rat(1, 2));
    let e2 = sigma.scale(&int(2)).exp().unwrap();
    assert_eq!(e2, UeTensor::<Rational>::one(&ctx, 1, d).add(&x).unwrap());
    // rho(X)^2 = 0 so rho(sigma) = X/2
    assert_eq!(sigma.rho(&rep), x.rho(&rep).scale(&rat(1, 2)));
}

#[test]
fn series_guards() {
    let (ctx, _) = setup(2);
    let h = gen(&ctx, "H", 0, 1, Some(6));
    assert_eq!(h.exp(), Err(Error::NotPositivelyGraded));
    let x = gen(&ctx, "X+", 0, 1, None);
    assert_eq!(x.exp(), Err(Error::UnboundedSeries));
    let one = UeTensor::<Rational>::one(&ctx, 1, Some(6));
    assert_eq!(one.exp(), Err(Error::ConstantTermPresent));
    let two = UeTensor::<Rational>::one(&ctx, 2, Some(6));
    assert!(matches!(one.mul(&two), Err(Error::LegMismatch { .. })));
}

#[test]
fn ad_exp_matches_conjugation() {
    let (ctx, _) = setup(2);
    let d = Some(6);
    let a = gen(&ctx, "X+", 0, 1, d).scale(&rat(1, 2));
    let y = gen(&ctx, "v-", 0, 1, d);
    let lhs = UeTensor::ad_exp(&a, &y).unwrap();
    let rhs = a.exp().unwrap().mul(&y).unwrap().mul(&a.neg().exp().unwrap()).unwrap();
    assert_eq!(lhs, rhs);
}
