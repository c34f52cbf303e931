use std::sync::Arc;

use num_traits::{One, Zero};
use osp_core::algebra::{build_osp, Representation, SuperAlgebra};
use osp_core::pbw::UeContext;
use osp_core::repmat::GradedMatrix;
use osp_core::rmatrix::contraction::{self, ContractionConfig, Contraction};
use osp_core::rmatrix::{catalog, cybe_residual_rep, cybe_residual_ue, LieTensor};
use osp_core::scalar::{Poly, Rational};
use osp_core::Error;

fn setup(n: usize) -> (Arc<SuperAlgebra>, Representation) {
    let (alg, rep) = build_osp(n);
    (Arc::new(alg), rep)
}

#[test]
fn casimir_is_invariant_and_symmetric() {
    for n in 1..=3 {
        let (alg, rep) = setup(n);
        let c = catalog::casimir(&alg, &rep);
        for x in 0..alg.dim() {
            assert!(c.act(x).is_zero(), "n={n} x={}", alg.label(x));
        }
        assert_eq!(c.flip().unwrap(), c);
        let r0 = catalog::dj_r0(&alg, &rep);
        assert_eq!(r0.add(&r0.flip().unwrap()).unwrap(), c);
        assert!(r0.cybe_residual().unwrap().is_zero(), "r0 solves the cYBE for n={n}");
    }
}

#[test]
fn casimir_commutes_with_coproduct_in_rep() {
    let (alg, rep) = setup(2);
    let c = catalog::casimir(&alg, &rep).rho(&rep);
    let h = alg.index_of("H").unwrap();
    let dh = rep.matrices[h].embed(0, 2).try_add(&rep.matrices[h].embed(1, 2)).unwrap();
    assert!(dh.graded_commutator(&c).unwrap().is_zero());
}

#[test]
fn printed_r_matrices_solve_cybe() {
    let (alg, _) = setup(2);
    for (name, r) in [
        ("r_j", catalog::r_j(&alg).unwrap()),
        ("r_esj", catalog::r_esj(&alg).unwrap()),
        ("r_sj", catalog::r_sj(&alg).unwrap()),
        ("r_full", catalog::r_full(&alg).unwrap()),
        ("r_full_abelian", catalog::r_full_abelian(&alg).unwrap()),
    ] {
        assert!(r.cybe_residual().unwrap().is_zero(), "{name}");
    }
    assert!(!catalog::r_sj_graded_wedge(&alg).unwrap().cybe_residual().unwrap().is_zero());
    let h = alg.index_of("H").unwrap();
    let x = alg.index_of("X+").unwrap();
    assert!(!LieTensor::tensor(&alg, h, x, Rational::one()).cybe_residual().unwrap().is_zero());
}

#[test]
fn symbolic_chain_solves_cybe() {
    for n in 1..=3 {
        let (alg, _) = setup(n);
        let a: Vec<Poly> = (1..=n).map(|k| Poly::var(&format!("a{k}"))).collect();
        let r = catalog::r_osp_chain(&alg, &a).unwrap();
        assert!(r.cybe_residual().unwrap().is_zero(), "n={n}");
    }
    let (alg, _) = setup(2);
    let one = catalog::r_osp_chain(&alg, &[Rational::one(), Rational::one()]).unwrap();
    assert_eq!(one, catalog::r_full(&alg).unwrap());
    assert!(matches!(catalog::r_osp_chain(&alg, &[Rational::one()]), Err(Error::InvalidOption(_))));
}

#[test]
fn cybe_agrees_across_three_evaluations() {
    let (alg, rep) = setup(2);
    let ctx = UeContext::new(alg.clone());
    let h = alg.index_of("H").unwrap();
    let x = alg.index_of("X+").unwrap();
    let bad = LieTensor::tensor(&alg, h, x, Rational::one());
    for r in [catalog::r_full(&alg).unwrap(), catalog::r_sj_graded_wedge(&alg).unwrap(), bad] {
        let abstract_ = r.cybe_residual().unwrap().rho(&rep);
        let ue = cybe_residual_ue(&r.to_ue(&ctx, None)).unwrap().rho(&rep);
        let mat = cybe_residual_rep(&r.rho(&rep), &rep.parities).unwrap();
        assert_eq!(abstract_, ue);
        assert_eq!(abstract_, mat);
    }
}

#[test]
fn embedding_matches_kronecker_products() {
    let (alg, rep) = setup(2);
    let id = GradedMatrix::identity(rep.parities.clone());
    for a in 0..alg.dim() {
        for b in [alg.index_of("v+").unwrap(), alg.index_of("H").unwrap(), alg.index_of("w-").unwrap()] {
            let (ma, mb) = (&rep.matrices[a], &rep.matrices[b]);
            let pair = ma.graded_kron_split(mb);
            let want = ma.graded_kron_split(&id).graded_kron_split(mb);
            assert_eq!(pair.embed_pair(&rep.parities, 0, 2).unwrap(), want);
            let want = id.graded_kron_split(ma).graded_kron_split(mb);
            assert_eq!(pair.embed_pair(&rep.parities, 1, 2).unwrap(), want);
        }
    }
}

#[test]
fn cobracket_kernel_of_r_esj() {
    let (alg, _) = setup(2);
    let r = catalog::r_esj(&alg).unwrap();
    for l in ["X+", "J", "Y+", "w+"] {
        assert!(r.cobracket(alg.index_of(l).unwrap()).unwrap().is_zero(), "{l}");
    }
    assert!(!r.cobracket(alg.index_of("H").unwrap()).unwrap().is_zero());
    let ker = catalog::cobracket_kernel_on(&r, &catalog::borel(&alg)).unwrap();
    assert_eq!(ker.len(), 4);
    let want = catalog::coordinates(&alg, &["X+", "J", "Y+", "w+"]).unwrap();
    assert!(catalog::same_span(&ker, &want));
    assert!(catalog::is_subalgebra(&alg, &ker).unwrap());
    // over all of g the second osp(1|2) contributes Y- and w- as well
    let full = catalog::cobracket_kernel(&r).unwrap();
    let want = catalog::coordinates(&alg, &["X+", "J", "Y+", "w+", "Y-", "w-"]).unwrap();
    assert!(catalog::same_span(&full, &want));
    assert!(catalog::is_subalgebra(&alg, &full).unwrap());
    let zero = LieTensor::zero(&alg, 2);
    assert_eq!(catalog::cobracket_kernel(&zero).unwrap().len(), alg.dim());
}

#[test]
fn trigonometric_r_matrix() {
    let (alg, rep) = setup(2);
    assert!(contraction::trig_rearrangement(&alg, &rep).unwrap());
    assert!(contraction::trig_residue(&alg, &rep).unwrap());
    let r0 = catalog::dj_r0(&alg, &rep).lift(|q| Poly::constant(q.clone()));
    assert!(matches!(contraction::trig_r(&r0, &Poly::var("q")), Err(Error::DivisionByNonUnit(_))));
    // at q = 3 the symmetric coefficient is (q+1)/(q-1) = 2
    let r0 = catalog::dj_r0(&alg, &rep);
    let q = Rational::from_integer(3.into());
    let tr = contraction::trig_r(&r0, &q).unwrap();
    let c = catalog::casimir(&alg, &rep);
    let anti = r0.sub(&r0.flip().unwrap()).unwrap().scale(&Rational::new(1.into(), 2.into()));
    assert_eq!(tr, c.add(&anti).unwrap());
}

#[test]
fn contraction_limit() {
    for n in 1..=2 {
        let (alg, rep) = setup(n);
        let cfg = ContractionConfig::default();
        let res = contraction::contract(&alg, &rep, &cfg).unwrap();
        assert!(res.order >= 4, "order {}", res.order);
        assert!(res.valuation >= 0);
        assert_eq!(res.eps0, Contraction::expected(&alg, &rep).unwrap());
        assert!(res.t_part.cybe_residual().unwrap().is_zero());
        let none = contraction::spectral_cybe(&res.casimir_part, &res.t_part, &Poly::zero()).unwrap();
        assert!(none.is_zero());
        let both = contraction::spectral_cybe(&res.casimir_part, &res.t_part, &Poly::one()).unwrap();
        assert!(both.is_zero());
        // the Casimir alone does not solve the constant cYBE
        assert!(!res.casimir_part.cybe_residual().unwrap().is_zero());
        if n == 2 {
            let r = catalog::r_esj(&alg).unwrap().lift(|q| Poly::constant(q.clone()));
            assert_eq!(res.t_part, r.neg());
        }
    }
}
