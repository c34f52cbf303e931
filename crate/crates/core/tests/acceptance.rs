//! Acceptance criteria 1-9, one pass/fail line each, with pinned time limits.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::Zero;
use osp_core::algebra::{build_osp, check_relations, osp4_relations_owned, ospn_relations, Representation, SuperAlgebra};
use osp_core::expr::Engines;
use osp_core::quantum::{self, LCoproductOrder, LOperator};
use osp_core::rmatrix::catalog;
use osp_core::rmatrix::contraction::{self, Contraction, ContractionConfig};
use osp_core::scalar::Poly;
use osp_core::suite::{run_suite, Options, Suite};
use osp_core::twist::{self, Twist, TwistKind};
use osp_core::Result;

fn setup(n: usize) -> (Arc<SuperAlgebra>, Representation) {
    let (alg, rep) = build_osp(n);
    (Arc::new(alg), rep)
}

fn engines() -> Engines {
    let (alg, rep) = setup(2);
    Engines::new(&alg, &rep, 6)
}

fn algebra_construction() -> Result<bool> {
    let (alg2, _) = setup(2);
    let (alg3, _) = setup(3);
    Ok(alg2.dim() == 14
        && alg2.check_jacobi().is_empty()
        && check_relations(&alg2, &osp4_relations_owned())?.is_empty()
        && check_relations(&alg3, &ospn_relations(3))?.is_empty())
}

fn classical_structures() -> Result<bool> {
    let (alg, _) = setup(2);
    let mut ok = true;
    for r in [catalog::r_esj(&alg)?, catalog::r_sj(&alg)?, catalog::r_full(&alg)?, catalog::r_full_abelian(&alg)?] {
        ok &= r.cybe_residual()?.is_zero();
    }
    for n in [2, 3] {
        let (alg, rep) = setup(n);
        let a: Vec<Poly> = (1..=n).map(|k| Poly::var(&format!("a{k}"))).collect();
        ok &= catalog::r_osp_chain(&alg, &a)?.cybe_residual()?.is_zero();
        let c = catalog::casimir(&alg, &rep);
        ok &= (0..alg.dim()).all(|x| c.act(x).is_zero());
    }
    Ok(ok)
}

fn cobracket_kernel() -> Result<bool> {
    let (alg, _) = setup(2);
    let ker = catalog::cobracket_kernel_on(&catalog::r_esj(&alg)?, &catalog::borel(&alg))?;
    let want = catalog::coordinates(&alg, &["X+", "J", "Y+", "w+"])?;
    Ok(ker.len() == 4 && catalog::same_span(&ker, &want) && catalog::is_subalgebra(&alg, &ker)?)
}

fn contraction_limit() -> Result<bool> {
    let (alg, rep) = setup(2);
    let cfg = ContractionConfig::default();
    let res = contraction::contract(&alg, &rep, &cfg)?;
    let casimir_alone = contraction::spectral_cybe(&res.casimir_part, &res.t_part, &Poly::zero())?;
    Ok(res.order >= 4
        && res.valuation >= 0
        && res.eps0 == Contraction::expected(&alg, &rep)?
        && casimir_alone.is_zero()
        && res.t_part.cybe_residual()?.is_zero())
}

fn twist_chain(eng: &Engines) -> Result<bool> {
    let mut ok = true;
    for kind in [TwistKind::Jordanian, TwistKind::Esj, TwistKind::Full] {
        let v = eng.verify(&Twist::build(eng.algebra(), kind)?.cocycle_identity())?;
        ok &= v.universal && v.exact;
    }
    Ok(ok)
}

fn twisted_coproducts(eng: &Engines) -> Result<bool> {
    let ids = twist::esj_coproduct_identities(eng.algebra())?;
    Ok(twist::verify_all(eng, &ids)?.iter().all(|(_, v)| v.universal && v.exact))
}

fn quantum_level(eng: &Engines) -> Result<bool> {
    let (alg, rep) = (eng.algebra(), eng.representation());
    let tw = Twist::build(alg, TwistKind::Full)?;
    let tri = eng.verify(&quantum::triangularity(&tw))?;
    let qybe = quantum::qybe_verdict(&tw, eng)?;
    let re = quantum::r_eta(&tw.ue(&eng.ue)?)?;
    let limit = quantum::classical_limit(&re, alg)? == catalog::r_full(alg)?;
    let rho = catalog::r_full(alg)?.rho(rep);
    let cube = rho.pow(3)?.is_zero();
    let exp_qybe = quantum::qybe_residual_rep(&quantum::exp_r_matrix(&catalog::r_full(alg)?, rep)?, &rep.parities)?.is_zero();
    Ok(tri.exact && tri.universal && qybe.exact && qybe.universal && limit && cube && exp_qybe)
}

fn l_operator(eng: &Engines) -> Result<bool> {
    let rep = eng.representation();
    let tw = Twist::build(eng.algebra(), TwistKind::Full)?;
    let r = tw.universal_r().eval(&eng.ue, 2)?;
    let l = LOperator::from_r(&r, rep, &eng.weights(1))?;
    let m = quantum::r_rep(&tw, eng)?;
    let rtt = quantum::rtt_residual(&m, &m, &rep.parities)?.is_zero();
    let f = tw.ue(&eng.ue)?;
    let coproduct = quantum::l_coproduct_holds(&l, &f, LCoproductOrder::Reversed)?;
    Ok(l.has_displayed_shape() && rtt && coproduct)
}

fn oracle_cross_check() -> Result<bool> {
    let report = run_suite(Suite::All, &Options { n: 2, degree: 6, timing: false })?;
    println!(
        "    oracle: {} comparisons, {} disagreements over {} checks",
        report.oracle_comparisons,
        report.oracle_disagreements,
        report.checks.len()
    );
    Ok(report.oracle_comparisons > 0 && report.oracle_disagreements == 0 && report.passed())
}

struct Criterion {
    id: u8,
    title: &'static str,
    note: &'static str,
    limit: Option<Duration>,
    run: Box<dyn Fn() -> Result<bool>>,
}

fn criterion(id: u8, title: &'static str, note: &'static str, secs: Option<u64>, run: impl Fn() -> Result<bool> + 'static) -> Criterion {
    Criterion { id, title, note, limit: secs.map(Duration::from_secs), run: Box::new(run) }
}

#[test]
fn acceptance() {
    let eng = Arc::new(engines());
    let (e5, e6, e7, e8) = (eng.clone(), eng.clone(), eng.clone(), eng.clone());
    let criteria = [
        criterion(1, "algebra construction", "", Some(5), algebra_construction),
        criterion(2, "classical structures", "", Some(10), classical_structures),
        criterion(3, "cobracket kernel", "on the Borel subalgebra b+", Some(1), cobracket_kernel),
        criterion(4, "contraction", "c/u alone solves the spectral cYBE", Some(10), contraction_limit),
        criterion(5, "twist chain cocycles", "", Some(60), move || twist_chain(&e5)),
        criterion(6, "twisted coproducts", "", Some(30), move || twisted_coproducts(&e6)),
        criterion(7, "quantum level", "", Some(60), move || quantum_level(&e7)),
        criterion(8, "L-operator", "coproduct in the order sum_k L_kj (x) L_ik", Some(60), move || l_operator(&e8)),
        criterion(9, "oracle cross-check", "", None, oracle_cross_check),
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let t = Instant::now();
        let outcome = (c.run)();
        let elapsed = t.elapsed();
        let in_time = c.limit.is_none_or(|l| elapsed < l);
        let pass = matches!(outcome, Ok(true)) && in_time;
        let limit = c.limit.map_or("none".to_string(), |l| format!("{} s", l.as_secs()));
        let note = if c.note.is_empty() { String::new() } else { format!(" ({})", c.note) };
        let err = match &outcome {
            Err(e) => format!(" error: {e}"),
            _ => String::new(),
        };
        println!(
            "criterion {}: {} {}{note} in {:.2} s, limit {limit}{err}",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            elapsed.as_secs_f64()
        );
        if !pass {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
