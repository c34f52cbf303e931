//! Quantum level: universal R-matrices of twists, triangularity, QYBE,
//! classical limits, the `r^3 = 0` exponential R-matrix, the L-operator
//! `L = (rho (x) id) R` and the graded RTT relation.

use std::sync::Arc;

use num_traits::One;

use crate::algebra::{Representation, SuperAlgebra};
use crate::error::{Error, Result};
use crate::expr::{transport_ue, Engines, Expr, Identity, Verdict};
use crate::pbw::UeTensor;
use crate::repmat::GradedMatrix;
use crate::rmatrix::LieTensor;
use crate::scalar::{int, rat, Coeff, Poly, Rational};
use crate::twist::{g, Twist};

/// Formal deformation parameter.
pub const ETA: &str = "eta";

/// `R_21 R = 1`.
pub fn triangularity(tw: &Twist) -> Identity {
    let r = tw.universal_r();
    Identity::new(format!("R21 R = 1 for {}", tw.name()), 2, r.flip().mul(&r), Expr::one())
}

/// `R_12 R_13 R_23 = R_23 R_13 R_12`.
pub fn qybe(tw: &Twist) -> Identity {
    let r = tw.universal_r();
    let (r12, r13, r23) = (r.remap(&[&[0], &[1]]), r.remap(&[&[0], &[2]]), r.remap(&[&[1], &[2]]));
    Identity::new(
        format!("QYBE for {}", tw.name()),
        3,
        Expr::product([r12.clone(), r13.clone(), r23.clone()]),
        Expr::product([r23, r13, r12]),
    )
}

/// `R Delta^F(x) = Delta^F(x)_21 R` for the generator `label`.
pub fn intertwining(tw: &Twist, label: &str) -> Identity {
    let r = tw.universal_r();
    let d = tw.twisted_coproduct(&g(label, 0));
    Identity::new(format!("R intertwines {label} for {}", tw.name()), 2, r.mul(&d), d.flip().mul(&r))
}

/// Grade-scaled family `F(eta)`: each term of grade `k` is multiplied by
/// `lambda^{k/2}` with `lambda = -2 eta`. This is the automorphism
/// `x -> lambda^{grade(x)/2} x` applied to `F`; all terms of an even twist
/// have even grade.
pub fn eta_family(f: &UeTensor) -> Result<UeTensor<Poly>> {
    if let Some((k, _)) = f.terms().find(|(k, _)| f.key_grade(k) % 2 != 0) {
        return Err(Error::InvalidOption(format!("twist term {} has odd grade", f.fmt_key(k))));
    }
    let lambda = Poly::var(ETA).scale(&int(-2));
    Ok(f.map_terms(|k, c| lambda.pow((f.key_grade(k) / 2) as u32).scale(c)))
}

/// `R(eta) = F_21(eta) F(eta)^{-1}` over polynomial coefficients.
pub fn r_eta(f: &UeTensor) -> Result<UeTensor<Poly>> {
    let fe = eta_family(f)?;
    fe.flip()?.mul(&fe.inverse()?)
}

/// The `eta^1` coefficient of `R(eta)`, which must lie in `g (x) g`.
pub fn classical_limit(r: &UeTensor<Poly>, alg: &Arc<SuperAlgebra>) -> Result<LieTensor> {
    let first = r.map_coeffs(|p| p.coeff_of(ETA, 1));
    let mut terms = Vec::new();
    for (k, c) in first.terms() {
        let q = c.to_rational().ok_or_else(|| Error::NotFirstOrderLie(format!("coefficient {c}")))?;
        let legs = first.split_key(k);
        let mut key = Vec::with_capacity(legs.len());
        for m in &legs {
            let mut gens = m.iter().enumerate().filter(|(_, &e)| e > 0);
            match (gens.next(), gens.next()) {
                (Some((i, 1)), None) => key.push(i),
                _ => return Err(Error::NotFirstOrderLie(first.fmt_key(k))),
            }
        }
        terms.push((key, q));
    }
    Ok(LieTensor::from_terms(alg, 2, terms))
}

/// Whether the `eta^0` part of `R(eta)` is the unit.
pub fn zeroth_order_is_unit(r: &UeTensor<Poly>) -> bool {
    let zero = r.map_coeffs(|p| p.coeff_of(ETA, 0));
    zero == UeTensor::scalar(r.context(), 2, Poly::one(), r.bound())
}

/// `exp(eta r_rho) = 1 + eta r_rho + eta^2 r_rho^2 / 2` after certifying
/// `r_rho^3 = 0`.
pub fn exp_r_matrix(r: &LieTensor, rep: &Representation) -> Result<GradedMatrix<Poly>> {
    let m = r.rho(rep);
    let m2 = m.try_mul(&m)?;
    if !m2.try_mul(&m)?.is_zero() {
        return Err(Error::CubeNotZero);
    }
    let lift = |x: &GradedMatrix| x.map_coeffs(|q| Poly::constant(q.clone()));
    let eta = Poly::var(ETA);
    let id = GradedMatrix::<Poly>::identity(m.parities().clone());
    id.try_add(&lift(&m).scale_by(&eta))?.try_add(&lift(&m2).scale_by(&eta.pow(2).scale(&rat(1, 2))))
}

/// `R_12 R_13 R_23 - R_23 R_13 R_12` for a matrix on `V (x) V`.
pub fn qybe_residual_rep<C: Coeff>(r: &GradedMatrix<C>, base: &Arc<[u8]>) -> Result<GradedMatrix<C>> {
    let (r12, r13, r23) = (r.embed_pair(base, 0, 1)?, r.embed_pair(base, 0, 2)?, r.embed_pair(base, 1, 2)?);
    let lhs = r12.try_mul(&r13)?.try_mul(&r23)?;
    let rhs = r23.try_mul(&r13)?.try_mul(&r12)?;
    lhs.try_sub(&rhs)
}

/// `R_12 L_13 L_23 - L_23 L_13 R_12` with graded embeddings.
pub fn rtt_residual<C: Coeff>(r: &GradedMatrix<C>, l: &GradedMatrix<C>, base: &Arc<[u8]>) -> Result<GradedMatrix<C>> {
    let (r12, l13, l23) = (r.embed_pair(base, 0, 1)?, l.embed_pair(base, 0, 2)?, l.embed_pair(base, 1, 2)?);
    r12.try_mul(&l13)?.try_mul(&l23)?.try_sub(&l23.try_mul(&l13)?.try_mul(&r12)?)
}

/// Plain (sign-free) Kronecker product, for negative controls.
pub fn kron_ungraded<C: Coeff>(a: &GradedMatrix<C>, b: &GradedMatrix<C>) -> GradedMatrix<C> {
    let nb = b.dim();
    let parities: Arc<[u8]> = (0..a.dim() * nb).map(|x| (a.parities()[x / nb] + b.parities()[x % nb]) % 2).collect();
    let mut entries = Vec::new();
    for (i, j, x) in a.entries() {
        for (k, l, y) in b.entries() {
            entries.push((i * nb + k, j * nb + l, x.clone() * y.clone()));
        }
    }
    GradedMatrix::from_entries(parities, entries).expect("in range")
}

/// The RTT residual with sign-free embeddings and swap: a deliberately
/// wrong convention.
pub fn rtt_residual_ungraded<C: Coeff>(r: &GradedMatrix<C>, l: &GradedMatrix<C>, base: &Arc<[u8]>) -> Result<GradedMatrix<C>> {
    let n = base.len();
    let id = GradedMatrix::<C>::identity(base.clone());
    let swap_entries = (0..n).flat_map(|a| (0..n).map(move |b| (b * n + a, a * n + b, C::one())));
    let swap = GradedMatrix::from_entries(kron_ungraded(&id, &id).parities().clone(), swap_entries)?;
    let p23 = kron_ungraded(&id, &swap);
    let r12 = kron_ungraded(r, &id);
    let l23 = kron_ungraded(&id, l);
    let l13 = p23.try_mul(&kron_ungraded(l, &id))?.try_mul(&p23)?;
    r12.try_mul(&l13)?.try_mul(&l23)?.try_sub(&l23.try_mul(&l13)?.try_mul(&r12)?)
}

/// `L = (rho (x) id) R`: a matrix of one-leg PBW elements. Entry `(i, j)` is
/// known modulo grade above `bound - (w_i - w_j)`.
#[derive(Clone, Debug)]
pub struct LOperator {
    pub entries: Vec<Vec<UeTensor>>,
    pub weights: Vec<i32>,
    pub parities: Arc<[u8]>,
    pub bound: i32,
}

/// How `Delta^F` acts on L-entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LCoproductOrder {
    /// `sum_k L_ik (x) L_kj`.
    Direct,
    /// `sum_k L_kj (x) L_ik`.
    Reversed,
}

impl LOperator {
    pub fn from_r(r: &UeTensor, rep: &Representation, weights: &[i32]) -> Result<Self> {
        if r.legs() != 2 {
            return Err(Error::LegMismatch { left: r.legs(), right: 2 });
        }
        let bound = r.bound().ok_or(Error::UnboundedSeries)?;
        let ctx = r.context();
        let n = rep.dim();
        let d = ctx.dim();
        let mut acc: Vec<Vec<Vec<(Box<[u8]>, Rational)>>> = vec![vec![Vec::new(); n]; n];
        for (k, c) in r.terms() {
            let a = ctx.rho_mono(rep, &k[..d]);
            for (i, j, v) in a.entries() {
                acc[i][j].push((k[d..].into(), v * c));
            }
        }
        let entries = acc
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, ts)| {
                        let b = Some(bound - (weights[i] - weights[j]));
                        UeTensor::from_terms(ctx, 1, b, ts.into_iter().map(|(m, q)| (vec![m], q)))
                    })
                    .collect()
            })
            .collect();
        Ok(LOperator { entries, weights: weights.to_vec(), parities: rep.parities.clone(), bound })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Index of the odd (central) coordinate.
    pub fn center(&self) -> usize {
        self.parities.iter().position(|&p| p == 1).expect("one odd coordinate")
    }

    /// Strictly lower entries vanish and the centre is `1`.
    pub fn has_displayed_shape(&self) -> bool {
        let n = self.dim();
        let c = self.center();
        let lower_zero = (0..n).all(|i| (0..i).all(|j| self.entries[i][j].is_zero()));
        lower_zero && crate::twist::is_unit(&self.entries[c][c])
    }

    /// `L_11 L_nn = 1` modulo the bound.
    pub fn corner_product_is_unit(&self) -> Result<bool> {
        let n = self.dim();
        let p = self.entries[0][0].mul(&self.entries[n - 1][n - 1])?;
        Ok(crate::twist::is_unit(&p))
    }

    /// The bound to which entry `(i, j)` is known.
    pub fn entry_bound(&self, i: usize, j: usize) -> i32 {
        self.bound - (self.weights[i] - self.weights[j])
    }

    /// `sum_k L_ik (x) L_kj` or its reversed form, truncated to the bound
    /// of entry `(i, j)`.
    pub fn matrix_coproduct(&self, i: usize, j: usize, order: LCoproductOrder) -> Result<UeTensor> {
        let b = Some(self.entry_bound(i, j));
        let two_leg = |x: &UeTensor| x.truncate(b).insert_unit_leg(1);
        let second = |x: &UeTensor| x.truncate(b).insert_unit_leg(0);
        let mut out = UeTensor::zero(self.entries[i][j].context(), 2, b);
        for k in 0..self.dim() {
            let (a, c) = match order {
                LCoproductOrder::Direct => (&self.entries[i][k], &self.entries[k][j]),
                LCoproductOrder::Reversed => (&self.entries[k][j], &self.entries[i][k]),
            };
            if a.is_zero() || c.is_zero() {
                continue;
            }
            out = out.add(&two_leg(a).mul(&second(c))?)?;
        }
        Ok(out)
    }
}

/// `F Delta_0(x) F^{-1}` on PBW tensors.
pub fn twisted_coproduct_ue(f: &UeTensor, x: &UeTensor) -> Result<UeTensor> {
    f.mul(&x.coproduct0()?)?.mul(&f.inverse()?)
}

/// Whether `Delta^F(L_ij)` equals the given matrix coproduct for every
/// upper entry, each to its own bound.
pub fn l_coproduct_holds(l: &LOperator, f: &UeTensor, order: LCoproductOrder) -> Result<bool> {
    let finv = f.inverse()?;
    for i in 0..l.dim() {
        for j in i..l.dim() {
            let b = Some(l.entry_bound(i, j));
            let lhs = f.mul(&l.entries[i][j].coproduct0()?)?.mul(&finv)?.truncate(b);
            if lhs != l.matrix_coproduct(i, j, order)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The order that holds when exactly one does; `None` if neither or both.
pub fn l_coproduct_order(l: &LOperator, f: &UeTensor) -> Result<Option<LCoproductOrder>> {
    let direct = l_coproduct_holds(l, f, LCoproductOrder::Direct)?;
    let reversed = l_coproduct_holds(l, f, LCoproductOrder::Reversed)?;
    Ok(match (direct, reversed) {
        (true, false) => Some(LCoproductOrder::Direct),
        (false, true) => Some(LCoproductOrder::Reversed),
        _ => None,
    })
}

/// Evaluate the universal R of a twist exactly in `rho (x) rho`.
pub fn r_rep(tw: &Twist, eng: &Engines) -> Result<GradedMatrix> {
    tw.universal_r().eval(&eng.rep, 2)
}

/// `1 (x) 1` in `rho (x) rho` over any coefficients.
pub fn identity2<C: Coeff>(base: &Arc<[u8]>) -> GradedMatrix<C> {
    GradedMatrix::<C>::identity(base.clone()).embed(0, 2)
}

/// QYBE for a twist: PBW side through leg transport of `R`, exact side
/// through graded embeddings of `rho (x) rho (R)`, and the oracle between them.
pub fn qybe_verdict(tw: &Twist, eng: &Engines) -> Result<Verdict> {
    let r = tw.universal_r().eval(&eng.ue, 2)?;
    let at = |a: usize, b: usize| transport_ue(&r, &[vec![a], vec![b]], 3);
    let (r12, r13, r23) = (at(0, 1)?, at(0, 2)?, at(1, 2)?);
    let ul = r12.mul(&r13)?.mul(&r23)?;
    let ur = r23.mul(&r13)?.mul(&r12)?;
    let base = &eng.representation().parities;
    let m = r_rep(tw, eng)?;
    let (m12, m13, m23) = (m.embed_pair(base, 0, 1)?, m.embed_pair(base, 0, 2)?, m.embed_pair(base, 1, 2)?);
    let ml = m12.try_mul(&m13)?.try_mul(&m23)?;
    let mr = m23.try_mul(&m13)?.try_mul(&m12)?;
    Ok(Verdict { universal: ul == ur, exact: ml == mr, oracle: eng.agrees(&ul, &ml) && eng.agrees(&ur, &mr) })
}
