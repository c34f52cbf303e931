use std::sync::Arc;

use num_traits::{One, Zero};

use super::LieTensor;
use crate::algebra::{Representation, SuperAlgebra};
use crate::error::{Error, Result};
use crate::scalar::{rat, Coeff, Rational};

/// Tensor Casimir `c = sum_i e_i (x) e^i` with `<e^i, e_j> = delta_ij` for
/// the supertrace form of `rep`.
pub fn casimir(alg: &Arc<SuperAlgebra>, rep: &Representation) -> LieTensor {
    let dual = rep.dual_basis(alg);
    let mut terms = Vec::new();
    for (i, d) in dual.iter().enumerate() {
        for (k, c) in d {
            terms.push((vec![i, *k], c.clone()));
        }
    }
    LieTensor::from_terms(alg, 2, terms)
}

/// `r_0 = 1/2 sum_h h (x) h^dual + sum_{alpha > 0} e_alpha (x) e_alpha^dual`.
pub fn dj_r0(alg: &Arc<SuperAlgebra>, rep: &Representation) -> LieTensor {
    let dual = rep.dual_basis(alg);
    let half = rat(1, 2);
    let mut terms = Vec::new();
    for &h in alg.cartan() {
        for (k, c) in &dual[h] {
            terms.push((vec![h, *k], c * &half));
        }
    }
    for a in alg.positive_roots() {
        for (k, c) in &dual[a] {
            terms.push((vec![a, *k], c.clone()));
        }
    }
    LieTensor::from_terms(alg, 2, terms)
}

fn idx(alg: &SuperAlgebra, label: &str) -> Result<usize> {
    alg.index_of(label)
}

/// `sum_k a_k (H_k ^ X_k+ + sum_{j>k} Z_kj+ ^ U_kj+ - v_k+ (x) v_k+)`.
///
/// For rank 2 with unit coefficients this is `r_full`; the first summand
/// alone is `r_esj`, the second `r_sj`.
pub fn r_osp_chain<C: Coeff>(alg: &Arc<SuperAlgebra>, coeffs: &[C]) -> Result<LieTensor<C>> {
    let n = alg.rank();
    if coeffs.len() != n {
        return Err(Error::InvalidOption(format!("need {n} chain coefficients, got {}", coeffs.len())));
    }
    let mut out = LieTensor::zero(alg, 2);
    for k in 1..=n {
        let a = &coeffs[k - 1];
        let h = idx(alg, &format!("H{k}"))?;
        let x = idx(alg, &format!("X{k}+"))?;
        let v = idx(alg, &format!("v{k}+"))?;
        out = out.add(&LieTensor::wedge(alg, h, x, a.clone()))?;
        out = out.add(&LieTensor::tensor(alg, v, v, -a.clone()))?;
        for j in (k + 1)..=n {
            let z = idx(alg, &format!("Z{k}_{j}+"))?;
            let u = idx(alg, &format!("U{k}_{j}+"))?;
            out = out.add(&LieTensor::wedge(alg, z, u, a.clone()))?;
        }
    }
    Ok(out)
}

fn osp4(alg: &SuperAlgebra, label: &str) -> Result<usize> {
    alg.osp4(label)
}

/// Jordanian `r_j = H ^ X+`.
pub fn r_j(alg: &Arc<SuperAlgebra>) -> Result<LieTensor> {
    Ok(LieTensor::wedge(alg, osp4(alg, "H")?, osp4(alg, "X+")?, Rational::one()))
}

/// Extended super-jordanian `r_esj = H ^ X+ - v+ (x) v+ + Z+ ^ U+`.
pub fn r_esj(alg: &Arc<SuperAlgebra>) -> Result<LieTensor> {
    let v = osp4(alg, "v+")?;
    r_j(alg)?
        .add(&LieTensor::tensor(alg, v, v, -Rational::one()))?
        .add(&LieTensor::wedge(alg, osp4(alg, "Z+")?, osp4(alg, "U+")?, Rational::one()))
}

/// Super-jordanian `r_sj = J ^ Y+ - w+ (x) w+` on the second osp(1|2).
pub fn r_sj(alg: &Arc<SuperAlgebra>) -> Result<LieTensor> {
    let w = osp4(alg, "w+")?;
    Ok(LieTensor::wedge(alg, osp4(alg, "J")?, osp4(alg, "Y+")?, Rational::one())
        .add(&LieTensor::tensor(alg, w, w, -Rational::one()))?)
}

/// The same super-jordanian term written with the graded wedge `w+ ^ w+`,
/// which equals `2 w+ (x) w+`; kept as a negative control.
pub fn r_sj_graded_wedge(alg: &Arc<SuperAlgebra>) -> Result<LieTensor> {
    let w = osp4(alg, "w+")?;
    Ok(LieTensor::wedge(alg, osp4(alg, "J")?, osp4(alg, "Y+")?, Rational::one())
        .add(&LieTensor::wedge(alg, w, w, -Rational::one()))?)
}

/// `r_full = r_esj + r_sj`.
pub fn r_full(alg: &Arc<SuperAlgebra>) -> Result<LieTensor> {
    r_esj(alg)?.add(&r_sj(alg)?)
}

/// `r_full + X+ ^ Y+`.
pub fn r_full_abelian(alg: &Arc<SuperAlgebra>) -> Result<LieTensor> {
    r_full(alg)?.add(&LieTensor::wedge(alg, osp4(alg, "X+")?, osp4(alg, "Y+")?, Rational::one()))
}

/// `sum_{alpha > 0} e_alpha ^ [e_theta, e_alpha^dual]` for the long root
/// `e_theta = X1+`.
pub fn contraction_t_part(alg: &Arc<SuperAlgebra>, rep: &Representation) -> Result<LieTensor> {
    let theta = idx(alg, "X1+")?;
    let dual = rep.dual_basis(alg);
    let mut out = LieTensor::zero(alg, 2);
    for a in alg.positive_roots() {
        let d = alg.element(dual[a].iter().cloned());
        let br = alg.bracket(&alg.basis_element(theta), &d)?;
        for (k, c) in br.terms() {
            out = out.add(&LieTensor::wedge(alg, a, *k, c.clone()))?;
        }
    }
    Ok(out)
}

/// Basis of `{x : delta_r(x) = 0}` over the whole algebra, as coordinate
/// vectors.
pub fn cobracket_kernel(r: &LieTensor) -> Result<Vec<Vec<Rational>>> {
    let domain: Vec<usize> = (0..r.algebra().dim()).collect();
    cobracket_kernel_on(r, &domain)
}

/// Kernel of `delta_r` restricted to the span of `domain`; vectors are
/// full coordinate vectors.
pub fn cobracket_kernel_on(r: &LieTensor, domain: &[usize]) -> Result<Vec<Vec<Rational>>> {
    let dim = r.algebra().dim();
    let images: Vec<LieTensor> = domain.iter().map(|&i| r.cobracket(i)).collect::<Result<_>>()?;
    let mut keys: Vec<&Vec<usize>> = images.iter().flat_map(|t| t.terms().keys()).collect();
    keys.sort();
    keys.dedup();
    let rows: Vec<Vec<Rational>> = keys
        .iter()
        .map(|k| images.iter().map(|t| t.terms().get(*k).cloned().unwrap_or_else(Rational::zero)).collect())
        .collect();
    let local = if rows.is_empty() {
        (0..domain.len())
            .map(|i| (0..domain.len()).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect()
    } else {
        crate::linalg::nullspace(&rows, domain.len())
    };
    Ok(local
        .into_iter()
        .map(|v: Vec<Rational>| {
            let mut full = vec![Rational::zero(); dim];
            for (c, &i) in v.into_iter().zip(domain) {
                full[i] = c;
            }
            full
        })
        .collect())
}

/// Basis indices of the Borel subalgebra: Cartan and positive roots.
pub fn borel(alg: &SuperAlgebra) -> Vec<usize> {
    let mut out: Vec<usize> = alg.cartan().to_vec();
    out.extend(alg.positive_roots());
    out.sort_unstable();
    out
}

/// Whether `[u, v]` stays in the span of `basis` for all basis pairs.
pub fn is_subalgebra(alg: &SuperAlgebra, basis: &[Vec<Rational>]) -> Result<bool> {
    let to_elem = |v: &Vec<Rational>| alg.element(v.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()));
    for u in basis {
        for v in basis {
            let b = alg.bracket(&to_elem(u), &to_elem(v))?;
            let coords: Vec<Rational> = (0..alg.dim()).map(|i| b.coeff(i)).collect();
            if !crate::linalg::in_span(basis, &coords) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Coordinate vector of a labelled combination.
pub fn coordinates(alg: &SuperAlgebra, labels: &[&str]) -> Result<Vec<Vec<Rational>>> {
    labels
        .iter()
        .map(|l| {
            let i = alg.index_of(l)?;
            Ok((0..alg.dim()).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        })
        .collect()
}

/// Whether two families of vectors span the same subspace.
pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    crate::linalg::rank(a) == crate::linalg::rank(b)
        && a.iter().all(|v| crate::linalg::in_span(b, v))
        && b.iter().all(|v| crate::linalg::in_span(a, v))
}
