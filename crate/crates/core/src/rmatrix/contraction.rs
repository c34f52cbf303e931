use std::sync::Arc;

use num_traits::{One, Zero};

use super::{catalog, LieTensor};
use crate::algebra::{Representation, SuperAlgebra};
use crate::error::{Error, Result};
use crate::scalar::{int, rat, Coeff, LaurentSeries, Poly, Rational, EXACT};

/// Variable names used by the contraction.
pub const EPS: &str = "eps";
pub const S: &str = "s";
pub const T: &str = "t";

/// `(r0 q + r0^21) / (q - 1)`.
pub fn trig_r<C: Coeff>(r0: &LieTensor<C>, q: &C) -> Result<LieTensor<C>> {
    let den = q.clone() - C::one();
    let inv = den.try_inverse().ok_or_else(|| Error::DivisionByNonUnit(den.to_string()))?;
    Ok(trig_numerator(r0, q)?.scale_by(&inv))
}

/// `(q - 1) trig_r(q) = r0 q + r0^21`, polynomial in `q`.
pub fn trig_numerator<C: Coeff>(r0: &LieTensor<C>, q: &C) -> Result<LieTensor<C>> {
    r0.scale_by(q).add(&r0.flip()?)
}

/// Settings of the contraction.
#[derive(Clone, Debug)]
pub struct ContractionConfig {
    /// Required truncation order of the final series.
    pub order: i64,
    /// The factor `k` in the rescaling `tau = k t / eps`.
    pub scale: Rational,
}

impl Default for ContractionConfig {
    fn default() -> Self {
        ContractionConfig { order: 4, scale: int(2) }
    }
}

/// Result of `eps * Ad(exp(tau e_theta))^{(x)2} trig_r(e^{eps s})`.
#[derive(Clone, Debug)]
pub struct Contraction {
    /// The full series-valued tensor.
    pub series: LieTensor<LaurentSeries<Poly>>,
    /// Guaranteed order over all coefficients.
    pub order: i64,
    /// Lowest power of `eps` with a nonzero coefficient.
    pub valuation: i64,
    /// The `eps^0` coefficient.
    pub eps0: LieTensor<Poly>,
    /// Its `s^-1` part (coefficient of `1/s`).
    pub casimir_part: LieTensor<Poly>,
    /// Its `t^1` part (coefficient of `t`).
    pub t_part: LieTensor<Poly>,
}

fn rational_poly(t: &LieTensor) -> LieTensor<Poly> {
    t.lift(|q| Poly::constant(q.clone()))
}

/// Run the contraction; the input order is raised until the result is
/// known to `cfg.order`.
pub fn contract(alg: &Arc<SuperAlgebra>, rep: &Representation, cfg: &ContractionConfig) -> Result<Contraction> {
    let mut input = cfg.order + 2;
    loop {
        let c = contract_at(alg, rep, cfg, input)?;
        if c.order >= cfg.order {
            return Ok(c);
        }
        input += cfg.order - c.order;
    }
}

fn contract_at(alg: &Arc<SuperAlgebra>, rep: &Representation, cfg: &ContractionConfig, input: i64) -> Result<Contraction> {
    type L = LaurentSeries<Poly>;
    let r0: LieTensor<L> = catalog::dj_r0(alg, rep).lift(|q| L::constant(Poly::constant(q.clone())));
    let eps_s = L::new(EPS, 1, vec![Poly::var(S)], input);
    let q = eps_s.exp()?;
    let trig = trig_r(&r0, &q)?;
    let theta = alg.index_of("X1+")?;
    let tau = L::monomial(EPS, Poly::var(T).scale(&cfg.scale), -1);
    let moved = trig.ad_exp(&[(theta, Rational::one())], &tau)?;
    let series = moved.scale_by(&L::monomial(EPS, Poly::one(), 1));
    let order = series.terms().values().map(|c| c.order()).min().unwrap_or(EXACT);
    let valuation = series.terms().values().filter(|c| !c.is_zero()).map(|c| c.valuation()).min().unwrap_or(EXACT);
    let coeff_at = |k: i64| -> Result<LieTensor<Poly>> {
        let mut out = LieTensor::zero(alg, 2);
        for (key, c) in series.terms() {
            let v = c.coeff(k).ok_or(Error::NegativePowerSurvives(k))?;
            out = out.add(&LieTensor::from_terms(alg, 2, [(key.clone(), v)]))?;
        }
        Ok(out)
    };
    for k in valuation.min(0)..0 {
        if !coeff_at(k)?.is_zero() {
            return Err(Error::NegativePowerSurvives(k));
        }
    }
    let eps0 = coeff_at(0)?;
    let casimir_part = eps0.map_coeffs(|p| p.coeff_of(S, -1));
    let t_part = eps0.map_coeffs(|p| p.coeff_of(T, 1));
    Ok(Contraction { series, order, valuation, eps0, casimir_part, t_part })
}

impl Contraction {
    /// Expected `eps^0` coefficient `c/s + t sum e_alpha ^ [e_theta, e_alpha^dual]`.
    pub fn expected(alg: &Arc<SuperAlgebra>, rep: &Representation) -> Result<LieTensor<Poly>> {
        let c = rational_poly(&catalog::casimir(alg, rep)).scale_by(&Poly::var_pow(S, -1));
        let t = rational_poly(&catalog::contraction_t_part(alg, rep)?).scale_by(&Poly::var(T));
        c.add(&t)
    }
}

/// Spectral cYBE for `R(u) = c/u + t rt`, cleared of denominators:
/// `u23 [R12, R13] + u13 [R12, R23] + u12 [R13, R23]` with
/// `R_ij = c + t u_ij rt` and `u13 = u12 + u23`.
pub fn spectral_cybe(c: &LieTensor<Poly>, rt: &LieTensor<Poly>, t: &Poly) -> Result<LieTensor<Poly>> {
    let u12 = Poly::var("u12");
    let u23 = Poly::var("u23");
    let u13 = u12.clone() + u23.clone();
    let at = |u: &Poly| c.add(&rt.scale_by(&(t.clone() * u.clone())));
    let (r12, r13, r23) = (at(&u12)?, at(&u13)?, at(&u23)?);
    r12.bracket_12_13(&r13)?
        .scale_by(&u23)
        .add(&r12.bracket_12_23(&r23)?.scale_by(&u13))?
        .add(&r13.bracket_13_23(&r23)?.scale_by(&u12))
}

/// `(q-1) trig_r = (q+1)/2 c + (q-1)/2 (r0 - r0^21)` at symbolic `q`.
pub fn trig_rearrangement(alg: &Arc<SuperAlgebra>, rep: &Representation) -> Result<bool> {
    let r0 = rational_poly(&catalog::dj_r0(alg, rep));
    let c = rational_poly(&catalog::casimir(alg, rep));
    let q = Poly::var("q");
    let lhs = trig_numerator(&r0, &q)?;
    let anti = r0.sub(&r0.flip()?)?;
    let half = rat(1, 2);
    let rhs = c
        .scale_by(&(q.clone() + Poly::one()).scale(&half))
        .add(&anti.scale_by(&(q - Poly::one()).scale(&half)))?;
    Ok(lhs == rhs)
}

/// `(q-1) trig_r` at `q = 1` equals the Casimir.
pub fn trig_residue(alg: &Arc<SuperAlgebra>, rep: &Representation) -> Result<bool> {
    let r0 = catalog::dj_r0(alg, rep);
    let c = catalog::casimir(alg, rep);
    Ok(trig_numerator(&r0, &Rational::one())? == c)
}
