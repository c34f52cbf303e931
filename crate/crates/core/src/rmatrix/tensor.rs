use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{add_term, Representation, SuperAlgebra};
use crate::error::{Error, Result};
use crate::pbw::{UeContext, UeTensor};
use crate::repmat::GradedMatrix;
use crate::scalar::{int, Coeff, Rational};

/// Element of `g^{(x) legs}` over coefficients `C`, keyed by basis-index
/// tuples.
#[derive(Clone, Debug)]
pub struct LieTensor<C = Rational> {
    alg: Arc<SuperAlgebra>,
    legs: usize,
    terms: BTreeMap<Vec<usize>, C>,
}

impl<C: Coeff> LieTensor<C> {
    pub fn zero(alg: &Arc<SuperAlgebra>, legs: usize) -> Self {
        LieTensor { alg: alg.clone(), legs, terms: BTreeMap::new() }
    }

    pub fn from_terms(alg: &Arc<SuperAlgebra>, legs: usize, terms: impl IntoIterator<Item = (Vec<usize>, C)>) -> Self {
        let mut t = Self::zero(alg, legs);
        for (k, c) in terms {
            assert_eq!(k.len(), legs);
            add_term(&mut t.terms, k, c);
        }
        t
    }

    /// `c a (x) b`.
    pub fn tensor(alg: &Arc<SuperAlgebra>, a: usize, b: usize, c: C) -> Self {
        Self::from_terms(alg, 2, [(vec![a, b], c)])
    }

    /// Graded wedge `c (a (x) b - (-1)^{p(a)p(b)} b (x) a)`.
    pub fn wedge(alg: &Arc<SuperAlgebra>, a: usize, b: usize, c: C) -> Self {
        let s = alg.parity(a) * alg.parity(b);
        let back = if s == 1 { c.clone() } else { -c.clone() };
        Self::from_terms(alg, 2, [(vec![a, b], c), (vec![b, a], back)])
    }

    pub fn algebra(&self) -> &Arc<SuperAlgebra> {
        &self.alg
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &[usize]) -> C {
        self.terms.get(key).cloned().unwrap_or_else(C::zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.alg, &other.alg) && *self.alg != *other.alg {
            return Err(Error::MixedAlgebra);
        }
        if self.legs != other.legs {
            return Err(Error::LegMismatch { left: self.legs, right: other.legs });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_term(&mut out.terms, k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(q))
    }

    pub fn scale_by(&self, x: &C) -> Self {
        self.map_coeffs(|c| c.clone() * x.clone())
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LieTensor<D> {
        let mut out = LieTensor::zero(&self.alg, self.legs);
        for (k, c) in &self.terms {
            add_term(&mut out.terms, k.clone(), f(c));
        }
        out
    }

    /// Same tensor over a larger coefficient ring.
    pub fn lift<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LieTensor<D> {
        self.map_coeffs(f)
    }

    fn key_parity(&self, k: &[usize]) -> u8 {
        k.iter().map(|&i| self.alg.parity(i)).sum::<u8>() % 2
    }

    /// Total parity, `None` if mixed; zero counts as even.
    pub fn parity(&self) -> Option<u8> {
        let mut seen = None;
        for k in self.terms.keys() {
            let p = self.key_parity(k);
            if seen.is_some_and(|q| q != p) {
                return None;
            }
            seen = Some(p);
        }
        Some(seen.unwrap_or(0))
    }

    /// Graded flip of a two-leg tensor: `a (x) b -> (-1)^{p(a)p(b)} b (x) a`.
    pub fn flip(&self) -> Result<Self> {
        if self.legs != 2 {
            return Err(Error::LegMismatch { left: self.legs, right: 2 });
        }
        let mut out = Self::zero(&self.alg, 2);
        for (k, c) in &self.terms {
            let s = self.alg.parity(k[0]) * self.alg.parity(k[1]);
            let c = if s == 1 { -c.clone() } else { c.clone() };
            add_term(&mut out.terms, vec![k[1], k[0]], c);
        }
        Ok(out)
    }

    /// Adjoint action of the basis element `x`:
    /// `x . (a_1 (x) .. (x) a_k) = sum_i (-1)^{p(x)(p(a_1)+..+p(a_{i-1}))} .. (x) [x, a_i] (x) ..`.
    pub fn act(&self, x: usize) -> Self {
        let px = self.alg.parity(x);
        let mut out = Self::zero(&self.alg, self.legs);
        for (k, c) in &self.terms {
            let mut before = 0u8;
            for i in 0..self.legs {
                let sign = px * before % 2 == 1;
                for (m, b) in self.alg.bracket_basis(x, k[i]) {
                    let mut key = k.clone();
                    key[i] = *m;
                    let v = c.scale(b);
                    add_term(&mut out.terms, key, if sign { -v } else { v });
                }
                before = (before + self.alg.parity(k[i])) % 2;
            }
        }
        out
    }

    /// Adjoint action of an arbitrary combination `sum c_x x`.
    pub fn act_by(&self, x: &[(usize, Rational)]) -> Result<Self> {
        let mut out = Self::zero(&self.alg, self.legs);
        for (i, c) in x {
            out = out.add(&self.act(*i).scale(c))?;
        }
        Ok(out)
    }

    /// `exp(tau x.)` for an even basis element `x` acting nilpotently.
    pub fn ad_exp(&self, x: &[(usize, Rational)], tau: &C) -> Result<Self> {
        let mut out = self.clone();
        let mut term = self.clone();
        let limit = self.alg.dim() * self.legs + 2;
        for k in 1..=limit {
            term = term.act_by(x)?.map_coeffs(|c| c.clone() * tau.clone()).scale(&int(k as i64).recip());
            if term.is_zero() {
                return Ok(out);
            }
            out = out.add(&term)?;
        }
        Err(Error::NotNilpotent)
    }

    /// `[a (x) b (x) 1, c (x) 1 (x) d] = (-1)^{p(b)p(c)} [a,c] (x) b (x) d`.
    pub fn bracket_12_13(&self, other: &Self) -> Result<Self> {
        self.bracket_pattern(other, |alg, x, y| {
            let s = alg.parity(x[1]) * alg.parity(y[0]) == 1;
            let out = alg.bracket_basis(x[0], y[0]).iter().map(|(m, q)| (vec![*m, x[1], y[1]], q.clone())).collect();
            (s, out)
        })
    }

    /// `[a (x) b (x) 1, 1 (x) c (x) d] = a (x) [b,c] (x) d`.
    pub fn bracket_12_23(&self, other: &Self) -> Result<Self> {
        self.bracket_pattern(other, |alg, x, y| {
            let out = alg.bracket_basis(x[1], y[0]).iter().map(|(m, q)| (vec![x[0], *m, y[1]], q.clone())).collect();
            (false, out)
        })
    }

    /// `[a (x) 1 (x) b, 1 (x) c (x) d] = (-1)^{p(b)p(c)} a (x) c (x) [b,d]`.
    pub fn bracket_13_23(&self, other: &Self) -> Result<Self> {
        self.bracket_pattern(other, |alg, x, y| {
            let s = alg.parity(x[1]) * alg.parity(y[0]) == 1;
            let out = alg.bracket_basis(x[1], y[1]).iter().map(|(m, q)| (vec![x[0], y[0], *m], q.clone())).collect();
            (s, out)
        })
    }

    fn bracket_pattern(
        &self,
        other: &Self,
        rule: impl Fn(&SuperAlgebra, &[usize], &[usize]) -> (bool, Vec<(Vec<usize>, Rational)>),
    ) -> Result<Self> {
        self.check(other)?;
        if self.legs != 2 {
            return Err(Error::LegMismatch { left: self.legs, right: 2 });
        }
        let mut out = Self::zero(&self.alg, 3);
        for (x, cx) in &self.terms {
            for (y, cy) in &other.terms {
                let (neg, parts) = rule(&self.alg, x, y);
                let c = cx.clone() * cy.clone();
                for (key, q) in parts {
                    let v = c.scale(&q);
                    add_term(&mut out.terms, key, if neg { -v } else { v });
                }
            }
        }
        Ok(out)
    }

    /// `[r12, r13] + [r12, r23] + [r13, r23]`; zero iff `r` solves the cYBE.
    pub fn cybe_residual(&self) -> Result<Self> {
        self.bracket_12_13(self)?.add(&self.bracket_12_23(self)?)?.add(&self.bracket_13_23(self)?)
    }

    /// `delta(x) = [x (x) 1 + 1 (x) x, r]` for an even `r`.
    pub fn cobracket(&self, x: usize) -> Result<Self> {
        if self.parity() != Some(0) {
            return Err(Error::HeterogeneousOperand);
        }
        Ok(self.act(x))
    }

    /// The same tensor inside `U(g)^{(x) legs}`.
    pub fn to_ue(&self, ctx: &Arc<UeContext>, bound: Option<i32>) -> UeTensor<C> {
        let terms = self.terms.iter().map(|(k, c)| (k.iter().map(|&g| ctx.gen_mono(g)).collect(), c.clone()));
        UeTensor::from_terms(ctx, self.legs, bound, terms)
    }

    /// Image under `rho^{(x) legs}` with graded Kronecker products.
    pub fn rho(&self, rep: &Representation) -> GradedMatrix<C> {
        let big = GradedMatrix::<Rational>::identity(rep.parities.clone()).embed(0, self.legs);
        let mut out = GradedMatrix::<C>::zero(big.parities().clone());
        for (k, c) in &self.terms {
            let mut m = rep.matrices[k[0]].clone();
            for &g in &k[1..] {
                m = m.graded_kron_split(&rep.matrices[g]);
            }
            let m = m.map_coeffs(|q| C::from_rational(q.clone())).scale_by(c);
            out = out.try_add(&m).expect("same grading");
        }
        out
    }
}

impl LieTensor<Rational> {
    /// Coordinates over the full key space `dim^legs`, for linear algebra.
    pub fn coordinates(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.terms.iter()
    }
}

impl<C: Coeff> PartialEq for LieTensor<C> {
    fn eq(&self, other: &Self) -> bool {
        self.legs == other.legs && self.terms == other.terms
    }
}

impl<C: Coeff> fmt::Display for LieTensor<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let labels: Vec<&str> = k.iter().map(|&g| self.alg.label(g)).collect();
            write!(f, "({c}) {}", labels.join(" (x) "))?;
        }
        Ok(())
    }
}
