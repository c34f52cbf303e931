use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{Mono, UeContext};
use crate::algebra::Representation;
use crate::error::{Error, Result};
use crate::repmat::GradedMatrix;
use crate::scalar::{int, Coeff, Rational, SeriesFn};

/// Element of `U(g)^{(x) legs}`, truncated above total grade `bound`
/// (`None` = exact). A single leg is a plain enveloping-algebra element.
///
/// Keys concatenate the legs' exponent vectors.
#[derive(Clone)]
pub struct UeTensor<C = Rational> {
    ctx: Arc<UeContext>,
    legs: usize,
    bound: Option<i32>,
    terms: HashMap<Mono, C>,
}

impl<C: Coeff> UeTensor<C> {
    pub fn zero(ctx: &Arc<UeContext>, legs: usize, bound: Option<i32>) -> Self {
        UeTensor { ctx: ctx.clone(), legs, bound, terms: HashMap::new() }
    }

    pub fn scalar(ctx: &Arc<UeContext>, legs: usize, c: C, bound: Option<i32>) -> Self {
        let mut t = Self::zero(ctx, legs, bound);
        if !c.is_zero() {
            t.terms.insert(vec![0u8; legs * ctx.dim()].into_boxed_slice(), c);
        }
        t
    }

    pub fn one(ctx: &Arc<UeContext>, legs: usize, bound: Option<i32>) -> Self {
        Self::scalar(ctx, legs, C::one(), bound)
    }

    /// `1 (x) .. (x) e_g (x) .. (x) 1` with the generator in slot `leg`.
    pub fn generator(ctx: &Arc<UeContext>, g: usize, leg: usize, legs: usize, bound: Option<i32>) -> Self {
        let mut key = vec![0u8; legs * ctx.dim()];
        key[leg * ctx.dim() + g] = 1;
        let mut t = Self::zero(ctx, legs, bound);
        if bound.is_none_or(|d| ctx.grades[g] <= d) {
            t.terms.insert(key.into_boxed_slice(), C::one());
        }
        t
    }

    /// Build from `(per-leg monomials, coefficient)` pairs.
    pub fn from_terms(
        ctx: &Arc<UeContext>,
        legs: usize,
        bound: Option<i32>,
        terms: impl IntoIterator<Item = (Vec<Mono>, C)>,
    ) -> Self {
        let mut t = Self::zero(ctx, legs, bound);
        for (monos, c) in terms {
            assert_eq!(monos.len(), legs);
            let key: Mono = monos.concat().into_boxed_slice();
            t.add_term(key, c);
        }
        t
    }

    pub fn context(&self) -> &Arc<UeContext> {
        &self.ctx
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn bound(&self) -> Option<i32> {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn dim(&self) -> usize {
        self.ctx.dim()
    }

    /// The leg monomials of a key.
    pub fn split_key<'a>(&self, key: &'a [u8]) -> Vec<&'a [u8]> {
        key.chunks(self.dim()).collect()
    }

    pub fn key_grade(&self, key: &[u8]) -> i32 {
        self.ctx.mono_grade(key)
    }

    /// Terms sorted by key, for deterministic output.
    pub fn sorted_terms(&self) -> Vec<(&Mono, &C)> {
        let mut v: Vec<(&Mono, &C)> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    fn add_term(&mut self, key: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        if let Some(d) = self.bound {
            if self.ctx.mono_grade(&key) > d {
                return;
            }
        }
        match self.terms.entry(key) {
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn compatible(&self, other: &Self) -> Result<Option<i32>> {
        if self.legs != other.legs {
            return Err(Error::LegMismatch { left: self.legs, right: other.legs });
        }
        if !Arc::ptr_eq(&self.ctx, &other.ctx) {
            return Err(Error::MixedAlgebra);
        }
        Ok(match (self.bound, other.bound) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        })
    }

    /// Same element with a (possibly tighter) truncation degree.
    pub fn truncate(&self, bound: Option<i32>) -> Self {
        let bound = match (self.bound, bound) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let mut out = Self::zero(&self.ctx, self.legs, bound);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let bound = self.compatible(other)?;
        let mut out = self.truncate(bound);
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
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

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> UeTensor<D> {
        let mut out = UeTensor::zero(&self.ctx, self.legs, self.bound);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    /// Per-term map with access to the key, e.g. grade-dependent scaling.
    pub fn map_terms<D: Coeff>(&self, f: impl Fn(&[u8], &C) -> D) -> UeTensor<D> {
        let mut out = UeTensor::zero(&self.ctx, self.legs, self.bound);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(k, c));
        }
        out
    }

    /// Koszul-signed product with per-leg normal forms.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let bound = self.compatible(other)?;
        let d = self.dim();
        let legs = self.legs;
        let mut acc: HashMap<Mono, C> = HashMap::new();
        let unit = self.ctx.unit_mono();
        let grades_b: Vec<(&Mono, &C, i32, Vec<u8>)> = other
            .terms
            .iter()
            .map(|(k, c)| {
                let pars = k.chunks(d).map(|m| self.ctx.mono_parity(m)).collect();
                (k, c, self.ctx.mono_grade(k), pars)
            })
            .collect();
        for (ka, ca) in &self.terms {
            let ga = self.ctx.mono_grade(ka);
            let pa: Vec<u8> = ka.chunks(d).map(|m| self.ctx.mono_parity(m)).collect();
            for (kb, cb, gb, pb) in &grades_b {
                if bound.is_some_and(|b| ga + gb > b) {
                    continue;
                }
                // sign (-1)^{sum_{i>j} p(a_i) p(b_j)}
                let mut s = 0u32;
                let mut prefix_b = 0u32;
                for i in 0..legs {
                    s += pa[i] as u32 * prefix_b;
                    prefix_b += pb[i] as u32;
                }
                let coeff = ca.clone() * (*cb).clone();
                let coeff = if s % 2 == 1 { -coeff } else { coeff };
                // expand legwise
                let mut partial: Vec<(Vec<u8>, Rational)> = vec![(Vec::with_capacity(legs * d), Rational::one())];
                for i in 0..legs {
                    let a = &ka[i * d..(i + 1) * d];
                    let b = &kb[i * d..(i + 1) * d];
                    if *b == *unit {
                        for (key, _) in partial.iter_mut() {
                            key.extend_from_slice(a);
                        }
                        continue;
                    }
                    if *a == *unit {
                        for (key, _) in partial.iter_mut() {
                            key.extend_from_slice(b);
                        }
                        continue;
                    }
                    let prod = self.ctx.mul_mono(a, b);
                    let mut next = Vec::with_capacity(partial.len() * prod.len());
                    for (key, c) in &partial {
                        for (m, c2) in prod.iter() {
                            let mut nk = key.clone();
                            nk.extend_from_slice(m);
                            next.push((nk, c * c2));
                        }
                    }
                    partial = next;
                }
                for (key, c) in partial {
                    let v = coeff.scale(&c);
                    match acc.entry(key.into_boxed_slice()) {
                        std::collections::hash_map::Entry::Vacant(e) => {
                            e.insert(v);
                        }
                        std::collections::hash_map::Entry::Occupied(mut e) => {
                            *e.get_mut() += v;
                        }
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(UeTensor { ctx: self.ctx.clone(), legs, bound, terms: acc })
    }

    /// Coefficient of the unit `1 (x) .. (x) 1`.
    pub fn constant_term(&self) -> C {
        self.terms
            .iter()
            .find(|(k, _)| k.iter().all(|&e| e == 0))
            .map_or_else(C::zero, |(_, c)| c.clone())
    }

    /// `f(self)` through the Taylor series of `f` around the (rational)
    /// constant term. The remainder must be positively graded so the series
    /// terminates at the truncation degree.
    pub fn series(&self, f: &SeriesFn) -> Result<Self> {
        let c0 = self.constant_term();
        let center = c0.to_rational().ok_or(Error::NotPositivelyGraded)?;
        let nil = self.sub(&Self::scalar(&self.ctx, self.legs, c0, self.bound))?;
        if nil.is_zero() {
            let coeffs = f.taylor(&center, 1)?;
            return Ok(Self::scalar(&self.ctx, self.legs, C::from_rational(coeffs[0].clone()), self.bound));
        }
        if nil.terms.keys().any(|k| self.ctx.mono_grade(k) <= 0) {
            return Err(Error::NotPositivelyGraded);
        }
        let d = self.bound.ok_or(Error::UnboundedSeries)?;
        let terms = d.max(0) as usize + 1;
        let coeffs = f.taylor(&center, terms)?;
        let mut out = Self::zero(&self.ctx, self.legs, self.bound);
        let mut power = Self::one(&self.ctx, self.legs, self.bound);
        for c in &coeffs {
            if power.is_zero() {
                break;
            }
            out = out.add(&power.scale(c))?;
            power = power.mul(&nil)?;
        }
        Ok(out)
    }

    fn require_no_constant(&self) -> Result<()> {
        if self.constant_term().is_zero() {
            Ok(())
        } else {
            Err(Error::ConstantTermPresent)
        }
    }

    /// `exp(a)` for `a` without constant term.
    pub fn exp(&self) -> Result<Self> {
        self.require_no_constant()?;
        self.series(&SeriesFn::Exp)
    }

    /// `log(1 + a)` for `a` without constant term.
    pub fn log1p(&self) -> Result<Self> {
        self.require_no_constant()?;
        self.add(&Self::one(&self.ctx, self.legs, self.bound))?.series(&SeriesFn::Log)
    }

    /// `(1 + a)^{-1}` for `a` without constant term.
    pub fn inv1p(&self) -> Result<Self> {
        self.require_no_constant()?;
        self.add(&Self::one(&self.ctx, self.legs, self.bound))?.series(&SeriesFn::Inverse)
    }

    /// Inverse of an element with invertible rational constant term.
    pub fn inverse(&self) -> Result<Self> {
        self.series(&SeriesFn::Inverse)
    }

    /// Graded commutator `[a, b]` for parity-homogeneous `a`, `b`.
    pub fn graded_commutator(&self, other: &Self) -> Result<Self> {
        let pa = self.parity().ok_or(Error::HeterogeneousOperand)?;
        let pb = other.parity().ok_or(Error::HeterogeneousOperand)?;
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        if pa * pb == 1 {
            ab.add(&ba)
        } else {
            ab.sub(&ba)
        }
    }

    /// Total parity, `None` for mixed elements; zero counts as even.
    pub fn parity(&self) -> Option<u8> {
        let mut seen = None;
        for k in self.terms.keys() {
            let p = self.ctx.mono_parity(k);
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(seen.unwrap_or(0))
    }

    /// `exp(ad a)(x) = sum ad_a^k(x) / k!`, truncated at the bound.
    pub fn ad_exp(a: &Self, x: &Self) -> Result<Self> {
        if a.is_zero() {
            return Ok(x.clone());
        }
        if a.terms.keys().any(|k| a.ctx.mono_grade(k) <= 0) {
            return Err(Error::NotPositivelyGraded);
        }
        let d = a.bound.or(x.bound).ok_or(Error::UnboundedSeries)?;
        let mut out = x.clone();
        let mut term = x.clone();
        for k in 1..=(d.max(0) as i64 + 1) {
            term = a.graded_commutator(&term)?.scale(&int(k).recip());
            if term.is_zero() {
                break;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Apply `Delta_0` to slot `leg`, producing `legs + 1` legs.
    pub fn coproduct_leg(&self, leg: usize) -> Result<Self> {
        if leg >= self.legs {
            return Err(Error::LegMismatch { left: leg + 1, right: self.legs });
        }
        let d = self.dim();
        let mut out = Self::zero(&self.ctx, self.legs + 1, self.bound);
        for (k, c) in &self.terms {
            let m = &k[leg * d..(leg + 1) * d];
            for (a, b, q) in self.ctx.coproduct_mono(m).iter() {
                let mut key = Vec::with_capacity((self.legs + 1) * d);
                key.extend_from_slice(&k[..leg * d]);
                key.extend_from_slice(a);
                key.extend_from_slice(b);
                key.extend_from_slice(&k[(leg + 1) * d..]);
                out.add_term(key.into_boxed_slice(), c.scale(q));
            }
        }
        Ok(out)
    }

    /// The undeformed coproduct of a one-leg element.
    pub fn coproduct0(&self) -> Result<Self> {
        if self.legs != 1 {
            return Err(Error::LegMismatch { left: self.legs, right: 1 });
        }
        self.coproduct_leg(0)
    }

    /// Move leg `i` to position `perm[i]`, with the Koszul sign of the
    /// permutation of odd legs.
    pub fn permute_legs(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.legs {
            return Err(Error::LegMismatch { left: perm.len(), right: self.legs });
        }
        let d = self.dim();
        let mut out = Self::zero(&self.ctx, self.legs, self.bound);
        for (k, c) in &self.terms {
            let pars: Vec<u8> = k.chunks(d).map(|m| self.ctx.mono_parity(m)).collect();
            let mut inversions = 0u32;
            for i in 0..self.legs {
                for j in (i + 1)..self.legs {
                    if perm[i] > perm[j] {
                        inversions += (pars[i] * pars[j]) as u32;
                    }
                }
            }
            let mut key = vec![0u8; self.legs * d];
            for i in 0..self.legs {
                key[perm[i] * d..(perm[i] + 1) * d].copy_from_slice(&k[i * d..(i + 1) * d]);
            }
            let c = if inversions % 2 == 1 { -c.clone() } else { c.clone() };
            out.add_term(key.into_boxed_slice(), c);
        }
        Ok(out)
    }

    /// Graded flip of a two-leg tensor.
    pub fn flip(&self) -> Result<Self> {
        if self.legs != 2 {
            return Err(Error::LegMismatch { left: self.legs, right: 2 });
        }
        self.permute_legs(&[1, 0])
    }

    /// Insert the unit as a new leg at position `at`.
    pub fn insert_unit_leg(&self, at: usize) -> Self {
        let d = self.dim();
        let mut out = Self::zero(&self.ctx, self.legs + 1, self.bound);
        for (k, c) in &self.terms {
            let mut key = Vec::with_capacity((self.legs + 1) * d);
            key.extend_from_slice(&k[..at * d]);
            key.extend(std::iter::repeat_n(0u8, d));
            key.extend_from_slice(&k[at * d..]);
            out.add_term(key.into_boxed_slice(), c.clone());
        }
        out
    }

    /// Counit on slot `leg`: keep terms whose leg is the unit and drop it.
    pub fn counit_leg(&self, leg: usize) -> Self {
        let d = self.dim();
        let mut out = Self::zero(&self.ctx, self.legs - 1, self.bound);
        for (k, c) in &self.terms {
            if k[leg * d..(leg + 1) * d].iter().all(|&e| e == 0) {
                let mut key = Vec::with_capacity((self.legs - 1) * d);
                key.extend_from_slice(&k[..leg * d]);
                key.extend_from_slice(&k[(leg + 1) * d..]);
                out.add_term(key.into_boxed_slice(), c.clone());
            }
        }
        out
    }

    /// Highest PBW length over legs of any term, per leg.
    pub fn max_leg_degree(&self) -> Vec<u32> {
        let d = self.dim();
        let mut out = vec![0u32; self.legs];
        for k in self.terms.keys() {
            for (i, m) in k.chunks(d).enumerate() {
                out[i] = out[i].max(self.ctx.mono_degree(m));
            }
        }
        out
    }

    pub fn fmt_key(&self, key: &[u8]) -> String {
        key.chunks(self.dim()).map(|m| self.ctx.fmt_mono(m)).collect::<Vec<_>>().join(" (x) ")
    }
}

impl UeTensor<Rational> {
    /// Image under `rho^{(x) legs}`.
    pub fn rho(&self, rep: &Representation) -> GradedMatrix {
        let d = self.dim();
        let big: Arc<[u8]> = {
            let id = GradedMatrix::<Rational>::identity(rep.parities.clone());
            id.embed(0, self.legs).parities().clone()
        };
        let mut acc: HashMap<(usize, usize), Rational> = HashMap::new();
        let mut cache: HashMap<&[u8], GradedMatrix> = HashMap::new();
        for (k, c) in &self.terms {
            let mut mats = Vec::with_capacity(self.legs);
            let mut dead = false;
            for m in k.chunks(d) {
                let mat = cache.entry(m).or_insert_with(|| self.ctx.rho_mono(rep, m)).clone();
                if mat.is_zero() {
                    dead = true;
                    break;
                }
                mats.push(mat);
            }
            if dead {
                continue;
            }
            let mut prod = mats[0].clone();
            for m in &mats[1..] {
                prod = prod.graded_kron_split(m);
            }
            for (i, j, v) in prod.entries() {
                let slot = acc.entry((i, j)).or_insert_with(Rational::zero);
                *slot += v * c;
            }
        }
        GradedMatrix::from_entries(big, acc.into_iter().map(|((i, j), v)| (i, j, v))).expect("in range")
    }
}

impl<C: Coeff> PartialEq for UeTensor<C> {
    fn eq(&self, other: &Self) -> bool {
        self.legs == other.legs && self.terms == other.terms
    }
}

impl<C: Coeff> fmt::Debug for UeTensor<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coeff> fmt::Display for UeTensor<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in terms.into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}) {}", self.fmt_key(k))?;
        }
        Ok(())
    }
}
