use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{factorial, int, Coeff, Rational};
use crate::error::{Error, Result};

/// Marker for "no truncation": every coefficient is known.
pub const EXACT: i64 = i64::MAX;

const DEFAULT_VAR: &str = "eps";

/// Truncated Laurent series `sum c_k x^k` in one variable over a coefficient
/// ring `C` (normally [`super::Poly`]).
///
/// Coefficients of degree above `order` are unknown. Arithmetic propagates the
/// order pessimistically, so a result never claims more precision than its
/// inputs justify.
#[derive(Clone, Debug)]
pub struct LaurentSeries<C> {
    var: Arc<str>,
    min_degree: i64,
    coeffs: Vec<C>,
    order: i64,
}

fn sat_add(a: i64, b: i64) -> i64 {
    if a == EXACT || b == EXACT {
        EXACT
    } else {
        a + b
    }
}

impl<C: Coeff> LaurentSeries<C> {
    /// Series with `coeffs[i]` the coefficient of `var^(min_degree + i)`,
    /// known up to degree `order` (pass [`EXACT`] for a polynomial).
    pub fn new(var: &str, min_degree: i64, coeffs: Vec<C>, order: i64) -> Self {
        let mut s = LaurentSeries { var: var.into(), min_degree, coeffs, order };
        s.normalize();
        s
    }

    pub fn constant(c: C) -> Self {
        Self::new(DEFAULT_VAR, 0, vec![c], EXACT)
    }

    /// `c * var^k`, exact.
    pub fn monomial(var: &str, c: C, k: i64) -> Self {
        Self::new(var, k, vec![c], EXACT)
    }

    /// Exact zero known only up to `order`: `O(var^(order+1))`.
    pub fn big_o(var: &str, order: i64) -> Self {
        Self::new(var, 0, Vec::new(), order)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order == EXACT
    }

    /// Lowest stored degree; meaningless for a zero series.
    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    /// Valuation: lowest degree that may be nonzero.
    pub fn valuation(&self) -> i64 {
        if self.coeffs.is_empty() {
            sat_add(self.order, 1)
        } else {
            self.min_degree
        }
    }

    /// Coefficient of `var^k`, or `None` when `k` exceeds the known order.
    pub fn coeff(&self, k: i64) -> Option<C> {
        if k > self.order {
            return None;
        }
        if k < self.min_degree {
            return Some(C::zero());
        }
        Some(self.coeffs.get((k - self.min_degree) as usize).cloned().unwrap_or_else(C::zero))
    }

    /// Stored `(degree, coefficient)` pairs, all nonzero.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        let m = self.min_degree;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (m + i as i64, c))
    }

    /// Drop everything above `order` (never raises the order).
    pub fn truncate(mut self, order: i64) -> Self {
        self.order = self.order.min(order);
        self.normalize();
        self
    }

    /// Map every coefficient, keeping degrees and order.
    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let coeffs = self.coeffs.iter().map(f).collect();
        let mut s = LaurentSeries { var: self.var.clone(), min_degree: self.min_degree, coeffs, order: self.order };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.order != EXACT {
            let keep = (self.order - self.min_degree + 1).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.min_degree = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_degree += lead as i64;
        }
    }

    fn is_constant_exact(&self) -> bool {
        self.order == EXACT && (self.coeffs.is_empty() || (self.min_degree == 0 && self.coeffs.len() == 1))
    }

    fn merged_var(&self, other: &Self) -> Arc<str> {
        if self.is_constant_exact() {
            other.var.clone()
        } else {
            debug_assert!(other.is_constant_exact() || self.var == other.var, "series variables differ");
            self.var.clone()
        }
    }

    /// Multiplicative inverse.
    ///
    /// The leading coefficient must be a unit of `C`. Multi-term exact inputs
    /// have infinite inverses and are refused; give them a finite order first.
    pub fn invert(&self) -> Result<Self> {
        let lead = self
            .coeffs
            .first()
            .ok_or_else(|| Error::DivisionByNonUnit("0".into()))?;
        let inv_lead = lead
            .try_inverse()
            .ok_or_else(|| Error::NonInvertibleLeadingCoefficient(lead.to_string()))?;
        let v = self.min_degree;
        let rel = if self.order == EXACT {
            if self.coeffs.len() > 1 {
                return Err(Error::UnboundedSeries);
            }
            0
        } else {
            self.order - v
        };
        // b_0 = 1/a_0, b_k = -(1/a_0) sum_{i=1..k} a_i b_{k-i}
        let mut out: Vec<C> = Vec::with_capacity(rel as usize + 1);
        out.push(inv_lead.clone());
        for k in 1..=rel as usize {
            let mut acc = C::zero();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                acc += self.coeffs[i].clone() * out[k - i].clone();
            }
            out.push(-(inv_lead.clone() * acc));
        }
        let order = if self.order == EXACT { EXACT } else { -v + rel };
        Ok(LaurentSeries::new_shared(self.var.clone(), -v, out, order))
    }

    fn new_shared(var: Arc<str>, min_degree: i64, coeffs: Vec<C>, order: i64) -> Self {
        let mut s = LaurentSeries { var, min_degree, coeffs, order };
        s.normalize();
        s
    }

    fn require_positive(&self) -> Result<()> {
        if !self.coeffs.is_empty() && self.min_degree < 1 {
            return Err(Error::ConstantTermPresent);
        }
        Ok(())
    }

    /// Sum `c_k a^k` for a series with positive valuation.
    pub fn compose(&self, coeffs: &[Rational]) -> Result<Self> {
        self.require_positive()?;
        if self.coeffs.is_empty() {
            let c0 = coeffs.first().cloned().unwrap_or_else(Rational::zero);
            return Ok(Self::new_shared(self.var.clone(), 0, vec![C::from_rational(c0)], self.order));
        }
        if self.order == EXACT {
            return Err(Error::UnboundedSeries);
        }
        let needed = (self.order / self.min_degree).max(0) as usize + 1;
        if coeffs.len() < needed {
            return Err(Error::UnboundedSeries);
        }
        let mut out = Self::new_shared(self.var.clone(), 0, Vec::new(), EXACT);
        let mut power = Self::one();
        for c in coeffs.iter().take(needed) {
            out += power.scale_by(c);
            power = power * self.clone();
        }
        Ok(out.truncate(self.order))
    }

    /// `exp(a)` for `a` of valuation at least 1.
    pub fn exp(&self) -> Result<Self> {
        let terms = self.terms_needed()?;
        let c: Vec<Rational> = (0..terms).map(|k| factorial(k).recip()).collect();
        self.compose(&c)
    }

    /// `log(a)` for `a = 1 + O(var)`.
    pub fn log(&self) -> Result<Self> {
        let b = self.clone() - Self::one();
        let terms = b.terms_needed()?;
        let c: Vec<Rational> = (0..terms)
            .map(|k| match k {
                0 => Rational::zero(),
                _ if k % 2 == 1 => int(k as i64).recip(),
                _ => -int(k as i64).recip(),
            })
            .collect();
        b.compose(&c)
    }

    fn terms_needed(&self) -> Result<usize> {
        self.require_positive()?;
        if self.coeffs.is_empty() {
            return Ok(1);
        }
        if self.order == EXACT {
            return Err(Error::UnboundedSeries);
        }
        Ok((self.order / self.min_degree).max(0) as usize + 1)
    }

    /// Equality of all coefficients both operands know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let top = self.order.min(other.order);
        let lo = self.valuation().min(other.valuation());
        if top == EXACT {
            return self == other;
        }
        (lo..=top).all(|k| self.coeff(k) == other.coeff(k))
    }

    pub fn scale_by(&self, q: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(q))
    }
}

impl<C: Coeff> PartialEq for LaurentSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.coeffs == other.coeffs
            && (self.coeffs.is_empty() || self.min_degree == other.min_degree)
    }
}

impl<C: Coeff> fmt::Display for LaurentSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{k}", self.var)?,
            }
        }
        if self.order != EXACT {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "O({}^{})", self.var, self.order + 1)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<C: Coeff> Zero for LaurentSeries<C> {
    fn zero() -> Self {
        LaurentSeries { var: DEFAULT_VAR.into(), min_degree: 0, coeffs: Vec::new(), order: EXACT }
    }

    /// Only the exact zero counts; `O(x^k)` is unknown, not zero.
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.order == EXACT
    }
}

impl<C: Coeff> One for LaurentSeries<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Coeff> Neg for LaurentSeries<C> {
    type Output = Self;

    fn neg(self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<C: Coeff> Add for LaurentSeries<C> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let var = self.merged_var(&rhs);
        let order = self.order.min(rhs.order);
        if self.coeffs.is_empty() {
            return Self::new_shared(var, rhs.min_degree, rhs.coeffs, order);
        }
        if rhs.coeffs.is_empty() {
            return Self::new_shared(var, self.min_degree, self.coeffs, order);
        }
        let lo = self.min_degree.min(rhs.min_degree);
        let hi = (self.min_degree + self.coeffs.len() as i64).max(rhs.min_degree + rhs.coeffs.len() as i64);
        let mut coeffs = vec![C::zero(); (hi - lo) as usize];
        for (i, c) in self.coeffs.into_iter().enumerate() {
            coeffs[(self.min_degree - lo) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.into_iter().enumerate() {
            coeffs[(rhs.min_degree - lo) as usize + i] += c;
        }
        Self::new_shared(var, lo, coeffs, order)
    }
}

impl<C: Coeff> Sub for LaurentSeries<C> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Coeff> AddAssign for LaurentSeries<C> {
    fn add_assign(&mut self, rhs: Self) {
        *self = std::mem::take(self) + rhs;
    }
}

impl<C: Coeff> SubAssign for LaurentSeries<C> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = std::mem::take(self) - rhs;
    }
}

impl<C: Coeff> Default for LaurentSeries<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Mul for LaurentSeries<C> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let var = self.merged_var(&rhs);
        let order = sat_add(self.order, rhs.valuation()).min(sat_add(rhs.order, self.valuation()));
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::new_shared(var, 0, Vec::new(), order);
        }
        let lo = self.min_degree + rhs.min_degree;
        let mut len = self.coeffs.len() + rhs.coeffs.len() - 1;
        if order != EXACT {
            len = len.min((order - lo + 1).max(0) as usize);
        }
        let mut coeffs = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] += a.clone() * b.clone();
                }
            }
        }
        Self::new_shared(var, lo, coeffs, order)
    }
}

impl<C: Coeff> Coeff for LaurentSeries<C> {
    fn from_rational(q: Rational) -> Self {
        Self::constant(C::from_rational(q))
    }

    fn to_rational(&self) -> Option<Rational> {
        if !self.is_constant_exact() {
            return None;
        }
        match self.coeffs.first() {
            None => Some(Rational::zero()),
            Some(c) => c.to_rational(),
        }
    }

    fn scale(&self, q: &Rational) -> Self {
        self.scale_by(q)
    }

    fn try_inverse(&self) -> Option<Self> {
        self.invert().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Poly};
    use proptest::prelude::*;

    type L = LaurentSeries<Poly>;

    fn q(n: i64, d: i64) -> Poly {
        Poly::constant(rat(n, d))
    }

    fn eps_s(order: i64) -> L {
        L::new("eps", 1, vec![Poly::var("s")], order)
    }

    #[test]
    fn geometric_inverse() {
        let a = L::new("eps", 0, vec![q(1, 1), q(1, 1)], 3);
        let inv = a.invert().unwrap();
        assert_eq!(inv, L::new("eps", 0, vec![q(1, 1), q(-1, 1), q(1, 1), q(-1, 1)], 3));
    }

    #[test]
    fn monomial_inverse_is_exact() {
        let a = L::monomial("eps", Poly::var("s"), 1);
        let inv = a.invert().unwrap();
        assert_eq!(inv, L::monomial("eps", Poly::var_pow("s", -1), -1));
        assert!(inv.is_exact());
    }

    #[test]
    fn non_unit_leading_coefficient() {
        let a = L::new("eps", 0, vec![Poly::var("s") + Poly::one()], 3);
        assert!(matches!(a.invert(), Err(Error::NonInvertibleLeadingCoefficient(_))));
    }

    #[test]
    fn exp_of_eps_s() {
        let e = eps_s(2).exp().unwrap();
        let s = Poly::var("s");
        let want = L::new("eps", 0, vec![q(1, 1), s.clone(), s.pow(2).scale(&rat(1, 2))], 2);
        assert_eq!(e, want);
        assert_eq!(L::big_o("eps", 2).exp().unwrap(), L::new("eps", 0, vec![q(1, 1)], 2));
    }

    #[test]
    fn pole_of_inverse_trig_denominator() {
        // e^(eps s) - 1 = eps s (1 + eps s/2 + ...), built by brute-force series multiplication
        let x = eps_s(6);
        let mut e = L::one();
        let mut power = L::one();
        for k in 1..=6 {
            power = power * x.clone();
            e += power.scale_by(&factorial(k).recip());
        }
        let denom = (e - L::one()).truncate(6);
        let inv = denom.invert().unwrap();
        assert_eq!(inv.min_degree(), -1);
        assert_eq!(inv.coeff(-1).unwrap(), Poly::var_pow("s", -1));
        assert_eq!(inv.coeff(0).unwrap(), q(-1, 2));
        assert_eq!(inv.coeff(1).unwrap(), Poly::var("s").scale(&rat(1, 12)));
        let back = inv * denom;
        assert_eq!(back, L::new("eps", 0, vec![q(1, 1)], back.order()));
        assert!(back.order() >= 4);
    }

    #[test]
    fn log_inverts_exp() {
        let a = eps_s(4);
        assert_eq!(a.exp().unwrap().log().unwrap(), a);
    }

    #[test]
    fn exp_refuses_constant_terms() {
        let a = L::new("eps", 0, vec![q(1, 1)], 3);
        assert_eq!(a.exp(), Err(Error::ConstantTermPresent));
        assert_eq!(L::monomial("eps", q(1, 1), 1).exp(), Err(Error::UnboundedSeries));
    }

    #[test]
    fn product_order_is_pessimistic() {
        let a = L::new("eps", -2, vec![q(1, 1)], 3);
        let b = L::new("eps", 0, vec![q(1, 1), q(2, 1)], 3);
        assert_eq!((a * b).order(), 1);
    }

    fn small_series() -> impl Strategy<Value = L> {
        (-2i64..2, prop::collection::vec(-4i64..5, 0..4)).prop_map(|(m, cs)| {
            L::new("eps", m, cs.into_iter().map(|c| q(c, 1)).collect(), 3)
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_series(), b in small_series(), c in small_series()) {
            prop_assert!((a.clone() * (b.clone() * c.clone())).agrees_with(&((a.clone() * b.clone()) * c.clone())));
            prop_assert!((a.clone() * (b.clone() + c.clone())).agrees_with(&(a.clone() * b.clone() + a.clone() * c.clone())));
            prop_assert_eq!(a.clone() * b.clone(), b * a);
        }

        #[test]
        fn unit_times_inverse_is_one(lead in 1i64..5, sign in prop::bool::ANY, tail in prop::collection::vec(-4i64..5, 0..4), m in -2i64..3) {
            let lead = if sign { lead } else { -lead };
            let mut cs = vec![q(lead, 1)];
            cs.extend(tail.into_iter().map(|c| q(c, 1)));
            let a = L::new("eps", m, cs, m + 4);
            let prod = a.clone() * a.invert().unwrap();
            prop_assert_eq!(prod.coeff(0), Some(q(1, 1)));
            for k in 1..=prod.order() {
                prop_assert_eq!(prod.coeff(k), Some(Poly::zero()));
            }
            prop_assert_eq!(prod.order(), 4);
        }

        #[test]
        fn exp_log_round_trip(cs in prop::collection::vec(-3i64..4, 1..4)) {
            let a = L::new("eps", 1, cs.into_iter().map(|c| q(c, 2)).collect(), 5);
            prop_assert_eq!(a.exp().unwrap().log().unwrap(), a);
        }
    }
}
