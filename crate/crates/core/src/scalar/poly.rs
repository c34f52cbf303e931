use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::{fmt_rational, Coeff, Rational};

/// A monomial in named symbols; exponents may be negative, zero exponents are
/// never stored and the symbols are kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(String, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str, exp: i32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(name.to_string(), exp)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, name: &str) -> i32 {
        self.0
            .iter()
            .find(|(v, _)| v == name)
            .map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&str, i32)> {
        self.0.iter().map(|(v, e)| (v.as_str(), *e))
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: Vec<(String, i32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let take_left = j >= other.0.len() || (i < self.0.len() && self.0[i].0 < other.0[j].0);
            let take_right = i >= self.0.len() || (j < other.0.len() && other.0[j].0 < self.0[i].0);
            if take_left {
                out.push(self.0[i].clone());
                i += 1;
            } else if take_right {
                out.push(other.0[j].clone());
                j += 1;
            } else {
                let e = self.0[i].1 + other.0[j].1;
                if e != 0 {
                    out.push((self.0[i].0.clone(), e));
                }
                i += 1;
                j += 1;
            }
        }
        Monomial(out)
    }

    fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|(v, e)| (v.clone(), -e)).collect())
    }

    fn without(&self, name: &str) -> Monomial {
        Monomial(self.0.iter().filter(|(v, _)| v != name).cloned().collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate Laurent polynomial with rational coefficients.
///
/// Symbols may carry negative exponents, so every monomial is a unit; this is
/// what lets `c/s` live in the same ring as `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn constant(q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Monomial::one(), q);
        }
        Poly { terms }
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(Rational::one(), Monomial::var(name, 1))
    }

    pub fn var_pow(name: &str, exp: i32) -> Self {
        Self::monomial(Rational::one(), Monomial::var(name, exp))
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_add(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Collect the terms carrying `name^exp`, with that factor removed.
    pub fn coeff_of(&self, name: &str, exp: i32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.exponent(name) == exp {
                out.insert_add(m.without(name), c.clone());
            }
        }
        out
    }

    /// Exponent range of `name` over the stored terms.
    pub fn degree_range(&self, name: &str) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m.exponent(name));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Substitute `name -> value`; `value` must be a unit when negative
    /// exponents of `name` occur.
    pub fn substitute(&self, name: &str, value: &Poly) -> Option<Poly> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(name);
            let base = if e >= 0 {
                value.pow(e as u32)
            } else {
                value.try_inverse()?.pow((-e) as u32)
            };
            out += Poly::monomial(c.clone(), m.without(name)) * base;
        }
        Some(out)
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc * self.clone())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                f.write_str(&fmt_rational(c))?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(c))?;
            }
        }
        Ok(())
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Rational::one())
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl AddAssign for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.insert_add(m, c);
        }
    }
}

impl SubAssign for Poly {
    fn sub_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.insert_add(m, -c);
        }
    }
}

impl Add for Poly {
    type Output = Poly;

    fn add(mut self, rhs: Poly) -> Poly {
        self += rhs;
        self
    }
}

impl Sub for Poly {
    type Output = Poly;

    fn sub(mut self, rhs: Poly) -> Poly {
        self -= rhs;
        self
    }
}

impl Mul for Poly {
    type Output = Poly;

    fn mul(self, rhs: Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.insert_add(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Coeff for Poly {
    fn from_rational(q: Rational) -> Self {
        Poly::constant(q)
    }

    fn to_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Poly::zero();
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = &*c * q;
        }
        out
    }

    /// Only single-term polynomials are units.
    fn try_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        Some(Poly::monomial(c.recip(), m.inverse()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-3i64..4, 1i64..4, -2i32..3, -2i32..3), 0..4).prop_map(|ts| {
            ts.into_iter().fold(Poly::zero(), |acc, (n, d, es, et)| {
                let m = Monomial::var("s", es).mul(&Monomial::var("t", et));
                acc + Poly::monomial(rat(n, d), m)
            })
        })
    }

    #[test]
    fn symbols_cancel_to_constants() {
        let s = Poly::var("s");
        let inv = s.try_inverse().unwrap();
        assert_eq!(s * inv, Poly::one());
    }

    #[test]
    fn sums_are_not_units() {
        assert!((Poly::var("s") + Poly::one()).try_inverse().is_none());
    }

    #[test]
    fn coefficient_extraction() {
        let eta = Poly::var("eta");
        let p = eta.clone() * Poly::var("a") + eta.pow(2).scale(&rat(1, 2)) + Poly::one();
        assert_eq!(p.coeff_of("eta", 1), Poly::var("a"));
        assert_eq!(p.coeff_of("eta", 0), Poly::one());
        assert_eq!(p.degree_range("eta"), Some((0, 2)));
    }

    #[test]
    fn substitution() {
        let p = Poly::var("x").pow(2) + Poly::var_pow("x", -1);
        let two = Poly::constant(rat(2, 1));
        assert_eq!(p.substitute("x", &two).unwrap(), Poly::constant(rat(9, 2)));
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(a.clone() * (b.clone() * c.clone()), (a.clone() * b.clone()) * c.clone());
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            prop_assert!((a.clone() - a).is_zero());
        }
    }
}
