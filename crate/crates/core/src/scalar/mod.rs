//! Exact scalar tower: rationals, Laurent polynomials in named symbols and
//! truncated Laurent series in one distinguished variable.
//!
//! Everything downstream (structure constants, tensors, matrices, PBW
//! elements) is generic over [`Coeff`], so the same code runs with plain
//! rational coefficients or with symbolic parameters such as `eta`, `a1`, `t`.

mod laurent;
mod poly;
mod taylor;

pub use laurent::{LaurentSeries, EXACT};
pub use poly::{Monomial, Poly};
pub use taylor::SeriesFn;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Ring of coefficients used by every exact container in the crate.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + AddAssign
    + SubAssign
{
    fn from_rational(q: Rational) -> Self;

    /// The value as a rational, if it is a known constant.
    fn to_rational(&self) -> Option<Rational>;

    fn scale(&self, q: &Rational) -> Self;

    /// Multiplicative inverse when the value is a unit.
    fn try_inverse(&self) -> Option<Self>;
}

impl Coeff for Rational {
    fn from_rational(q: Rational) -> Self {
        q
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn scale(&self, q: &Rational) -> Self {
        self * q
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub(crate) fn factorial(k: usize) -> Rational {
    (1..=k).fold(Rational::one(), |acc, i| acc * int(i as i64))
}

/// Canonical text for a rational: `3`, `-1/2`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse `p`, `-p`, or `p/q` with decimal integers.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    crate::parse::rational(s)
}
