use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{factorial, int, rational_sqrt, Rational};
use crate::error::{Error, Result};

/// A scalar function applied to `c + N` with `N` nilpotent (or of positive
/// grade), through its Taylor expansion around the rational point `c`.
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesFn {
    Exp,
    /// Natural logarithm; only expandable around 1.
    Log,
    Inverse,
    /// Principal square root around a perfect rational square.
    Sqrt,
    /// `ln(1 + x) / x = sum (-1)^k x^k / (k+1)`, around 0.
    Log1pOverX,
    /// `sum_k c_k x^k` around 0 with the given coefficients (missing ones are 0).
    Power(Arc<[Rational]>),
}

impl SeriesFn {
    /// The first `terms` Taylor coefficients `f^(k)(center)/k!`.
    pub fn taylor(&self, center: &Rational, terms: usize) -> Result<Vec<Rational>> {
        let irrational = || Error::IrrationalExpansionPoint(format!("{self} at {center}"));
        match self {
            SeriesFn::Exp => {
                if !center.is_zero() {
                    return Err(irrational());
                }
                Ok((0..terms).map(|k| factorial(k).recip()).collect())
            }
            SeriesFn::Log => {
                if !center.is_one() {
                    return Err(irrational());
                }
                Ok((0..terms)
                    .map(|k| match k {
                        0 => Rational::zero(),
                        _ if k % 2 == 1 => int(k as i64).recip(),
                        _ => -int(k as i64).recip(),
                    })
                    .collect())
            }
            SeriesFn::Inverse => {
                if center.is_zero() {
                    return Err(Error::DivisionByNonUnit("0".into()));
                }
                let inv = center.recip();
                let mut out = Vec::with_capacity(terms);
                let mut c = inv.clone();
                for _ in 0..terms {
                    out.push(c.clone());
                    c = -c * &inv;
                }
                Ok(out)
            }
            SeriesFn::Sqrt => {
                let root = rational_sqrt(center).filter(|r| !r.is_zero()).ok_or_else(irrational)?;
                // sqrt(c + x) = root * sum binom(1/2, k) (x/c)^k
                let half = Rational::new(1.into(), 2.into());
                let mut out = Vec::with_capacity(terms);
                let mut binom = Rational::one();
                let mut cpow = Rational::one();
                for k in 0..terms {
                    out.push(&root * &binom / &cpow);
                    binom = binom * (&half - int(k as i64)) / int(k as i64 + 1);
                    cpow *= center;
                }
                Ok(out)
            }
            SeriesFn::Log1pOverX => {
                if !center.is_zero() {
                    return Err(irrational());
                }
                Ok((0..terms)
                    .map(|k| {
                        let c = int(k as i64 + 1).recip();
                        if k % 2 == 0 {
                            c
                        } else {
                            -c
                        }
                    })
                    .collect())
            }
            SeriesFn::Power(coeffs) => {
                if !center.is_zero() {
                    return Err(irrational());
                }
                Ok((0..terms)
                    .map(|k| coeffs.get(k).cloned().unwrap_or_else(Rational::zero))
                    .collect())
            }
        }
    }
}

impl fmt::Display for SeriesFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesFn::Exp => f.write_str("exp"),
            SeriesFn::Log => f.write_str("log"),
            SeriesFn::Inverse => f.write_str("inv"),
            SeriesFn::Sqrt => f.write_str("sqrt"),
            SeriesFn::Log1pOverX => f.write_str("log1p_over_x"),
            SeriesFn::Power(c) => write!(f, "series[{}]", c.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn sqrt_expansion_at_one() {
        let c = SeriesFn::Sqrt.taylor(&rat(1, 1), 4).unwrap();
        assert_eq!(c, vec![rat(1, 1), rat(1, 2), rat(-1, 8), rat(1, 16)]);
    }

    #[test]
    fn sqrt_expansion_at_four() {
        // sqrt(4 + x) = 2 + x/4 - x^2/64 + ...
        let c = SeriesFn::Sqrt.taylor(&rat(4, 1), 3).unwrap();
        assert_eq!(c, vec![rat(2, 1), rat(1, 4), rat(-1, 64)]);
    }

    #[test]
    fn inverse_expansion_at_two() {
        let c = SeriesFn::Inverse.taylor(&rat(2, 1), 3).unwrap();
        assert_eq!(c, vec![rat(1, 2), rat(-1, 4), rat(1, 8)]);
    }

    #[test]
    fn irrational_points_are_refused() {
        assert!(matches!(
            SeriesFn::Sqrt.taylor(&rat(2, 1), 3),
            Err(Error::IrrationalExpansionPoint(_))
        ));
        assert!(matches!(
            SeriesFn::Exp.taylor(&rat(1, 1), 3),
            Err(Error::IrrationalExpansionPoint(_))
        ));
        assert!(SeriesFn::Log.taylor(&rat(2, 1), 3).is_err());
    }
}
