//! Sparse exact matrices on a Z2-graded space.
//!
//! The graded Kronecker product uses the entry rule
//! `(A (x) B)_{(i,k),(j,l)} = (-1)^{p(B_kl) p_j} A_ij B_kl`, which realises
//! `(A (x) B)(v (x) w) = (-1)^{p(B) p(v)} Av (x) Bw`. The product rule
//! `(A (x) B)(C (x) D) = (-1)^{p(B) p(C)} AC (x) BD` then follows and is pinned
//! by tests.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{int, Coeff, Rational, SeriesFn};

#[derive(Clone, Debug, PartialEq)]
pub struct GradedMatrix<C = Rational> {
    parities: Arc<[u8]>,
    rows: Vec<Vec<(usize, C)>>,
}

impl<C: Coeff> GradedMatrix<C> {
    pub fn zero(parities: Arc<[u8]>) -> Self {
        let n = parities.len();
        GradedMatrix { parities, rows: vec![Vec::new(); n] }
    }

    pub fn identity(parities: Arc<[u8]>) -> Self {
        let n = parities.len();
        GradedMatrix { parities, rows: (0..n).map(|i| vec![(i, C::one())]).collect() }
    }

    /// Build from `(row, col, value)` triples; repeated positions add up.
    pub fn from_entries(parities: Arc<[u8]>, entries: impl IntoIterator<Item = (usize, usize, C)>) -> Result<Self> {
        let n = parities.len();
        let mut acc: Vec<std::collections::BTreeMap<usize, C>> = vec![Default::default(); n];
        for (i, j, c) in entries {
            if i >= n || j >= n {
                return Err(Error::DimensionMismatch { left: i.max(j), right: n });
            }
            let slot = acc[i].entry(j).or_insert_with(C::zero);
            *slot += c;
        }
        let rows = acc
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        Ok(GradedMatrix { parities, rows })
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn parities(&self) -> &Arc<[u8]> {
        &self.parities
    }

    pub fn get(&self, i: usize, j: usize) -> C {
        self.rows[i]
            .iter()
            .find(|(c, _)| *c == j)
            .map_or_else(C::zero, |(_, v)| v.clone())
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &C)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, c)| (i, *j, c)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    /// Operator parity, `None` when entries of both parities occur. The zero
    /// matrix reports even.
    pub fn parity(&self) -> Option<u8> {
        let mut seen: Option<u8> = None;
        for (i, j, _) in self.entries() {
            let p = (self.parities[i] + self.parities[j]) % 2;
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(seen.unwrap_or(0))
    }

    /// Even and odd parts.
    pub fn split_parity(&self) -> (Self, Self) {
        let mut even = Self::zero(self.parities.clone());
        let mut odd = Self::zero(self.parities.clone());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row {
                let target = if (self.parities[i] + self.parities[*j]) % 2 == 0 { &mut even } else { &mut odd };
                target.rows[i].push((*j, c.clone()));
            }
        }
        (even, odd)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> GradedMatrix<D> {
        GradedMatrix {
            parities: self.parities.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| {
                    r.iter()
                        .filter_map(|(j, c)| {
                            let d = f(c);
                            (!d.is_zero()).then_some((*j, d))
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(q))
    }

    pub fn scale_by(&self, c: &C) -> Self {
        self.map_coeffs(|x| x.clone() * c.clone())
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.parities != other.parities {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| merge_rows(a, b, false))
            .collect();
        Ok(GradedMatrix { parities: self.parities.clone(), rows })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| merge_rows(a, b, true))
            .collect();
        Ok(GradedMatrix { parities: self.parities.clone(), rows })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let n = self.dim();
        let mut scratch: Vec<Option<C>> = vec![None; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut rows = Vec::with_capacity(n);
        for row in &self.rows {
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    let prod = a.clone() * b.clone();
                    match &mut scratch[*j] {
                        Some(x) => *x += prod,
                        slot @ None => {
                            *slot = Some(prod);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for j in touched.drain(..) {
                if let Some(x) = scratch[j].take() {
                    if !x.is_zero() {
                        out.push((j, x));
                    }
                }
            }
            rows.push(out);
        }
        Ok(GradedMatrix { parities: self.parities.clone(), rows })
    }

    /// `[A, B] = AB - (-1)^{p(A)p(B)} BA` for homogeneous operands.
    pub fn graded_commutator(&self, other: &Self) -> Result<Self> {
        let pa = self.parity().ok_or(Error::HeterogeneousOperand)?;
        let pb = other.parity().ok_or(Error::HeterogeneousOperand)?;
        let ab = self.try_mul(other)?;
        let ba = other.try_mul(self)?;
        if pa * pb == 1 {
            ab.try_add(&ba)
        } else {
            ab.try_sub(&ba)
        }
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut out = Self::identity(self.parities.clone());
        for _ in 0..k {
            out = out.try_mul(self)?;
        }
        Ok(out)
    }

    pub fn trace(&self) -> C {
        let mut t = C::zero();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row {
                if *j == i {
                    t += c.clone();
                }
            }
        }
        t
    }

    /// Supertrace `sum (-1)^{p_i} A_ii`.
    pub fn supertrace(&self) -> C {
        let mut t = C::zero();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row {
                if *j == i {
                    if self.parities[i] == 1 {
                        t -= c.clone();
                    } else {
                        t += c.clone();
                    }
                }
            }
        }
        t
    }

    /// Certify nilpotency by repeated squaring: `N^(2^k) = 0` with `2^k >= dim`.
    pub fn certify_nilpotent(&self) -> Result<()> {
        let mut p = self.clone();
        let mut reach = 1;
        while reach < self.dim() {
            p = p.try_mul(&p)?;
            reach *= 2;
        }
        if p.is_zero() {
            Ok(())
        } else {
            Err(Error::NotNilpotent)
        }
    }

    /// Smallest `k` with `N^k = 0`.
    pub fn nilpotency_index(&self) -> Result<usize> {
        self.certify_nilpotent()?;
        let mut p = Self::identity(self.parities.clone());
        for k in 0..=self.dim() {
            if p.is_zero() {
                return Ok(k);
            }
            p = p.try_mul(self)?;
        }
        Err(Error::NotNilpotent)
    }

    /// `f(M)` for `M = c I + N` with `N` nilpotent, by the Taylor expansion of
    /// `f` around the rational `c = tr(M)/dim`.
    pub fn series(&self, f: &SeriesFn) -> Result<Self> {
        let n = self.dim();
        let center_c = self.trace().scale(&int(n as i64).recip());
        let center = center_c.to_rational().ok_or(Error::NotNilpotent)?;
        let shift = Self::identity(self.parities.clone()).scale(&center);
        let nil = self.try_sub(&shift)?;
        nil.certify_nilpotent()?;
        let coeffs = f.taylor(&center, n + 1)?;
        let mut out = Self::zero(self.parities.clone());
        let mut power = Self::identity(self.parities.clone());
        for c in &coeffs {
            if power.is_zero() {
                break;
            }
            out = out.try_add(&power.scale(c))?;
            power = power.try_mul(&nil)?;
        }
        Ok(out)
    }

    /// Graded Kronecker product; `other` must be parity-homogeneous.
    pub fn graded_kron(&self, other: &Self) -> Result<Self> {
        other.parity().ok_or(Error::HeterogeneousOperand)?;
        Ok(self.graded_kron_split(other))
    }

    /// Graded Kronecker product of arbitrary operands, equal to the sum over
    /// the homogeneous parts of `other`.
    pub fn graded_kron_split(&self, other: &Self) -> Self {
        let (na, nb) = (self.dim(), other.dim());
        let parities: Arc<[u8]> = (0..na * nb)
            .map(|x| (self.parities[x / nb] + other.parities[x % nb]) % 2)
            .collect();
        let mut rows = vec![Vec::new(); na * nb];
        for (i, arow) in self.rows.iter().enumerate() {
            for (k, brow) in other.rows.iter().enumerate() {
                let out = &mut rows[i * nb + k];
                for (j, a) in arow {
                    for (l, b) in brow {
                        let pb = (other.parities[k] + other.parities[*l]) % 2;
                        let v = a.clone() * b.clone();
                        let v = if pb * self.parities[*j] == 1 { -v } else { v };
                        out.push((j * nb + l, v));
                    }
                }
            }
        }
        GradedMatrix { parities, rows }
    }

    /// `I (x) .. (x) M (x) .. (x) I` with `M` in slot `leg` of `legs`.
    pub fn embed(&self, leg: usize, legs: usize) -> Self {
        let id = Self::identity(self.parities.clone());
        let mut out: Option<Self> = None;
        for slot in 0..legs {
            let piece = if slot == leg { self } else { &id };
            out = Some(match out {
                None => piece.clone(),
                Some(acc) => acc.graded_kron_split(piece),
            });
        }
        out.unwrap_or_else(|| GradedMatrix { parities: Arc::from(vec![0u8]), rows: vec![vec![(0, C::one())]] })
    }
}

impl<C: Coeff> GradedMatrix<C> {
    /// Graded swap `P(v (x) w) = (-1)^{p(v)p(w)} w (x) v` on `V (x) V`.
    pub fn graded_swap(parities: &Arc<[u8]>) -> Self {
        let n = parities.len();
        let big: Arc<[u8]> = (0..n * n).map(|x| (parities[x / n] + parities[x % n]) % 2).collect();
        let entries = (0..n).flat_map(|a| {
            (0..n).map(move |b| {
                let v = if parities[a] * parities[b] == 1 { -C::one() } else { C::one() };
                (b * n + a, a * n + b, v)
            })
        });
        Self::from_entries(big, entries).expect("in range")
    }

    /// Conjugate a two-leg operator by the graded swap.
    pub fn flip_legs(&self, base: &Arc<[u8]>) -> Result<Self> {
        let p = Self::graded_swap(base);
        p.try_mul(self)?.try_mul(&p)
    }

    /// Place a two-leg operator on `V (x) V` into legs `(i, j)` of
    /// `V (x) V (x) V`.
    pub fn embed_pair(&self, base: &Arc<[u8]>, i: usize, j: usize) -> Result<Self> {
        if i > j {
            return self.flip_legs(base)?.embed_pair(base, j, i);
        }
        let id = Self::identity(base.clone());
        match (i, j) {
            (0, 1) => Ok(self.graded_kron_split(&id)),
            (1, 2) => Ok(id.graded_kron_split(self)),
            (0, 2) => {
                let p23 = id.graded_kron_split(&Self::graded_swap(base));
                p23.try_mul(&self.graded_kron_split(&id))?.try_mul(&p23)
            }
            _ => Err(Error::LegMismatch { left: j + 1, right: 3 }),
        }
    }
}

impl<C: Coeff> GradedMatrix<C> {
    /// Drop entries `(i, j)` whose weight difference `w_i - w_j` exceeds
    /// `bound`; the matrix image of truncating by grade.
    pub fn truncate_grade(&self, weights: &[i32], bound: i32) -> Self {
        let entries = self
            .entries()
            .filter(|(i, j, _)| weights[*i] - weights[*j] <= bound)
            .map(|(i, j, c)| (i, j, c.clone()));
        Self::from_entries(self.parities.clone(), entries).expect("in range")
    }
}

/// Coordinate weights on `V^{(x) legs}` from those on `V`, in Kronecker order.
pub fn tensor_weights(base: &[i32], legs: usize) -> Vec<i32> {
    let mut out = vec![0];
    for _ in 0..legs {
        out = out.iter().flat_map(|w| base.iter().map(move |b| w + b)).collect();
    }
    out
}

fn merge_rows<C: Coeff>(a: &[(usize, C)], b: &[(usize, C)], negate_b: bool) -> Vec<(usize, C)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let nb = |c: &C| if negate_b { -c.clone() } else { c.clone() };
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, nb(&b[j].1)));
            j += 1;
        } else {
            let v = a[i].1.clone() + nb(&b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl<C: Coeff> fmt::Display for GradedMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            let row: Vec<String> = (0..self.dim()).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn grading() -> Arc<[u8]> {
        Arc::from(vec![0u8, 1, 0])
    }

    fn homogeneous(parity: u8, vals: Vec<i64>) -> GradedMatrix {
        let g = grading();
        let mut entries = Vec::new();
        let mut it = vals.into_iter();
        for i in 0..3 {
            for j in 0..3 {
                if (g[i] + g[j]) % 2 == parity {
                    entries.push((i, j, rat(it.next().unwrap_or(0), 1)));
                }
            }
        }
        GradedMatrix::from_entries(g, entries).unwrap()
    }

    fn hom_strategy() -> impl Strategy<Value = GradedMatrix> {
        (0u8..2, prop::collection::vec(-2i64..3, 5)).prop_map(|(p, v)| homogeneous(p, v))
    }

    #[test]
    fn identity_kron_identity() {
        let i = GradedMatrix::<Rational>::identity(grading());
        let k = i.graded_kron(&i).unwrap();
        assert_eq!(k, GradedMatrix::identity(k.parities().clone()));
        assert_eq!(k.dim(), 9);
    }

    #[test]
    fn heterogeneous_operand_is_refused() {
        let a = homogeneous(0, vec![1; 5]).try_add(&homogeneous(1, vec![1; 4])).unwrap();
        assert_eq!(a.parity(), None);
        assert_eq!(a.graded_kron(&a), Err(Error::HeterogeneousOperand));
        let (e, o) = a.split_parity();
        assert_eq!(a.graded_kron_split(&a), a.graded_kron_split(&e).try_add(&a.graded_kron_split(&o)).unwrap());
    }

    #[test]
    fn nilpotent_series() {
        let n = GradedMatrix::from_entries(grading(), vec![(0, 1, rat(1, 1)), (1, 2, rat(1, 1))]).unwrap();
        assert_eq!(n.nilpotency_index().unwrap(), 3);
        let e = n.series(&SeriesFn::Exp).unwrap();
        let e_inv = n.scale(&rat(-1, 1)).series(&SeriesFn::Exp).unwrap();
        assert_eq!(e.try_mul(&e_inv).unwrap(), GradedMatrix::identity(grading()));
        let log = e.series(&SeriesFn::Log).unwrap();
        assert_eq!(log, n);
        let full = GradedMatrix::from_entries(grading(), vec![(0, 1, rat(1, 1)), (1, 0, rat(1, 1))]).unwrap();
        assert_eq!(full.series(&SeriesFn::Exp), Err(Error::NotNilpotent));
    }

    #[test]
    fn sqrt_needs_rational_center() {
        let two = GradedMatrix::<Rational>::identity(grading()).scale(&rat(2, 1));
        assert!(matches!(two.series(&SeriesFn::Sqrt), Err(Error::IrrationalExpansionPoint(_))));
    }

    proptest! {
        #[test]
        fn kron_product_rule(a in hom_strategy(), b in hom_strategy(), c in hom_strategy(), d in hom_strategy()) {
            let lhs = a.graded_kron(&b).unwrap().try_mul(&c.graded_kron(&d).unwrap()).unwrap();
            let rhs = a.try_mul(&c).unwrap().graded_kron(&b.try_mul(&d).unwrap()).unwrap();
            let sign = b.parity().unwrap() * c.parity().unwrap();
            let rhs = if sign == 1 { rhs.scale(&rat(-1, 1)) } else { rhs };
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn kron_is_associative(a in hom_strategy(), b in hom_strategy(), c in hom_strategy()) {
            let l = a.graded_kron(&b).unwrap().graded_kron(&c).unwrap();
            let r = a.graded_kron(&b.graded_kron(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn commutator_parity_adds(a in hom_strategy(), b in hom_strategy()) {
            let c = a.graded_commutator(&b).unwrap();
            let p = (a.parity().unwrap() + b.parity().unwrap()) % 2;
            prop_assert!(c.is_zero() || c.parity() == Some(p));
        }
    }
}
