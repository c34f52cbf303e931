//! Lie superalgebras as structure-constant tables read off a faithful matrix
//! representation.

mod osp;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::repmat::GradedMatrix;
use crate::scalar::{fmt_rational, int, Coeff, Rational};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Sparse linear combination of basis elements, tagged with its algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<C = Rational> {
    algebra: u64,
    terms: BTreeMap<usize, C>,
}

impl<C: Coeff> Element<C> {
    pub fn terms(&self) -> &BTreeMap<usize, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, idx: usize) -> C {
        self.terms.get(&idx).cloned().unwrap_or_else(C::zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.algebra != other.algebra {
            return Err(Error::MixedAlgebra);
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_term(&mut out.terms, *k, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (*k, c.scale(q)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Element { algebra: self.algebra, terms }
    }
}

pub(crate) fn add_term<K: Ord, C: Coeff>(map: &mut BTreeMap<K, C>, k: K, c: C) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
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

/// The defining representation.
#[derive(Clone, Debug)]
pub struct Representation {
    pub parities: Arc<[u8]>,
    pub matrices: Vec<GradedMatrix>,
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.parities.len()
    }
}

/// A triple `(a, b, c)` of basis indices where graded Jacobi fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub a: String,
    pub b: String,
    pub c: String,
}

/// Finite-dimensional Lie superalgebra with a fixed ordered basis.
#[derive(Clone, Debug)]
pub struct SuperAlgebra {
    id: u64,
    rank: usize,
    labels: Vec<String>,
    aliases: Vec<Option<String>>,
    index: HashMap<String, usize>,
    parity: Vec<u8>,
    roots: Vec<Option<Vec<i32>>>,
    cartan: Vec<usize>,
    brackets: Vec<Vec<Vec<(usize, Rational)>>>,
}

/// Build osp(1|2n) together with its defining representation.
pub fn build_osp(n: usize) -> (SuperAlgebra, Representation) {
    assert!(n >= 1, "osp(1|2n) needs n >= 1");
    let gens = osp::generators(n);
    let parities = osp::grading(n);
    let matrices: Vec<GradedMatrix> = gens
        .iter()
        .map(|g| GradedMatrix::from_entries(parities.clone(), g.entries.clone()).expect("entries in range"))
        .collect();
    let labels: Vec<String> = gens.iter().map(|g| g.label.clone()).collect();
    let aliases: Vec<Option<String>> = gens.iter().map(|g| g.alias.clone()).collect();
    let parity: Vec<u8> = gens.iter().map(|g| g.parity).collect();
    let roots: Vec<Option<Vec<i32>>> = gens.iter().map(|g| g.root.clone()).collect();
    let cartan = (0..gens.len()).filter(|&i| roots[i].is_none()).collect();
    let brackets = read_off_brackets(&matrices, &parity);
    let alg = SuperAlgebra::assemble(n, labels, aliases, parity, roots, cartan, brackets);
    (alg, Representation { parities, matrices })
}

/// Express every graded commutator of basis matrices in the basis.
fn read_off_brackets(matrices: &[GradedMatrix], parity: &[u8]) -> Vec<Vec<Vec<(usize, Rational)>>> {
    let dim = matrices.len();
    let cells = matrices[0].dim() * matrices[0].dim();
    let flat = |m: &GradedMatrix| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); cells];
        for (i, j, c) in m.entries() {
            v[i * m.dim() + j] = c.clone();
        }
        v
    };
    // columns = basis matrices; solve B x = target by elimination on [B | t]
    let basis_cols: Vec<Vec<Rational>> = matrices.iter().map(flat).collect();
    let mut out = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let comm = matrices[a].graded_commutator(&matrices[b]).expect("homogeneous generators");
            if comm.is_zero() {
                continue;
            }
            let t = flat(&comm);
            let mut aug: Vec<Vec<Rational>> = (0..cells)
                .map(|r| {
                    let mut row: Vec<Rational> = basis_cols.iter().map(|c| c[r].clone()).collect();
                    row.push(t[r].clone());
                    row
                })
                .collect();
            let pivots = linalg::rref(&mut aug);
            assert!(!pivots.contains(&dim), "bracket leaves the span of the basis");
            let mut combo = Vec::new();
            for (row, &p) in pivots.iter().enumerate() {
                let c = aug[row][dim].clone();
                if !c.is_zero() {
                    combo.push((p, c));
                }
            }
            combo.sort_by_key(|(k, _)| *k);
            debug_assert!(combo.iter().all(|(k, _)| parity[*k] == (parity[a] + parity[b]) % 2));
            out[a][b] = combo;
        }
    }
    out
}

impl SuperAlgebra {
    fn assemble(
        rank: usize,
        labels: Vec<String>,
        aliases: Vec<Option<String>>,
        parity: Vec<u8>,
        roots: Vec<Option<Vec<i32>>>,
        cartan: Vec<usize>,
        brackets: Vec<Vec<Vec<(usize, Rational)>>>,
    ) -> Self {
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            index.insert(l.clone(), i);
        }
        for (i, a) in aliases.iter().enumerate() {
            if let Some(a) = a {
                index.insert(a.clone(), i);
            }
        }
        SuperAlgebra {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            rank,
            labels,
            aliases,
            index,
            parity,
            roots,
            cartan,
            brackets,
        }
    }

    /// Rebuild from raw tables (used by the dump reader). Validation of the
    /// tables is the caller's job.
    pub(crate) fn from_tables(
        rank: usize,
        labels: Vec<String>,
        parity: Vec<u8>,
        roots: Vec<Option<Vec<i32>>>,
        brackets: Vec<Vec<Vec<(usize, Rational)>>>,
    ) -> Self {
        let gens = if rank >= 1 { osp::generators(rank) } else { Vec::new() };
        let standard = gens.len() == labels.len() && gens.iter().zip(&labels).all(|(g, l)| &g.label == l);
        let aliases = if standard {
            gens.into_iter().map(|g| g.alias).collect()
        } else {
            vec![None; labels.len()]
        };
        let cartan = (0..labels.len()).filter(|&i| roots[i].is_none()).collect();
        Self::assemble(rank, labels, aliases, parity, roots, cartan, brackets)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, idx: usize) -> &str {
        &self.labels[idx]
    }

    pub fn alias(&self, idx: usize) -> Option<&str> {
        self.aliases[idx].as_deref()
    }

    pub fn parity(&self, idx: usize) -> u8 {
        self.parity[idx]
    }

    pub fn root(&self, idx: usize) -> Option<&[i32]> {
        self.roots[idx].as_deref()
    }

    /// Eigenvalue of `ad(H_1 + .. + H_n)`: the sum of the root coordinates.
    pub fn grade(&self, idx: usize) -> i32 {
        self.roots[idx].as_ref().map_or(0, |r| r.iter().sum())
    }

    pub fn cartan(&self) -> &[usize] {
        &self.cartan
    }

    pub fn is_positive(&self, idx: usize) -> bool {
        self.roots[idx]
            .as_ref()
            .and_then(|r| r.iter().find(|&&c| c != 0))
            .is_some_and(|&c| c > 0)
    }

    pub fn positive_roots(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.is_positive(i)).collect()
    }

    /// Basis index whose root is the negative of `idx`'s.
    pub fn opposite(&self, idx: usize) -> Option<usize> {
        let r = self.roots[idx].as_ref()?;
        let neg: Vec<i32> = r.iter().map(|c| -c).collect();
        (0..self.dim()).find(|&j| self.roots[j].as_ref() == Some(&neg))
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Index of an osp(1|4) name such as `X+`; requires the aliases.
    pub fn osp4(&self, label: &str) -> Result<usize> {
        if self.rank != 2 {
            return Err(Error::MissingAlias(label.to_string()));
        }
        self.index.get(label).copied().ok_or_else(|| Error::MissingAlias(label.to_string()))
    }

    /// `[e_a, e_b]` as a sparse combination.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        &self.brackets[a][b]
    }

    /// Overwrite one structure constant pair (keeps graded antisymmetry).
    pub fn set_bracket(&mut self, a: usize, b: usize, value: Vec<(usize, Rational)>) {
        let sign = if self.parity[a] * self.parity[b] == 1 { int(1) } else { int(-1) };
        self.brackets[b][a] = value.iter().map(|(k, c)| (*k, c * &sign)).collect();
        self.brackets[a][b] = value;
    }

    pub fn basis_element(&self, idx: usize) -> Element {
        Element { algebra: self.id, terms: BTreeMap::from([(idx, Rational::one())]) }
    }

    pub fn element(&self, terms: impl IntoIterator<Item = (usize, Rational)>) -> Element {
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            add_term(&mut map, k, c);
        }
        Element { algebra: self.id, terms: map }
    }

    /// Element from `(label, coefficient)` pairs.
    pub fn parse_element(&self, terms: &[(&str, Rational)]) -> Result<Element> {
        let mut out = Vec::new();
        for (l, c) in terms {
            out.push((self.index_of(l)?, c.clone()));
        }
        Ok(self.element(out))
    }

    /// Graded bracket, bilinear with Koszul signs on the homogeneous parts.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        if x.algebra != self.id || y.algebra != self.id {
            return Err(Error::MixedAlgebra);
        }
        let mut terms = BTreeMap::new();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let f = ca * cb;
                for (k, c) in &self.brackets[*a][*b] {
                    add_term(&mut terms, *k, c * &f);
                }
            }
        }
        Ok(Element { algebra: self.id, terms })
    }

    /// `[a,[b,c]] - [[a,b],c] - (-1)^{p(a)p(b)} [b,[a,c]]` on basis indices.
    fn jacobi_defect(&self, a: usize, b: usize, c: usize) -> BTreeMap<usize, Rational> {
        let mut out = BTreeMap::new();
        for (k, x) in &self.brackets[b][c] {
            for (m, y) in &self.brackets[a][*k] {
                add_term(&mut out, *m, x * y);
            }
        }
        for (k, x) in &self.brackets[a][b] {
            for (m, y) in &self.brackets[*k][c] {
                add_term(&mut out, *m, -(x * y));
            }
        }
        let sign = if self.parity[a] * self.parity[b] == 1 { int(1) } else { int(-1) };
        for (k, x) in &self.brackets[a][c] {
            for (m, y) in &self.brackets[b][*k] {
                add_term(&mut out, *m, x * y * &sign);
            }
        }
        out
    }

    /// All basis triples violating the graded Jacobi identity.
    pub fn check_jacobi(&self) -> Vec<JacobiViolation> {
        let d = self.dim();
        let mut bad = Vec::new();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    if !self.jacobi_defect(a, b, c).is_empty() {
                        bad.push(JacobiViolation {
                            a: self.labels[a].clone(),
                            b: self.labels[b].clone(),
                            c: self.labels[c].clone(),
                        });
                    }
                }
            }
        }
        bad
    }

    /// Pairs violating graded antisymmetry or parity additivity.
    pub fn check_antisymmetry(&self) -> Vec<(String, String)> {
        let d = self.dim();
        let mut bad = Vec::new();
        for a in 0..d {
            for b in 0..d {
                let sign = if self.parity[a] * self.parity[b] == 1 { int(-1) } else { int(1) };
                let lhs: BTreeMap<usize, Rational> = self.brackets[a][b].iter().cloned().collect();
                let rhs: BTreeMap<usize, Rational> =
                    self.brackets[b][a].iter().map(|(k, c)| (*k, -(c * &sign))).collect();
                let parity_ok = lhs.keys().all(|k| self.parity[*k] == (self.parity[a] + self.parity[b]) % 2);
                if lhs != rhs || !parity_ok {
                    bad.push((self.labels[a].clone(), self.labels[b].clone()));
                }
            }
        }
        bad
    }

    /// Pairs whose nonzero bracket has a root other than the sum of roots.
    pub fn check_root_additivity(&self) -> Vec<(String, String)> {
        let mut bad = Vec::new();
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let (Some(ra), Some(rb)) = (self.root(a), self.root(b)) else { continue };
                let sum: Vec<i32> = ra.iter().zip(rb).map(|(x, y)| x + y).collect();
                let ok = self.brackets[a][b].iter().all(|(k, _)| match self.root(*k) {
                    Some(r) => r == sum.as_slice(),
                    None => sum.iter().all(|&c| c == 0),
                });
                if !ok {
                    bad.push((self.labels[a].clone(), self.labels[b].clone()));
                }
            }
        }
        bad
    }

    pub fn fmt_element<C: Coeff>(&self, e: &Element<C>) -> String {
        fmt_combination(e.terms.iter().map(|(k, c)| (self.labels[*k].as_str(), c.to_string())))
    }
}

impl PartialEq for SuperAlgebra {
    /// Structural equality, ignoring the identity tag.
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.labels == other.labels
            && self.parity == other.parity
            && self.roots == other.roots
            && self.brackets == other.brackets
    }
}

/// `c1*a + c2*b` text for a combination with already-formatted coefficients.
pub fn fmt_combination<'a>(terms: impl Iterator<Item = (&'a str, String)>) -> String {
    let parts: Vec<String> = terms
        .map(|(l, c)| if c == "1" { l.to_string() } else { format!("({c})*{l}") })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// One relation `[a, b] = sum c_k e_k` from a printed table.
#[derive(Clone, Debug)]
pub struct Relation {
    pub a: &'static str,
    pub b: &'static str,
    pub expected: Vec<(&'static str, Rational)>,
}

fn rel(a: &'static str, b: &'static str, expected: &[(&'static str, i64)]) -> Relation {
    Relation { a, b, expected: expected.iter().map(|(l, c)| (*l, int(*c))).collect() }
}

/// The osp(1|4) Borel relations with their printed coefficients, plus the
/// statement that `X+` commutes with `J` and all positive root generators.
pub fn osp4_relations() -> Vec<Relation> {
    let mut out = vec![
        rel("H", "X+", &[("X+", 2)]),
        rel("H", "v+", &[("v+", 1)]),
        rel("H", "U+", &[("U+", 1)]),
        rel("H", "Z+", &[("Z+", 1)]),
        rel("Z+", "U+", &[("X+", 2)]),
        rel("Z+", "Y+", &[("U+", 1)]),
        rel("Z+", "w+", &[("v+", 1)]),
        rel("v+", "w+", &[("U+", 1)]),
        rel("v+", "v+", &[("X+", 2)]),
        rel("H", "H", &[]),
        rel("X+", "X-", &[("H", 1)]),
        rel("X+", "J", &[]),
    ];
    for l in ["X+", "Y+", "U+", "Z+", "v+", "w+"] {
        out.push(rel("X+", l, &[]));
    }
    out
}

/// Relations for osp(1|2n) with `1 <= k < j <= n`, as owned label strings.
pub fn ospn_relations(n: usize) -> Vec<(String, String, Vec<(String, Rational)>)> {
    let mut out = Vec::new();
    let r = |a: String, b: String, e: Vec<(String, i64)>| (a, b, e.into_iter().map(|(l, c)| (l, int(c))).collect());
    for k in 1..=n {
        out.push(r(format!("H{k}"), format!("X{k}+"), vec![(format!("X{k}+"), 2)]));
        out.push(r(format!("H{k}"), format!("v{k}+"), vec![(format!("v{k}+"), 1)]));
        for j in (k + 1)..=n {
            out.push(r(format!("Z{k}_{j}+"), format!("U{k}_{j}+"), vec![(format!("X{k}+"), 2)]));
            out.push(r(format!("v{k}+"), format!("v{j}+"), vec![(format!("U{k}_{j}+"), 1)]));
            out.push(r(format!("Z{k}_{j}+"), format!("v{j}+"), vec![(format!("v{k}+"), 1)]));
            out.push(r(format!("H{k}"), format!("Z{k}_{j}+"), vec![(format!("Z{k}_{j}+"), 1)]));
            out.push(r(format!("H{k}"), format!("U{k}_{j}+"), vec![(format!("U{k}_{j}+"), 1)]));
        }
    }
    out
}

/// Relations whose bracket differs from the printed right-hand side.
pub fn check_relations(alg: &SuperAlgebra, rels: &[(String, String, Vec<(String, Rational)>)]) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for (a, b, expected) in rels {
        let x = alg.basis_element(alg.index_of(a)?);
        let y = alg.basis_element(alg.index_of(b)?);
        let got = alg.bracket(&x, &y)?;
        let want = alg.parse_element(&expected.iter().map(|(l, c)| (l.as_str(), c.clone())).collect::<Vec<_>>())?;
        if got != want {
            bad.push(format!("[{a}, {b}] = {} (expected {})", alg.fmt_element(&got), alg.fmt_element(&want)));
        }
    }
    Ok(bad)
}

pub fn osp4_relations_owned() -> Vec<(String, String, Vec<(String, Rational)>)> {
    osp4_relations()
        .into_iter()
        .map(|r| (r.a.to_string(), r.b.to_string(), r.expected.into_iter().map(|(l, c)| (l.to_string(), c)).collect()))
        .collect()
}

impl Representation {
    /// Basis pairs where `rho([a,b])` differs from the graded commutator.
    pub fn check_homomorphism(&self, alg: &SuperAlgebra) -> Vec<(String, String)> {
        let mut bad = Vec::new();
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let comm = self.matrices[a].graded_commutator(&self.matrices[b]).expect("homogeneous");
                let img = self.image(alg.bracket_basis(a, b));
                if comm != img {
                    bad.push((alg.label(a).to_string(), alg.label(b).to_string()));
                }
            }
        }
        bad
    }

    /// `rho` of a sparse combination.
    pub fn image(&self, terms: &[(usize, Rational)]) -> GradedMatrix {
        let mut out = GradedMatrix::zero(self.parities.clone());
        for (k, c) in terms {
            out = out.try_add(&self.matrices[*k].scale(c)).expect("same grading");
        }
        out
    }

    /// Labels whose matrix is not homogeneous of the label's parity.
    pub fn check_homogeneity(&self, alg: &SuperAlgebra) -> Vec<String> {
        (0..alg.dim())
            .filter(|&i| self.matrices[i].parity() != Some(alg.parity(i)))
            .map(|i| alg.label(i).to_string())
            .collect()
    }

    /// Invariant form `<a, b> = str(rho(a) rho(b))` on basis indices.
    pub fn form(&self, a: usize, b: usize) -> Rational {
        self.matrices[a].try_mul(&self.matrices[b]).expect("same grading").supertrace()
    }

    /// Coordinate weights: the diagonal of `rho(H_1 + .. + H_n)`.
    pub fn weights(&self, alg: &SuperAlgebra) -> Vec<i32> {
        let h = self.image(&alg.cartan().iter().map(|&i| (i, Rational::one())).collect::<Vec<_>>());
        (0..self.dim()).map(|i| h.get(i, i).to_integer().try_into().expect("small weight")).collect()
    }

    /// Dual basis: `dual[i]` satisfies `<dual[i], e_j> = delta_ij`.
    pub fn dual_basis(&self, alg: &SuperAlgebra) -> Vec<Vec<(usize, Rational)>> {
        let d = alg.dim();
        let gram: Vec<Vec<Rational>> = (0..d).map(|a| (0..d).map(|b| self.form(a, b)).collect()).collect();
        let inv = linalg::inverse(&gram).expect("invariant form is nondegenerate");
        inv.into_iter()
            .map(|row| row.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            .collect()
    }
}

impl fmt::Display for SuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "osp(1|{}) dim {}", 2 * self.rank, self.dim())?;
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let br = &self.brackets[a][b];
                if !br.is_empty() {
                    let s = fmt_combination(br.iter().map(|(k, c)| (self.labels[*k].as_str(), fmt_rational(c))));
                    writeln!(f, "[{}, {}] = {s}", self.labels[a], self.labels[b])?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        for n in 1..=3 {
            let (alg, rep) = build_osp(n);
            assert_eq!(alg.dim(), 2 * n * n + 3 * n);
            assert_eq!(rep.dim(), 2 * n + 1);
            assert_eq!(rep.parities.iter().filter(|&&p| p == 1).count(), 1);
        }
    }

    #[test]
    fn osp4_labels_in_pbw_order() {
        let (alg, _) = build_osp(2);
        let want = ["H", "J", "Z+", "Y+", "U+", "X+", "w+", "v+", "Z-", "Y-", "U-", "X-", "w-", "v-"];
        assert_eq!(alg.labels(), want);
        assert_eq!(alg.index_of("X1+").unwrap(), alg.index_of("X+").unwrap());
        assert_eq!(alg.alias(alg.index_of("U+").unwrap()), Some("U1_2+"));
    }

    #[test]
    fn mixed_algebras_are_refused() {
        let (a, _) = build_osp(1);
        let (b, _) = build_osp(1);
        let x = a.basis_element(0);
        let y = b.basis_element(0);
        assert_eq!(a.bracket(&x, &y), Err(Error::MixedAlgebra));
    }
}
