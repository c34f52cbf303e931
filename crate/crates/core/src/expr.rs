//! Symbolic expressions in tensor legs of `U(g)`, evaluated by a carrier:
//! truncated PBW tensors or exact matrices in `rho^{(x) k}`.
//!
//! An expression names generators by label and leg. A `Remap` node applies
//! the superalgebra map sending leg `l` to the sum over the target legs in
//! `map[l]`; with one target per leg this relabels legs (the graded flip for
//! `[[1],[0]]`), with two it is `Delta_0` on that leg, with none the counit.
//! Carriers that can apply such maps to values (PBW tensors) transport the
//! evaluated inner expression; the matrix carrier substitutes instead.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{Representation, SuperAlgebra};
use crate::error::{Error, Result};
use crate::pbw::{UeContext, UeTensor};
use crate::repmat::{tensor_weights, GradedMatrix};
use crate::scalar::{int, Rational, SeriesFn};

#[derive(Debug)]
enum Node {
    One,
    Gen(String, usize),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Scale(Rational, Expr),
    Series(SeriesFn, Expr),
    Conj(Expr, Expr),
    Remap(Vec<Vec<usize>>, Expr),
}

/// Shared expression tree; clones are cheap and evaluation memoises shared
/// subtrees.
#[derive(Clone, Debug)]
pub struct Expr(Arc<Node>);

impl Expr {
    fn node(n: Node) -> Self {
        Expr(Arc::new(n))
    }

    pub fn one() -> Self {
        Self::node(Node::One)
    }

    pub fn gen(label: &str, leg: usize) -> Self {
        Self::node(Node::Gen(label.to_string(), leg))
    }

    pub fn add(&self, other: &Expr) -> Self {
        Self::node(Node::Sum(vec![self.clone(), other.clone()]))
    }

    pub fn sub(&self, other: &Expr) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn sum(items: impl IntoIterator<Item = Expr>) -> Self {
        Self::node(Node::Sum(items.into_iter().collect()))
    }

    pub fn mul(&self, other: &Expr) -> Self {
        Self::node(Node::Prod(vec![self.clone(), other.clone()]))
    }

    pub fn product(items: impl IntoIterator<Item = Expr>) -> Self {
        Self::node(Node::Prod(items.into_iter().collect()))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::node(Node::Scale(q.clone(), self.clone()))
    }

    pub fn series(&self, f: SeriesFn) -> Self {
        Self::node(Node::Series(f, self.clone()))
    }

    pub fn exp(&self) -> Self {
        self.series(SeriesFn::Exp)
    }

    pub fn inverse(&self) -> Self {
        self.series(SeriesFn::Inverse)
    }

    /// `exp(a) x exp(-a)`.
    pub fn conj(a: &Expr, x: &Expr) -> Self {
        Self::node(Node::Conj(a.clone(), x.clone()))
    }

    /// Apply the leg map `map` (leg `l` goes to the legs `map[l]`).
    pub fn remap(&self, map: &[&[usize]]) -> Self {
        Self::node(Node::Remap(map.iter().map(|m| m.to_vec()).collect(), self.clone()))
    }

    /// Graded flip of a two-leg expression.
    pub fn flip(&self) -> Self {
        self.remap(&[&[1], &[0]])
    }

    /// `Delta_0` of a one-leg expression.
    pub fn coproduct0(&self) -> Self {
        self.remap(&[&[0, 1]])
    }

    /// Evaluate on `legs` legs.
    pub fn eval<K: Carrier>(&self, k: &K, legs: usize) -> Result<K::Elem> {
        let id: Vec<Vec<usize>> = (0..legs).map(|l| vec![l]).collect();
        Evaluator { k, memo: HashMap::new() }.eval(self, legs, &id)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, xs: &[Expr], sep: &str| -> fmt::Result {
            f.write_str("(")?;
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")
        };
        match &*self.0 {
            Node::One => f.write_str("1"),
            Node::Gen(l, leg) => write!(f, "{l}_{leg}"),
            Node::Sum(xs) => join(f, xs, " + "),
            Node::Prod(xs) => join(f, xs, " "),
            Node::Scale(q, x) => write!(f, "{q}*{x}"),
            Node::Series(s, x) => write!(f, "{s}({x})"),
            Node::Conj(a, x) => write!(f, "Ad(exp({a}))({x})"),
            Node::Remap(m, x) => write!(f, "{m:?}{x}"),
        }
    }
}

/// A ring in which expressions can be evaluated.
pub trait Carrier {
    type Elem: Clone;

    fn gen(&self, label: &str, leg: usize, legs: usize) -> Result<Self::Elem>;
    fn one(&self, legs: usize) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem;
    fn series(&self, a: &Self::Elem, f: &SeriesFn) -> Result<Self::Elem>;

    fn conj_exp(&self, a: &Self::Elem, x: &Self::Elem) -> Result<Self::Elem> {
        let e = self.series(a, &SeriesFn::Exp)?;
        let ei = self.series(&self.scale(a, &int(-1)), &SeriesFn::Exp)?;
        self.mul(&self.mul(&e, x)?, &ei)
    }

    /// Apply a leg map to a value, if the carrier supports it.
    fn transport(&self, _e: &Self::Elem, _map: &[Vec<usize>], _legs: usize) -> Option<Result<Self::Elem>> {
        None
    }
}

struct Evaluator<'a, K: Carrier> {
    k: &'a K,
    memo: HashMap<(usize, usize, Vec<Vec<usize>>), K::Elem>,
}

impl<K: Carrier> Evaluator<'_, K> {
    fn eval(&mut self, e: &Expr, legs: usize, map: &[Vec<usize>]) -> Result<K::Elem> {
        let key = (Arc::as_ptr(&e.0) as usize, legs, map.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let k = self.k;
        let v = match &*e.0 {
            Node::One => k.one(legs),
            Node::Gen(label, leg) => {
                let targets = map.get(*leg).ok_or(Error::LegMismatch { left: leg + 1, right: map.len() })?;
                let mut acc: Option<K::Elem> = None;
                for &t in targets {
                    let g = k.gen(label, t, legs)?;
                    acc = Some(match acc {
                        None => g,
                        Some(a) => k.add(&a, &g)?,
                    });
                }
                match acc {
                    Some(a) => a,
                    None => k.scale(&k.one(legs), &Rational::zero()),
                }
            }
            Node::Sum(xs) => {
                let mut acc = k.scale(&k.one(legs), &Rational::zero());
                for x in xs {
                    let v = self.eval(x, legs, map)?;
                    acc = k.add(&acc, &v)?;
                }
                acc
            }
            Node::Prod(xs) => {
                let mut acc = k.one(legs);
                for x in xs {
                    let v = self.eval(x, legs, map)?;
                    acc = k.mul(&acc, &v)?;
                }
                acc
            }
            Node::Scale(q, x) => {
                let v = self.eval(x, legs, map)?;
                k.scale(&v, q)
            }
            Node::Series(f, x) => {
                let v = self.eval(x, legs, map)?;
                k.series(&v, f)?
            }
            Node::Conj(a, x) => {
                let a = self.eval(a, legs, map)?;
                let x = self.eval(x, legs, map)?;
                k.conj_exp(&a, &x)?
            }
            Node::Remap(inner_map, x) => {
                let composite: Vec<Vec<usize>> = inner_map
                    .iter()
                    .map(|ts| {
                        let mut out: Vec<usize> = ts.iter().flat_map(|&t| map[t].iter().copied()).collect();
                        out.sort_unstable();
                        out
                    })
                    .collect();
                let inner_legs = inner_map.len();
                let id: Vec<Vec<usize>> = (0..inner_legs).map(|l| vec![l]).collect();
                let inner = self.eval(x, inner_legs, &id)?;
                match k.transport(&inner, &composite, legs) {
                    Some(r) => r?,
                    None => self.eval(x, legs, &composite)?,
                }
            }
        };
        self.memo.insert(key, v.clone());
        Ok(v)
    }
}

/// Truncated PBW tensors.
#[derive(Clone, Debug)]
pub struct UeCarrier {
    pub ctx: Arc<UeContext>,
    pub bound: Option<i32>,
}

impl UeCarrier {
    pub fn new(ctx: &Arc<UeContext>, bound: Option<i32>) -> Self {
        UeCarrier { ctx: ctx.clone(), bound }
    }
}

impl Carrier for UeCarrier {
    type Elem = UeTensor;

    fn gen(&self, label: &str, leg: usize, legs: usize) -> Result<UeTensor> {
        let g = self.ctx.label_index(label)?;
        Ok(UeTensor::generator(&self.ctx, g, leg, legs, self.bound))
    }

    fn one(&self, legs: usize) -> UeTensor {
        UeTensor::one(&self.ctx, legs, self.bound)
    }

    fn add(&self, a: &UeTensor, b: &UeTensor) -> Result<UeTensor> {
        a.add(b)
    }

    fn mul(&self, a: &UeTensor, b: &UeTensor) -> Result<UeTensor> {
        a.mul(b)
    }

    fn scale(&self, a: &UeTensor, q: &Rational) -> UeTensor {
        a.scale(q)
    }

    fn series(&self, a: &UeTensor, f: &SeriesFn) -> Result<UeTensor> {
        a.series(f)
    }

    fn conj_exp(&self, a: &UeTensor, x: &UeTensor) -> Result<UeTensor> {
        UeTensor::ad_exp(a, x)
    }

    fn transport(&self, e: &UeTensor, map: &[Vec<usize>], legs: usize) -> Option<Result<UeTensor>> {
        Some(transport_ue(e, map, legs))
    }
}

/// Apply `Delta_0`, the counit, unit insertion and a leg permutation so
/// that leg `l` of `e` lands on the legs `map[l]` of a `legs`-leg tensor.
pub fn transport_ue(e: &UeTensor, map: &[Vec<usize>], legs: usize) -> Result<UeTensor> {
    if map.len() != e.legs() {
        return Err(Error::LegMismatch { left: map.len(), right: e.legs() });
    }
    let mut used = vec![false; legs];
    for &t in map.iter().flatten() {
        if t >= legs || used[t] {
            return Err(Error::InvalidOption(format!("leg map {map:?} is not injective into {legs} legs")));
        }
        used[t] = true;
    }
    let mut cur = e.clone();
    for l in (0..map.len()).rev() {
        match map[l].len() {
            0 => cur = cur.counit_leg(l),
            n => {
                for _ in 1..n {
                    cur = cur.coproduct_leg(l)?;
                }
            }
        }
    }
    let mut order: Vec<usize> = map.iter().flatten().copied().collect();
    for (t, u) in used.iter().enumerate() {
        if !u {
            cur = cur.insert_unit_leg(cur.legs());
            order.push(t);
        }
    }
    if order.iter().enumerate().all(|(i, &t)| i == t) {
        return Ok(cur);
    }
    cur.permute_legs(&order)
}

/// Exact matrices in `rho^{(x) legs}`.
#[derive(Clone, Debug)]
pub struct RepCarrier {
    pub alg: Arc<SuperAlgebra>,
    pub rep: Representation,
}

impl RepCarrier {
    pub fn new(alg: &Arc<SuperAlgebra>, rep: &Representation) -> Self {
        RepCarrier { alg: alg.clone(), rep: rep.clone() }
    }
}

impl Carrier for RepCarrier {
    type Elem = GradedMatrix;

    fn gen(&self, label: &str, leg: usize, legs: usize) -> Result<GradedMatrix> {
        let g = self.alg.index_of(label)?;
        Ok(self.rep.matrices[g].embed(leg, legs))
    }

    fn one(&self, legs: usize) -> GradedMatrix {
        GradedMatrix::identity(self.rep.parities.clone()).embed(0, legs)
    }

    fn add(&self, a: &GradedMatrix, b: &GradedMatrix) -> Result<GradedMatrix> {
        a.try_add(b)
    }

    fn mul(&self, a: &GradedMatrix, b: &GradedMatrix) -> Result<GradedMatrix> {
        a.try_mul(b)
    }

    fn scale(&self, a: &GradedMatrix, q: &Rational) -> GradedMatrix {
        a.scale(q)
    }

    fn series(&self, a: &GradedMatrix, f: &SeriesFn) -> Result<GradedMatrix> {
        a.series(f)
    }
}

/// An identity `lhs = rhs` between expressions on `legs` legs.
#[derive(Clone, Debug)]
pub struct Identity {
    pub name: String,
    pub legs: usize,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Identity {
    pub fn new(name: impl Into<String>, legs: usize, lhs: Expr, rhs: Expr) -> Self {
        Identity { name: name.into(), legs, lhs, rhs }
    }
}

/// Outcome of checking an identity both ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    /// Holds in the truncated PBW algebra.
    pub universal: bool,
    /// Holds exactly in the representation.
    pub exact: bool,
    /// `rho` of each PBW side equals the grade-truncated matrix side.
    pub oracle: bool,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.universal && self.exact && self.oracle
    }
}

/// Evaluation context for both carriers of one algebra.
#[derive(Clone, Debug)]
pub struct Engines {
    pub ue: UeCarrier,
    pub rep: RepCarrier,
    weights: Vec<i32>,
}

impl Engines {
    pub fn new(alg: &Arc<SuperAlgebra>, rep: &Representation, bound: i32) -> Self {
        let ctx = UeContext::new(alg.clone());
        Self::with_context(&ctx, rep, bound)
    }

    pub fn with_context(ctx: &Arc<UeContext>, rep: &Representation, bound: i32) -> Self {
        let alg = ctx.algebra().clone();
        let weights = rep.weights(&alg);
        Engines { ue: UeCarrier::new(ctx, Some(bound)), rep: RepCarrier::new(&alg, rep), weights }
    }

    pub fn bound(&self) -> i32 {
        self.ue.bound.expect("engines are truncated")
    }

    pub fn algebra(&self) -> &Arc<SuperAlgebra> {
        &self.rep.alg
    }

    pub fn representation(&self) -> &Representation {
        &self.rep.rep
    }

    /// Coordinate weights of `rho^{(x) legs}`.
    pub fn weights(&self, legs: usize) -> Vec<i32> {
        tensor_weights(&self.weights, legs)
    }

    /// Whether `rho(u)` equals `m` with grades above the bound dropped.
    pub fn agrees(&self, u: &UeTensor, m: &GradedMatrix) -> bool {
        u.rho(&self.rep.rep) == m.truncate_grade(&self.weights(u.legs()), self.bound())
    }

    /// Check `lhs = rhs` in both carriers and cross-check them.
    pub fn verify(&self, id: &Identity) -> Result<Verdict> {
        let (ul, ur) = (id.lhs.eval(&self.ue, id.legs)?, id.rhs.eval(&self.ue, id.legs)?);
        let (ml, mr) = (id.lhs.eval(&self.rep, id.legs)?, id.rhs.eval(&self.rep, id.legs)?);
        Ok(Verdict { universal: ul == ur, exact: ml == mr, oracle: self.agrees(&ul, &ml) && self.agrees(&ur, &mr) })
    }

    /// Matrix-only check, for identities too large for the PBW path.
    pub fn verify_exact(&self, id: &Identity) -> Result<bool> {
        Ok(id.lhs.eval(&self.rep, id.legs)? == id.rhs.eval(&self.rep, id.legs)?)
    }
}
