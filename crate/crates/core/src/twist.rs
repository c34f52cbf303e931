//! Twist factors and chains for osp(1|4), written as expressions so the same
//! definition is evaluated in the truncated PBW algebra and in `rho^{(x) k}`.
//!
//! Two-leg factors, with `sigma = 1/2 log(1 + X+)`:
//! - jordanian: `exp(H (x) sigma)`
//! - extension: `exp(1/2 Z+ (x) U+ e^{-sigma})`
//! - coboundary: `(u (x) u) Delta_0(u)^{-1}`, `u = (1/2 (e^sigma + 1))^{1/2}`
//! - super: `(1 - v+ f1(sigma) (x) v+ f1(sigma)) coboundary`, `f1 = (e^sigma + 1)^{-1}`
//! - sj2: the super-jordanian pair on tilded generators `Ad exp(a) x` with
//!   `a = -1/4 Z+ U+ log(1 + X+)/X+`, times `exp(J (x) sigma~)`.

use std::sync::Arc;

use num_traits::One;

use crate::algebra::SuperAlgebra;
use crate::error::{Error, Result};
use crate::expr::{Engines, Expr, Identity, UeCarrier};
use crate::pbw::UeTensor;
use crate::scalar::{int, rat, Rational, SeriesFn};

/// Labels every twist factor relies on.
pub const CARRIER_LABELS: [&str; 8] = ["H", "J", "Z+", "U+", "X+", "Y+", "v+", "w+"];

pub fn g(label: &str, leg: usize) -> Expr {
    Expr::gen(label, leg)
}

/// `1/2 log(1 + y)`.
pub fn sigma_of(y: &Expr) -> Expr {
    Expr::one().add(y).series(SeriesFn::Log).scale(&rat(1, 2))
}

/// `sigma = 1/2 log(1 + X+)` on `leg`.
pub fn sigma(leg: usize) -> Expr {
    sigma_of(&g("X+", leg))
}

/// `f1(s) = (e^s + 1)^{-1}`.
pub fn f1(s: &Expr) -> Expr {
    s.exp().add(&Expr::one()).inverse()
}

/// `u(s) = (1/2 (e^s + 1))^{1/2}`.
pub fn u(s: &Expr) -> Expr {
    s.exp().add(&Expr::one()).scale(&rat(1, 2)).series(SeriesFn::Sqrt)
}

/// `u(s0) u(s1) u(s0 + s1)^{-1}` for commuting `s0`, `s1` on different legs.
pub fn coboundary_of(s0: &Expr, s1: &Expr) -> Expr {
    Expr::product([u(s0), u(s1), u(&s0.add(s1)).inverse()])
}

/// Exponent `a = -1/4 Z+ U+ log(1 + X+)/X+` of the tilding map on `leg`.
pub fn tilde_exponent(leg: usize) -> Expr {
    Expr::product([g("Z+", leg), g("U+", leg), g("X+", leg).series(SeriesFn::Log1pOverX)]).scale(&rat(-1, 4))
}

/// `Ad exp(a) x` for the generator `label` on `leg`.
pub fn tilde(label: &str, leg: usize) -> Expr {
    Expr::conj(&tilde_exponent(leg), &g(label, leg))
}

/// `sigma~ = 1/2 log(1 + Y+~)`.
pub fn sigma_tilde(leg: usize) -> Expr {
    sigma_of(&tilde("Y+", leg))
}

/// Closed form `Y+ - 1/4 U+^2 e^{-2 sigma}`.
pub fn y_tilde_closed(leg: usize) -> Expr {
    let uu = g("U+", leg).mul(&g("U+", leg));
    g("Y+", leg).sub(&uu.mul(&sigma(leg).scale(&int(-2)).exp()).scale(&rat(1, 4)))
}

/// Closed form `w+ - 1/2 v+ U+ e^{-sigma} (e^sigma + 1)^{-1}`.
pub fn w_tilde_closed(leg: usize) -> Expr {
    let s = sigma(leg);
    let tail = Expr::product([g("v+", leg), g("U+", leg), s.neg().exp(), f1(&s)]);
    g("w+", leg).sub(&tail.scale(&rat(1, 2)))
}

/// Named twist factors and chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwistKind {
    Jordanian,
    Extension,
    Coboundary,
    Super,
    Sj2,
    /// `F_e F_j`.
    Ej,
    /// `F_s F_j`.
    Sj,
    /// `F_s F_e F_j`.
    Esj,
    /// `F_e F_s F_j`.
    EsjSwapped,
    /// `F_sj2 F_s F_e F_j`.
    Full,
}

impl TwistKind {
    pub const ALL: [TwistKind; 10] = [
        TwistKind::Jordanian,
        TwistKind::Extension,
        TwistKind::Coboundary,
        TwistKind::Super,
        TwistKind::Sj2,
        TwistKind::Ej,
        TwistKind::Sj,
        TwistKind::Esj,
        TwistKind::EsjSwapped,
        TwistKind::Full,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TwistKind::Jordanian => "j",
            TwistKind::Extension => "e",
            TwistKind::Coboundary => "c",
            TwistKind::Super => "s",
            TwistKind::Sj2 => "sj2",
            TwistKind::Ej => "ej",
            TwistKind::Sj => "sj",
            TwistKind::Esj => "esj",
            TwistKind::EsjSwapped => "esj_swapped",
            TwistKind::Full => "full",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidOption(format!("unknown twist `{s}`")))
    }

    /// Factor names, leftmost first.
    pub fn factors(self) -> Vec<TwistKind> {
        use TwistKind::*;
        match self {
            Ej => vec![Extension, Jordanian],
            Sj => vec![Super, Jordanian],
            Esj => vec![Super, Extension, Jordanian],
            EsjSwapped => vec![Extension, Super, Jordanian],
            Full => vec![Sj2, Super, Extension, Jordanian],
            k => vec![k],
        }
    }
}

fn factor_expr(kind: TwistKind) -> Expr {
    let one = Expr::one();
    match kind {
        TwistKind::Jordanian => g("H", 0).mul(&sigma(1)).exp(),
        TwistKind::Extension => {
            Expr::product([g("Z+", 0), g("U+", 1), sigma(1).neg().exp()]).scale(&rat(1, 2)).exp()
        }
        TwistKind::Coboundary => coboundary_of(&sigma(0), &sigma(1)),
        TwistKind::Super => {
            let (s0, s1) = (sigma(0), sigma(1));
            let vv = Expr::product([g("v+", 0), g("v+", 1), f1(&s0), f1(&s1)]);
            one.sub(&vv).mul(&coboundary_of(&s0, &s1))
        }
        TwistKind::Sj2 => {
            let (s0, s1) = (sigma_tilde(0), sigma_tilde(1));
            let ww = Expr::product([tilde("w+", 0), tilde("w+", 1), f1(&s0), f1(&s1)]);
            Expr::product([one.sub(&ww), coboundary_of(&s0, &s1), g("J", 0).mul(&s1).exp()])
        }
        chain => Expr::product(chain.factors().into_iter().map(factor_expr)),
    }
}

/// A two-leg twist with its factorization.
#[derive(Clone, Debug)]
pub struct Twist {
    pub kind: Option<TwistKind>,
    pub factors: Vec<&'static str>,
    pub expr: Expr,
}

impl Twist {
    /// Build a named factor or chain; needs the osp(1|4) labels.
    pub fn build(alg: &SuperAlgebra, kind: TwistKind) -> Result<Self> {
        for l in CARRIER_LABELS {
            alg.osp4(l)?;
        }
        let factors = kind.factors().into_iter().map(TwistKind::name).collect();
        Ok(Twist { kind: Some(kind), factors, expr: factor_expr(kind) })
    }

    pub fn name(&self) -> String {
        match self.kind {
            Some(k) => k.name().to_string(),
            None => self.factors.join("*"),
        }
    }

    /// Product in the listed order.
    pub fn compose(chain: &[Twist]) -> Result<Self> {
        if chain.is_empty() {
            return Err(Error::InvalidOption("empty twist chain".into()));
        }
        if chain.len() == 1 {
            return Ok(chain[0].clone());
        }
        let factors = chain.iter().flat_map(|t| t.factors.iter().copied()).collect();
        Ok(Twist { kind: None, factors, expr: Expr::product(chain.iter().map(|t| t.expr.clone())) })
    }

    pub fn ue(&self, ue: &UeCarrier) -> Result<UeTensor> {
        self.expr.eval(ue, 2)
    }

    /// `F_12 (Delta_0 (x) id)(F)` and `F_23 (id (x) Delta_0)(F)`.
    pub fn cocycle_sides(&self) -> (Expr, Expr) {
        let f = &self.expr;
        let lhs = f.remap(&[&[0], &[1]]).mul(&f.remap(&[&[0, 1], &[2]]));
        let rhs = f.remap(&[&[1], &[2]]).mul(&f.remap(&[&[0], &[1, 2]]));
        (lhs, rhs)
    }

    pub fn cocycle_identity(&self) -> Identity {
        let (lhs, rhs) = self.cocycle_sides();
        Identity::new(format!("cocycle {}", self.name()), 3, lhs, rhs)
    }

    /// `(eps (x) id) F = 1` and `(id (x) eps) F = 1`.
    pub fn counit_identities(&self) -> [Identity; 2] {
        [
            Identity::new(format!("counit left {}", self.name()), 1, self.expr.remap(&[&[], &[0]]), Expr::one()),
            Identity::new(format!("counit right {}", self.name()), 1, self.expr.remap(&[&[0], &[]]), Expr::one()),
        ]
    }

    /// `F Delta_0(x) F^{-1}` for a one-leg expression `x`.
    pub fn twisted_coproduct(&self, x: &Expr) -> Expr {
        Expr::product([self.expr.clone(), x.coproduct0(), self.expr.inverse()])
    }

    /// `F_21 F^{-1}`.
    pub fn universal_r(&self) -> Expr {
        self.expr.flip().mul(&self.expr.inverse())
    }
}

/// PBW-level cocycle residual through `Delta_0` on tensor legs.
pub fn cocycle_residual(f: &UeTensor) -> Result<UeTensor> {
    let lhs = f.insert_unit_leg(2).mul(&f.coproduct_leg(0)?)?;
    let rhs = f.insert_unit_leg(0).mul(&f.coproduct_leg(1)?)?;
    lhs.sub(&rhs)
}

/// The printed twisted-coproduct formulas for `F_esj`, plus the tilded
/// generators' closed forms and primitivity.
pub fn esj_coproduct_identities(alg: &Arc<SuperAlgebra>) -> Result<Vec<Identity>> {
    let f = Twist::build(alg, TwistKind::Esj)?;
    let s = |l| sigma(l);
    let prim = |x: &dyn Fn(usize) -> Expr| x(0).add(&x(1));
    let half = rat(1, 2);
    let quarter = rat(1, 4);
    let uu1 = g("U+", 1).mul(&g("U+", 1));
    let mut out = vec![
        Identity::new("sigma primitive", 2, f.twisted_coproduct(&s(0)), prim(&s)),
        Identity::new("J primitive", 2, f.twisted_coproduct(&g("J", 0)), prim(&|l| g("J", l))),
        Identity::new(
            "v+ coproduct",
            2,
            f.twisted_coproduct(&g("v+", 0)),
            g("v+", 0).add(&s(0).exp().mul(&g("v+", 1))),
        ),
        Identity::new(
            "U+ coproduct",
            2,
            f.twisted_coproduct(&g("U+", 0)),
            g("U+", 0).mul(&s(1).exp()).add(&s(0).scale(&int(2)).exp().mul(&g("U+", 1))),
        ),
        Identity::new(
            "Y+ coproduct",
            2,
            f.twisted_coproduct(&g("Y+", 0)),
            Expr::sum([
                g("Y+", 0),
                g("Y+", 1),
                Expr::product([g("U+", 0), g("U+", 1), s(1).neg().exp()]).scale(&half),
                Expr::product([g("X+", 0), uu1, s(1).scale(&int(-2)).exp()]).scale(&quarter),
            ]),
        ),
        Identity::new("Y+~ closed form", 1, tilde("Y+", 0), y_tilde_closed(0)),
        Identity::new("w+~ closed form", 1, tilde("w+", 0), w_tilde_closed(0)),
        Identity::new("Y+~ primitive", 2, f.twisted_coproduct(&tilde("Y+", 0)), prim(&|l| tilde("Y+", l))),
        Identity::new("w+~ primitive", 2, f.twisted_coproduct(&tilde("w+", 0)), prim(&|l| tilde("w+", l))),
    ];
    let e = Twist::build(alg, TwistKind::Extension)?.expr;
    let sf = Twist::build(alg, TwistKind::Super)?.expr;
    out.push(Identity::new("F_e F_s = F_s F_e", 2, e.mul(&sf), sf.mul(&e)));
    Ok(out)
}

/// Check every identity, returning `(name, verdict)` pairs.
pub fn verify_all(eng: &Engines, ids: &[Identity]) -> Result<Vec<(String, crate::expr::Verdict)>> {
    ids.iter().map(|id| Ok((id.name.clone(), eng.verify(id)?))).collect()
}

/// `1 (x) 1` check helper: whether a PBW tensor is the unit.
pub fn is_unit(t: &UeTensor) -> bool {
    *t == UeTensor::scalar(t.context(), t.legs(), Rational::one(), t.bound())
}
