//! Truncated universal enveloping algebra in a PBW basis.
//!
//! A monomial is a dense exponent vector over the algebra's ordered basis;
//! odd generators carry exponent 0 or 1. Products are rewritten into normal
//! form with `xy = (-1)^{p(x)p(y)} yx + [x,y]` and `x^2 = 1/2 [x,x]` for odd
//! `x`, memoised per (monomial, generator).
//!
//! Truncation is by the grade `ad(H_1 + .. + H_n)`-eigenvalue, summed over
//! tensor legs: Cartan and `Z` generators have grade 0, `v_k` grade 1,
//! `X_k`, `U_kj` grade 2. On the Borel subalgebra the span of terms of grade
//! above `D` is a two-sided ideal, so truncated arithmetic is exact modulo
//! that ideal. (Truncating by PBW length is not: rewriting lowers length.)

mod tensor;

pub use tensor::UeTensor;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::algebra::{Representation, SuperAlgebra};
use crate::error::Result;
use crate::parse;
use crate::repmat::GradedMatrix;
use crate::scalar::{rat, Rational};

/// PBW monomial: exponent of each basis generator in basis order.
pub type Mono = Box<[u8]>;

type Expansion = Arc<Vec<(Mono, Rational)>>;
type CoproductExpansion = Arc<Vec<(Mono, Mono, Rational)>>;

/// Shared rewriting state for one algebra.
pub struct UeContext {
    alg: Arc<SuperAlgebra>,
    grades: Vec<i32>,
    gen_cache: RwLock<HashMap<(Mono, usize), Expansion>>,
    mono_cache: RwLock<HashMap<(Mono, Mono), Expansion>>,
    coproduct_cache: RwLock<HashMap<Mono, CoproductExpansion>>,
}

impl std::fmt::Debug for UeContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UeContext").field("dim", &self.alg.dim()).finish()
    }
}

impl UeContext {
    pub fn new(alg: Arc<SuperAlgebra>) -> Arc<Self> {
        let grades = (0..alg.dim()).map(|i| alg.grade(i)).collect();
        Arc::new(UeContext {
            alg,
            grades,
            gen_cache: RwLock::new(HashMap::new()),
            mono_cache: RwLock::new(HashMap::new()),
            coproduct_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn algebra(&self) -> &Arc<SuperAlgebra> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn unit_mono(&self) -> Mono {
        vec![0u8; self.dim()].into_boxed_slice()
    }

    pub fn gen_mono(&self, g: usize) -> Mono {
        let mut m = vec![0u8; self.dim()];
        m[g] = 1;
        m.into_boxed_slice()
    }

    /// Grade of a monomial or of a concatenation of leg monomials.
    pub fn mono_grade(&self, m: &[u8]) -> i32 {
        m.iter().zip(self.grades.iter().cycle()).map(|(&e, &g)| e as i32 * g).sum()
    }

    /// Parity of a monomial or of a concatenation of leg monomials.
    pub fn mono_parity(&self, m: &[u8]) -> u8 {
        let d = self.dim();
        let odd: u32 = m
            .iter()
            .enumerate()
            .filter(|(i, _)| self.alg.parity(i % d) == 1)
            .map(|(_, &e)| e as u32)
            .sum();
        (odd % 2) as u8
    }

    pub fn mono_degree(&self, m: &[u8]) -> u32 {
        m.iter().map(|&e| e as u32).sum()
    }

    /// Normal form of `m * x_g`.
    pub fn mul_gen(&self, m: &[u8], g: usize) -> Expansion {
        if let Some(hit) = self.gen_cache.read().expect("cache lock").get(&(Mono::from(m), g)) {
            return hit.clone();
        }
        let result = Arc::new(self.mul_gen_uncached(m, g));
        self.gen_cache.write().expect("cache lock").insert((Mono::from(m), g), result.clone());
        result
    }

    fn mul_gen_uncached(&self, m: &[u8], g: usize) -> Vec<(Mono, Rational)> {
        let last = m.iter().rposition(|&e| e > 0);
        match last {
            Some(l) if l > g => {
                let mut m0: Mono = m.into();
                m0[l] -= 1;
                let mut acc: HashMap<Mono, Rational> = HashMap::new();
                let sign = if self.alg.parity(l) * self.alg.parity(g) == 1 { -Rational::one() } else { Rational::one() };
                for (m1, c1) in self.mul_gen(&m0, g).iter() {
                    for (m2, c2) in self.mul_gen(m1, l).iter() {
                        accumulate(&mut acc, m2.clone(), &sign * c1 * c2);
                    }
                }
                for (k, c) in self.alg.bracket_basis(l, g) {
                    for (m2, c2) in self.mul_gen(&m0, *k).iter() {
                        accumulate(&mut acc, m2.clone(), c * c2);
                    }
                }
                finish(acc)
            }
            Some(l) if l == g && self.alg.parity(g) == 1 => {
                let mut m0: Mono = m.into();
                m0[g] -= 1;
                let mut acc: HashMap<Mono, Rational> = HashMap::new();
                let half = rat(1, 2);
                for (k, c) in self.alg.bracket_basis(g, g) {
                    for (m2, c2) in self.mul_gen(&m0, *k).iter() {
                        accumulate(&mut acc, m2.clone(), &half * c * c2);
                    }
                }
                finish(acc)
            }
            _ => {
                let mut out: Mono = m.into();
                out[g] = out[g].checked_add(1).expect("exponent overflow");
                vec![(out, Rational::one())]
            }
        }
    }

    /// Normal form of `a * b`.
    pub fn mul_mono(&self, a: &[u8], b: &[u8]) -> Expansion {
        let key = (Mono::from(a), Mono::from(b));
        if let Some(hit) = self.mono_cache.read().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let mut cur: Vec<(Mono, Rational)> = vec![(a.into(), Rational::one())];
        for (g, &e) in b.iter().enumerate() {
            for _ in 0..e {
                let mut acc: HashMap<Mono, Rational> = HashMap::new();
                for (m, c) in &cur {
                    for (m2, c2) in self.mul_gen(m, g).iter() {
                        accumulate(&mut acc, m2.clone(), c * c2);
                    }
                }
                cur = finish(acc);
            }
        }
        let result = Arc::new(cur);
        self.mono_cache.write().expect("cache lock").insert(key, result.clone());
        result
    }

    /// `Delta_0(m)` as `(left, right, coeff)` triples.
    pub fn coproduct_mono(&self, m: &[u8]) -> CoproductExpansion {
        if let Some(hit) = self.coproduct_cache.read().expect("cache lock").get(m) {
            return hit.clone();
        }
        let result = match m.iter().rposition(|&e| e > 0) {
            None => vec![(self.unit_mono(), self.unit_mono(), Rational::one())],
            Some(l) => {
                let mut m0: Mono = m.into();
                m0[l] -= 1;
                let base = self.coproduct_mono(&m0);
                let mut acc: HashMap<(Mono, Mono), Rational> = HashMap::new();
                let pg = self.alg.parity(l);
                for (a, b, c) in base.iter() {
                    // (a (x) b)(g (x) 1) = (-1)^{p(b)p(g)} ag (x) b
                    let sign = if self.mono_parity(b) * pg == 1 { -Rational::one() } else { Rational::one() };
                    for (ag, c2) in self.mul_gen(a, l).iter() {
                        accumulate(&mut acc, (ag.clone(), b.clone()), &sign * c * c2);
                    }
                    // (a (x) b)(1 (x) g) = a (x) bg
                    for (bg, c2) in self.mul_gen(b, l).iter() {
                        accumulate(&mut acc, (a.clone(), bg.clone()), c * c2);
                    }
                }
                let mut out: Vec<(Mono, Mono, Rational)> =
                    acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b), c)| (a, b, c)).collect();
                out.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
                out
            }
        };
        let result = Arc::new(result);
        self.coproduct_cache.write().expect("cache lock").insert(m.into(), result.clone());
        result
    }

    /// `rho(m)` in the defining representation.
    pub fn rho_mono(&self, rep: &Representation, m: &[u8]) -> GradedMatrix {
        let mut out = GradedMatrix::identity(rep.parities.clone());
        for (g, &e) in m.iter().enumerate() {
            for _ in 0..e {
                out = out.try_mul(&rep.matrices[g]).expect("same grading");
                if out.is_zero() {
                    return out;
                }
            }
        }
        out
    }

    pub fn fmt_mono(&self, m: &[u8]) -> String {
        let mut parts = Vec::new();
        for (g, &e) in m.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.alg.label(g).to_string()),
                _ => parts.push(format!("{}^{e}", self.alg.label(g))),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Normal form of a product of generator labels.
    pub fn normal_form(self: &Arc<Self>, labels: &[&str], coeff: Rational, bound: Option<i32>) -> Result<UeTensor> {
        let mut out = UeTensor::scalar(self, 1, coeff, bound);
        for l in labels {
            let g = self.alg.index_of(l)?;
            out = out.mul(&UeTensor::generator(self, g, 0, 1, bound))?;
        }
        Ok(out)
    }

    /// Parse and normalise a word such as `-1/2*X+ H`.
    pub fn normal_form_str(self: &Arc<Self>, word: &str, bound: Option<i32>) -> Result<UeTensor> {
        let w = parse::word(word)?;
        let labels: Vec<&str> = w.labels.iter().map(String::as_str).collect();
        self.normal_form(&labels, w.coeff, bound)
    }

    /// Independent normal form by naive word rewriting: repeatedly pick an
    /// out-of-order adjacent pair (or an odd square) chosen by `pick` among
    /// the candidates and rewrite it. Used to test confluence.
    pub fn rewrite_word(&self, word: &[usize], mut pick: impl FnMut(usize) -> usize) -> HashMap<Mono, Rational> {
        let mut pending: Vec<(Vec<usize>, Rational)> = vec![(word.to_vec(), Rational::one())];
        let mut done: HashMap<Mono, Rational> = HashMap::new();
        while let Some((w, c)) = pending.pop() {
            if c.is_zero() {
                continue;
            }
            let spots: Vec<usize> = (0..w.len().saturating_sub(1))
                .filter(|&i| w[i] > w[i + 1] || (w[i] == w[i + 1] && self.alg.parity(w[i]) == 1))
                .collect();
            if spots.is_empty() {
                let mut m = self.unit_mono();
                for &g in &w {
                    m[g] += 1;
                }
                accumulate(&mut done, m, c);
                continue;
            }
            let i = spots[pick(spots.len()) % spots.len()];
            let (x, y) = (w[i], w[i + 1]);
            if x == y {
                for (k, b) in self.alg.bracket_basis(x, x) {
                    let mut nw = w[..i].to_vec();
                    nw.push(*k);
                    nw.extend_from_slice(&w[i + 2..]);
                    pending.push((nw, &c * b * rat(1, 2)));
                }
                continue;
            }
            let sign = if self.alg.parity(x) * self.alg.parity(y) == 1 { -Rational::one() } else { Rational::one() };
            let mut swapped = w.clone();
            swapped.swap(i, i + 1);
            pending.push((swapped, &c * &sign));
            for (k, b) in self.alg.bracket_basis(x, y) {
                let mut nw = w[..i].to_vec();
                nw.push(*k);
                nw.extend_from_slice(&w[i + 2..]);
                pending.push((nw, &c * b));
            }
        }
        done.retain(|_, c| !c.is_zero());
        done
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.alg.index_of(label)
    }
}

fn accumulate<K: std::hash::Hash + Eq>(acc: &mut HashMap<K, Rational>, k: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(k).or_insert_with(Rational::zero);
    *slot += c;
}

fn finish(acc: HashMap<Mono, Rational>) -> Vec<(Mono, Rational)> {
    let mut out: Vec<(Mono, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}
