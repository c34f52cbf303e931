//! Canonical JSON dumps of the algebra, its representation and the
//! r-matrix catalog, and a validating reader for algebra dumps.
//!
//! Rationals are written as strings (`"-1/2"`); matrix entries as
//! `[row, col, "num", "den"]`. Ordering is canonical: basis order for
//! generators and bracket pairs, row-major for matrix entries.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{build_osp, Representation, SuperAlgebra};
use crate::error::{Error, Result};
use crate::parse;
use crate::repmat::GradedMatrix;
use crate::rmatrix::{catalog, LieTensor};
use crate::scalar::{fmt_rational, Rational};

/// Largest rank accepted by the reader.
pub const MAX_RANK: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub a: String,
    pub b: String,
    pub value: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDump {
    pub rank: usize,
    pub labels: Vec<String>,
    pub parity: Vec<u8>,
    pub roots: Vec<Option<Vec<i32>>>,
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDump {
    pub label: String,
    pub entries: Vec<(usize, usize, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDump {
    pub rank: usize,
    pub parities: Vec<u8>,
    pub matrices: Vec<MatrixDump>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RMatrixDump {
    pub name: String,
    pub terms: Vec<(String, String, String)>,
}

fn matrix_entries(m: &GradedMatrix) -> Vec<(usize, usize, String, String)> {
    let mut v: Vec<_> = m.entries().map(|(i, j, c)| (i, j, c.numer().to_string(), c.denom().to_string())).collect();
    v.sort_by_key(|e| (e.0, e.1));
    v
}

pub fn algebra_dump(alg: &SuperAlgebra) -> AlgebraDump {
    let d = alg.dim();
    let mut brackets = Vec::new();
    for a in 0..d {
        for b in 0..d {
            let v = alg.bracket_basis(a, b);
            if !v.is_empty() {
                let value = v.iter().map(|(k, c)| (alg.label(*k).to_string(), fmt_rational(c))).collect();
                brackets.push(BracketEntry { a: alg.label(a).to_string(), b: alg.label(b).to_string(), value });
            }
        }
    }
    AlgebraDump {
        rank: alg.rank(),
        labels: alg.labels().to_vec(),
        parity: (0..d).map(|i| alg.parity(i)).collect(),
        roots: (0..d).map(|i| alg.root(i).map(|r| r.to_vec())).collect(),
        brackets,
    }
}

pub fn rep_dump(alg: &SuperAlgebra, rep: &Representation) -> RepDump {
    RepDump {
        rank: alg.rank(),
        parities: rep.parities.to_vec(),
        matrices: (0..alg.dim())
            .map(|i| MatrixDump { label: alg.label(i).to_string(), entries: matrix_entries(&rep.matrices[i]) })
            .collect(),
    }
}

fn tensor_terms(r: &LieTensor) -> Vec<(String, String, String)> {
    let alg = r.algebra();
    r.terms()
        .iter()
        .map(|(k, c)| (alg.label(k[0]).to_string(), alg.label(k[1]).to_string(), fmt_rational(c)))
        .collect()
}

/// The named constant r-matrices; for ranks other than 2 only the chain with
/// unit coefficients.
pub fn rmatrix_dump(alg: &Arc<SuperAlgebra>) -> Result<Vec<RMatrixDump>> {
    let mut out = Vec::new();
    if alg.rank() == 2 {
        for (name, r) in [
            ("r_j", catalog::r_j(alg)?),
            ("r_esj", catalog::r_esj(alg)?),
            ("r_sj", catalog::r_sj(alg)?),
            ("r_full", catalog::r_full(alg)?),
            ("r_full_abelian", catalog::r_full_abelian(alg)?),
        ] {
            out.push(RMatrixDump { name: name.into(), terms: tensor_terms(&r) });
        }
    }
    let ones = vec![Rational::from_integer(1.into()); alg.rank()];
    out.push(RMatrixDump { name: "r_osp_chain".into(), terms: tensor_terms(&catalog::r_osp_chain(alg, &ones)?) });
    Ok(out)
}

/// What `--dump` writes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DumpKind {
    Algebra,
    Rep,
    RMatrix,
}

impl DumpKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "algebra" => Ok(DumpKind::Algebra),
            "rep" => Ok(DumpKind::Rep),
            "rmatrix" => Ok(DumpKind::RMatrix),
            _ => Err(Error::InvalidOption(format!("unknown dump `{s}` (algebra|rep|rmatrix)"))),
        }
    }
}

/// Canonical pretty JSON for `osp(1|2n)`.
pub fn write(kind: DumpKind, n: usize) -> Result<String> {
    if n == 0 || n > MAX_RANK {
        return Err(Error::InvalidOption(format!("rank {n} outside 1..={MAX_RANK}")));
    }
    let (alg, rep) = build_osp(n);
    let alg = Arc::new(alg);
    let json = match kind {
        DumpKind::Algebra => serde_json::to_string_pretty(&algebra_dump(&alg)),
        DumpKind::Rep => serde_json::to_string_pretty(&rep_dump(&alg, &rep)),
        DumpKind::RMatrix => serde_json::to_string_pretty(&rmatrix_dump(&alg)?),
    };
    json.map_err(|e| Error::Dump(e.to_string()))
}

/// Parse and validate an algebra dump, then rebuild the algebra.
pub fn read_algebra(text: &str) -> Result<SuperAlgebra> {
    let dump: AlgebraDump = serde_json::from_str(text).map_err(|e| Error::Dump(e.to_string()))?;
    from_dump(&dump)
}

pub fn from_dump(dump: &AlgebraDump) -> Result<SuperAlgebra> {
    let bad = |m: String| Err(Error::Dump(m));
    if dump.rank == 0 || dump.rank > MAX_RANK {
        return bad(format!("rank {} outside 1..={MAX_RANK}", dump.rank));
    }
    let d = dump.labels.len();
    let expected = 2 * dump.rank * dump.rank + 3 * dump.rank;
    if d != expected {
        return bad(format!("{d} labels, rank {} needs {expected}", dump.rank));
    }
    if dump.parity.len() != d || dump.roots.len() != d {
        return bad("parity and roots must list every label".into());
    }
    if let Some(p) = dump.parity.iter().find(|&&p| p > 1) {
        return bad(format!("parity {p} is not 0 or 1"));
    }
    for r in dump.roots.iter().flatten() {
        if r.len() != dump.rank {
            return bad(format!("root of length {} for rank {}", r.len(), dump.rank));
        }
    }
    let mut index = std::collections::HashMap::new();
    for (i, l) in dump.labels.iter().enumerate() {
        if index.insert(l.as_str(), i).is_some() {
            return bad(format!("duplicate label `{l}`"));
        }
    }
    let lookup = |l: &str| index.get(l).copied().ok_or_else(|| Error::Dump(format!("unknown label `{l}`")));
    let mut brackets = vec![vec![Vec::new(); d]; d];
    let mut seen = vec![vec![false; d]; d];
    for e in &dump.brackets {
        let (a, b) = (lookup(&e.a)?, lookup(&e.b)?);
        if seen[a][b] {
            return bad(format!("bracket [{}, {}] listed twice", e.a, e.b));
        }
        seen[a][b] = true;
        let mut value: Vec<(usize, Rational)> = Vec::new();
        for (l, c) in &e.value {
            let k = lookup(l)?;
            let q = parse::rational(c)?;
            if value.iter().any(|(j, _)| *j == k) {
                return bad(format!("label `{l}` repeated in [{}, {}]", e.a, e.b));
            }
            if q != Rational::from_integer(0.into()) {
                value.push((k, q));
            }
        }
        value.sort_by_key(|(k, _)| *k);
        brackets[a][b] = value;
    }
    Ok(SuperAlgebra::from_tables(dump.rank, dump.labels.clone(), dump.parity.clone(), dump.roots.clone(), brackets))
}

/// Problems found by re-verifying a dumped algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DumpReport {
    pub jacobi_violations: usize,
    pub antisymmetry_violations: usize,
    pub matches_construction: bool,
}

impl DumpReport {
    pub fn ok(&self) -> bool {
        self.jacobi_violations == 0 && self.antisymmetry_violations == 0 && self.matches_construction
    }
}

pub fn check(alg: &SuperAlgebra) -> DumpReport {
    let (built, _) = build_osp(alg.rank());
    DumpReport {
        jacobi_violations: alg.check_jacobi().len(),
        antisymmetry_violations: alg.check_antisymmetry().len(),
        matches_construction: *alg == built,
    }
}
