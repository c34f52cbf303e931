//! The defining representation of osp(1|2n) and its Cartan-Weyl basis.
//!
//! Coordinates are ordered `e1..en, o, e-n..e-1` with the single odd
//! coordinate `o` in the middle. The invariant form is
//! `B(e_k, e_-k) = 1 = -B(e_-k, e_k)`, `B(o, o) = 1`, and with `E(a, b)` the
//! matrix unit the generators are
//!
//! ```text
//! H_k    = E(k,k) - E(-k,-k)
//! v_k+   = E(k,o) + E(o,-k)          v_k-   = -E(o,k) + E(-k,o)
//! X_k+   = E(k,-k)                   X_k-   = E(-k,k)
//! Z_kj+  = E(k,j) - E(-j,-k)         Z_kj-  = E(j,k) - E(-k,-j)
//! U_kj+  = E(k,-j) + E(j,-k)         U_kj-  = E(-j,k) + E(-k,j)
//! ```
//!
//! With these unit scalings every printed relation holds with its printed
//! coefficient, `X_k+ = v_k+^2`, `X_k- = -v_k-^2` and `[X_k+, X_k-] = H_k`.

use std::sync::Arc;

use crate::scalar::{int, Rational};

/// Root data and matrix of one basis element before assembly.
pub(super) struct Generator {
    pub label: String,
    pub alias: Option<String>,
    pub parity: u8,
    pub root: Option<Vec<i32>>,
    pub entries: Vec<(usize, usize, Rational)>,
    pub height: i32,
}

/// Coordinate of `e_k` (k > 0), `e_-k` (k < 0) or `o` (k = 0), 1-based `k`.
fn coord(n: usize, k: i64) -> usize {
    match k {
        0 => n,
        k if k > 0 => (k - 1) as usize,
        k => 2 * n - (-k - 1) as usize,
    }
}

pub(super) fn grading(n: usize) -> Arc<[u8]> {
    (0..2 * n + 1).map(|i| u8::from(i == n)).collect()
}

fn unit(n: usize, a: i64, b: i64, c: i64) -> (usize, usize, Rational) {
    (coord(n, a), coord(n, b), int(c))
}

fn eps(n: usize, terms: &[(usize, i32)]) -> Vec<i32> {
    let mut r = vec![0; n];
    for &(k, c) in terms {
        r[k - 1] += c;
    }
    r
}

/// Height in the simple roots `eps_k - eps_(k+1)`, `eps_n`: each `eps_k`
/// counts `n - k + 1`.
fn height(n: usize, root: &[i32]) -> i32 {
    root.iter().enumerate().map(|(i, c)| c * (n - i) as i32).sum()
}

fn osp4_alias(label: &str) -> Option<&'static str> {
    Some(match label {
        "H1" => "H",
        "H2" => "J",
        "v1+" => "v+",
        "v1-" => "v-",
        "v2+" => "w+",
        "v2-" => "w-",
        "X1+" => "X+",
        "X1-" => "X-",
        "X2+" => "Y+",
        "X2-" => "Y-",
        "Z1_2+" => "Z+",
        "Z1_2-" => "Z-",
        "U1_2+" => "U+",
        "U1_2-" => "U-",
        _ => return None,
    })
}

/// All generators in PBW order: Cartan, positive even by height, positive
/// odd by height, then the negatives in the same pattern.
pub(super) fn generators(n: usize) -> Vec<Generator> {
    let ni = n as i64;
    let mut cartan = Vec::new();
    let mut pos_even = Vec::new();
    let mut pos_odd = Vec::new();
    let mut neg_even = Vec::new();
    let mut neg_odd = Vec::new();
    let mk = |label: String, parity: u8, root: Option<Vec<i32>>, entries: Vec<(usize, usize, Rational)>| {
        let h = root.as_deref().map_or(0, |r| height(n, r));
        Generator { alias: None, label, parity, root, entries, height: h }
    };
    for k in 1..=ni {
        let ku = k as usize;
        cartan.push(mk(format!("H{k}"), 0, None, vec![unit(n, k, k, 1), unit(n, -k, -k, -1)]));
        pos_odd.push(mk(
            format!("v{k}+"),
            1,
            Some(eps(n, &[(ku, 1)])),
            vec![unit(n, k, 0, 1), unit(n, 0, -k, 1)],
        ));
        neg_odd.push(mk(
            format!("v{k}-"),
            1,
            Some(eps(n, &[(ku, -1)])),
            vec![unit(n, 0, k, -1), unit(n, -k, 0, 1)],
        ));
        pos_even.push(mk(format!("X{k}+"), 0, Some(eps(n, &[(ku, 2)])), vec![unit(n, k, -k, 1)]));
        neg_even.push(mk(format!("X{k}-"), 0, Some(eps(n, &[(ku, -2)])), vec![unit(n, -k, k, 1)]));
    }
    for k in 1..=ni {
        for j in (k + 1)..=ni {
            let (ku, ju) = (k as usize, j as usize);
            pos_even.push(mk(
                format!("Z{k}_{j}+"),
                0,
                Some(eps(n, &[(ku, 1), (ju, -1)])),
                vec![unit(n, k, j, 1), unit(n, -j, -k, -1)],
            ));
            neg_even.push(mk(
                format!("Z{k}_{j}-"),
                0,
                Some(eps(n, &[(ku, -1), (ju, 1)])),
                vec![unit(n, j, k, 1), unit(n, -k, -j, -1)],
            ));
            pos_even.push(mk(
                format!("U{k}_{j}+"),
                0,
                Some(eps(n, &[(ku, 1), (ju, 1)])),
                vec![unit(n, k, -j, 1), unit(n, j, -k, 1)],
            ));
            neg_even.push(mk(
                format!("U{k}_{j}-"),
                0,
                Some(eps(n, &[(ku, -1), (ju, -1)])),
                vec![unit(n, -j, k, 1), unit(n, -k, j, 1)],
            ));
        }
    }
    // stable sorts keep the construction order among equal heights
    pos_even.sort_by_key(|g| g.height);
    pos_odd.sort_by_key(|g| g.height);
    neg_even.sort_by_key(|g| -g.height);
    neg_odd.sort_by_key(|g| -g.height);
    let mut all: Vec<Generator> = cartan
        .into_iter()
        .chain(pos_even)
        .chain(pos_odd)
        .chain(neg_even)
        .chain(neg_odd)
        .collect();
    if n == 2 {
        for g in &mut all {
            if let Some(a) = osp4_alias(&g.label) {
                let general = std::mem::replace(&mut g.label, a.to_string());
                g.alias = Some(general);
            }
        }
    }
    all
}
