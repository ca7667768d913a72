//! Independent oracles for integration tests: plain `i64` matrix arithmetic
//! and brute-force enumerations that do not go through the library's
//! twist test or certificate logic.

#![allow(dead_code)]

use std::collections::BTreeSet;

use mono_core::factorization::Factorization;
use mono_core::sl2z::Sl2z;

pub type M = [i64; 4];

pub const I: M = [1, 0, 0, 1];
pub const S1: M = [1, 0, 1, 1];
pub const S2: M = [1, -1, 0, 1];

pub fn mul(x: M, y: M) -> M {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

pub fn inv(x: M) -> M {
    [x[3], -x[1], -x[2], x[0]]
}

pub fn det(x: M) -> i64 {
    x[0] * x[3] - x[1] * x[2]
}

pub fn prod(xs: &[M]) -> M {
    xs.iter().fold(I, |acc, &x| mul(acc, x))
}

pub fn neg(x: M) -> M {
    [-x[0], -x[1], -x[2], -x[3]]
}

pub fn pow(x: M, n: usize) -> M {
    (0..n).fold(I, |acc, _| mul(acc, x))
}

pub fn to_lib(x: M) -> Sl2z {
    Sl2z::from_i64(x).unwrap()
}

pub fn fact(xs: &[M]) -> Factorization {
    Factorization::new(xs.iter().map(|&x| to_lib(x)).collect()).unwrap()
}

pub fn from_lib(f: &Factorization) -> Vec<M> {
    f.entries().iter().map(|e| e.to_i64().unwrap()).collect()
}

/// Every matrix `P s1 P⁻¹` with `P` ranging over all of SL(2,Z) with
/// entries in `[-reach, reach]`, kept when its entries lie in `[-bound, bound]`.
pub fn twists_by_conjugation(reach: i64, bound: i64) -> BTreeSet<M> {
    let mut out = BTreeSet::new();
    let r = -reach..=reach;
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    let p = [a, b, c, d];
                    if det(p) != 1 {
                        continue;
                    }
                    let t = mul(mul(p, S1), inv(p));
                    if t.iter().all(|e| e.abs() <= bound) {
                        out.insert(t);
                    }
                }
            }
        }
    }
    out
}

/// `(q, k)` when `m = (-I)^q s1^k` with `k ≥ 0`.
pub fn boundary_of(m: M) -> Option<(u8, u64)> {
    match m {
        [1, 0, k, 1] if k >= 0 => Some((0, k as u64)),
        [-1, 0, c, -1] if c <= 0 => Some((1, (-c) as u64)),
        _ => None,
    }
}

/// All tuples of length `1..=max_len` over `alphabet` whose product is
/// admissible.
pub fn admissible_tuples(alphabet: &[M], max_len: usize) -> Vec<Vec<M>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(alphabet: &[M], max_len: usize, acc: M, cur: &mut Vec<M>, out: &mut Vec<Vec<M>>) {
        if !cur.is_empty() && boundary_of(acc).is_some() {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for &x in alphabet {
            cur.push(x);
            rec(alphabet, max_len, mul(acc, x), cur, out);
            cur.pop();
        }
    }
    rec(alphabet, max_len, I, &mut cur, &mut out);
    out
}

/// Plain Hurwitz move on an `i64` tuple, 0-based index.
pub fn hurwitz(xs: &mut [M], index: usize, right: bool) {
    let (a, b) = (xs[index], xs[index + 1]);
    if right {
        xs[index] = mul(mul(a, b), inv(a));
        xs[index + 1] = a;
    } else {
        xs[index] = b;
        xs[index + 1] = mul(mul(inv(b), a), b);
    }
}
