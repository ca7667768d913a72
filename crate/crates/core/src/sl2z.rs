//! Exact arithmetic in SL(2,Z).
//!
//! Elements are stored as matrices with arbitrary-precision entries; the word
//! problem is decided by multiplying out. The two generators are
//!
//! ```text
//! s1 = [[1,0],[1,1]]    s2 = [[1,-1],[0,1]]
//! ```
//!
//! which satisfy the braid relation `s1 s2 s1 = s2 s1 s2` and `(s1 s2)^6 = 1`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Sl2zError {
    #[error("determinant of {matrix} is {det}, expected 1")]
    Determinant { matrix: String, det: Box<BigInt> },
    #[error("malformed matrix {0:?}, expected [[a,b],[c,d]]")]
    MatrixSyntax(String),
    #[error("unknown generator token {0:?}, expected one of s1, s1^-1, s2, s2^-1")]
    WordSyntax(String),
    #[error("subword scan over a word of length {len} needs {needed} subwords, limit is {limit}")]
    BudgetExceeded {
        len: usize,
        needed: u128,
        limit: u64,
    },
    #[error("q must be 0 or 1, got {0}")]
    InvalidQ(u8),
}

/// A 2x2 integer matrix of determinant one, `[[a,b],[c,d]]` row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2z {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Sl2z {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, Sl2zError> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        let det = &a * &d - &b * &c;
        if det.is_one() {
            Ok(Sl2z { a, b, c, d })
        } else {
            Err(Sl2zError::Determinant {
                matrix: format!("[[{a},{b}],[{c},{d}]]"),
                det: Box::new(det),
            })
        }
    }

    fn from_raw(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        debug_assert!((&a * &d - &b * &c).is_one());
        Sl2z { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::from_raw(1.into(), 0.into(), 0.into(), 1.into())
    }

    pub fn neg_identity() -> Self {
        Self::from_raw((-1).into(), 0.into(), 0.into(), (-1).into())
    }

    pub fn s1() -> Self {
        Self::from_raw(1.into(), 0.into(), 1.into(), 1.into())
    }

    pub fn s2() -> Self {
        Self::from_raw(1.into(), (-1).into(), 0.into(), 1.into())
    }

    /// `s1^k = [[1,0],[k,1]]`, any integer `k`.
    pub fn s1_pow(k: impl Into<BigInt>) -> Self {
        Self::from_raw(1.into(), 0.into(), k.into(), 1.into())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Entries as machine integers, `None` if any does not fit.
    pub fn to_i64(&self) -> Option<[i64; 4]> {
        Some([
            self.a.to_i64()?,
            self.b.to_i64()?,
            self.c.to_i64()?,
            self.d.to_i64()?,
        ])
    }

    pub fn from_i64(m: [i64; 4]) -> Result<Self, Sl2zError> {
        Self::new(m[0], m[1], m[2], m[3])
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries().into_iter().map(|x| x.abs()).max().unwrap()
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn mul(&self, rhs: &Sl2z) -> Sl2z {
        Sl2z::from_raw(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }

    pub fn inverse(&self) -> Sl2z {
        Sl2z::from_raw(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    /// `p · self · p⁻¹`.
    pub fn conjugate_by(&self, p: &Sl2z) -> Sl2z {
        p.mul(self).mul(&p.inverse())
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, exp: i64) -> Sl2z {
        let mut base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Sl2z::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Image of the column vector `(x, y)ᵀ`.
    pub fn apply(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (&self.a * x + &self.b * y, &self.c * x + &self.d * y)
    }
}

impl Mul for &Sl2z {
    type Output = Sl2z;
    fn mul(self, rhs: &Sl2z) -> Sl2z {
        Sl2z::mul(self, rhs)
    }
}

impl fmt::Display for Sl2z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Sl2z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Sl2z {
    type Err = Sl2zError;

    /// Parses `[[a,b],[c,d]]`; whitespace anywhere is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Sl2zError::MatrixSyntax(s.trim().to_string());
        let inner = compact
            .strip_prefix("[[")
            .and_then(|r| r.strip_suffix("]]"))
            .ok_or_else(bad)?;
        let (row0, row1) = inner.split_once("],[").ok_or_else(bad)?;
        let mut nums = Vec::with_capacity(4);
        for row in [row0, row1] {
            let (x, y) = row.split_once(',').ok_or_else(bad)?;
            for tok in [x, y] {
                nums.push(tok.parse::<BigInt>().map_err(|_| bad())?);
            }
        }
        let [a, b, c, d]: [BigInt; 4] = nums.try_into().map_err(|_| bad())?;
        Sl2z::new(a, b, c, d)
    }
}

/// One letter of a word over `{s1, s1⁻¹, s2, s2⁻¹}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    S1,
    S1Inv,
    S2,
    S2Inv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::S1, Letter::S1Inv, Letter::S2, Letter::S2Inv];

    /// Letter for generator `label` (1 or 2) raised to `sign` (+1 or -1).
    pub fn from_label(label: u8, positive: bool) -> Option<Letter> {
        match (label, positive) {
            (1, true) => Some(Letter::S1),
            (1, false) => Some(Letter::S1Inv),
            (2, true) => Some(Letter::S2),
            (2, false) => Some(Letter::S2Inv),
            _ => None,
        }
    }

    pub fn matrix(self) -> Sl2z {
        match self {
            Letter::S1 => Sl2z::s1(),
            Letter::S1Inv => Sl2z::s1().inverse(),
            Letter::S2 => Sl2z::s2(),
            Letter::S2Inv => Sl2z::s2().inverse(),
        }
    }

    pub fn inverse(self) -> Letter {
        match self {
            Letter::S1 => Letter::S1Inv,
            Letter::S1Inv => Letter::S1,
            Letter::S2 => Letter::S2Inv,
            Letter::S2Inv => Letter::S2,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Letter::S1 => "s1",
            Letter::S1Inv => "s1^-1",
            Letter::S2 => "s2",
            Letter::S2Inv => "s2^-1",
        }
    }
}

impl FromStr for Letter {
    type Err = Sl2zError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "s1" => Ok(Letter::S1),
            "s1^-1" => Ok(Letter::S1Inv),
            "s2" => Ok(Letter::S2),
            "s2^-1" => Ok(Letter::S2Inv),
            other => Err(Sl2zError::WordSyntax(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GeneratorWord {
    pub letters: Vec<Letter>,
}

impl GeneratorWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        GeneratorWord { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The word repeated `times` times.
    pub fn repeat(&self, times: usize) -> Self {
        GeneratorWord::new(self.letters.repeat(times))
    }

    pub fn concat(&self, other: &GeneratorWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GeneratorWord::new(letters)
    }

    pub fn inverse(&self) -> Self {
        GeneratorWord::new(self.letters.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `(s1 s2)^{3q} s1^k`.
    pub fn boundary_word(q: u8, k: usize) -> Self {
        let mut letters = Vec::with_capacity(6 * q as usize + k);
        for _ in 0..3 * q as usize {
            letters.push(Letter::S1);
            letters.push(Letter::S2);
        }
        letters.extend(std::iter::repeat_n(Letter::S1, k));
        GeneratorWord::new(letters)
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(l.token())?;
        }
        Ok(())
    }
}

impl FromStr for GeneratorWord {
    type Err = Sl2zError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split_whitespace()
            .map(Letter::from_str)
            .collect::<Result<Vec<_>, _>>()
            .map(GeneratorWord::new)
    }
}

/// Left-to-right product of the generator matrices.
pub fn eval_word(word: &GeneratorWord) -> Sl2z {
    word.letters
        .iter()
        .fold(Sl2z::identity(), |acc, l| acc.mul(&l.matrix()))
}

/// Witness that an element is conjugate to `s1`:
/// the element equals `[[1+qs, -q²],[s², 1-qs]]` with `gcd(q,s) = 1`.
///
/// `(q,s)` and `(-q,-s)` witness the same element; the stored one has
/// `s > 0`, or `s = 0` and `q > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistWitness {
    pub q: BigInt,
    pub s: BigInt,
}

impl TwistWitness {
    pub fn element(&self) -> Sl2z {
        let qs = &self.q * &self.s;
        Sl2z::from_raw(
            BigInt::one() + &qs,
            -(&self.q * &self.q),
            &self.s * &self.s,
            BigInt::one() - &qs,
        )
    }

    /// A matrix `P` with `P · s1 · P⁻¹ = element()`; its second column is `(q,s)ᵀ`.
    pub fn conjugator(&self) -> Sl2z {
        // x·s - y·q = 1 from the extended gcd of (s, q).
        let eg = self.s.extended_gcd(&self.q);
        let (x, y) = if eg.gcd.is_one() {
            (eg.x, -eg.y)
        } else {
            (-eg.x, eg.y)
        };
        Sl2z::from_raw(x, self.q.clone(), y, self.s.clone())
    }
}

/// Decides whether `m` is conjugate to `s1` in SL(2,Z).
///
/// Conjugates of `s1` are exactly `I + v·(Jv)ᵀ` for a primitive vector
/// `v = (q,s)`, so `m - I` must be `[[qs, -q²],[s², -qs]]`.
pub fn is_positive_twist(m: &Sl2z) -> Option<TwistWitness> {
    if m.is_identity() {
        return None;
    }
    let lower = &m.c;
    let upper = -&m.b;
    if lower.is_negative() || upper.is_negative() {
        return None;
    }
    let s = lower.sqrt();
    let q_abs = upper.sqrt();
    if &(&s * &s) != lower || (&q_abs * &q_abs) != upper {
        return None;
    }
    let a_minus_one = &m.a - BigInt::one();
    let q = if (&q_abs * &s) == a_minus_one {
        q_abs
    } else if -(&q_abs * &s) == a_minus_one {
        -q_abs
    } else {
        return None;
    };
    if &m.d - BigInt::one() != -(&q * &s) {
        return None;
    }
    if !q.gcd(&s).is_one() {
        return None;
    }
    let (q, s) = if s.is_zero() && q.is_negative() {
        (-q, s)
    } else {
        (q, s)
    };
    let w = TwistWitness { q, s };
    debug_assert_eq!(&w.element(), m);
    Some(w)
}

/// Outcome of [`subword_identity_scan`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubwordReport {
    pub word: GeneratorWord,
    pub scanned: u64,
    /// Each identity subword as the sorted positions it keeps.
    pub identity_subwords: Vec<Vec<usize>>,
}

impl SubwordReport {
    pub fn only_empty(&self) -> bool {
        self.identity_subwords.len() == 1 && self.identity_subwords[0].is_empty()
    }
}

/// Enumerates every subword of `(s1 s2)^{3q} s1^k` and collects those that
/// evaluate to the identity. `limit` caps the number of subwords examined.
pub fn subword_identity_scan(q: u8, k: usize, limit: u64) -> Result<SubwordReport, Sl2zError> {
    if q > 1 {
        return Err(Sl2zError::InvalidQ(q));
    }
    let word = GeneratorWord::boundary_word(q, k);
    let len = word.len();
    let needed: u128 = 1u128 << len.min(127);
    if len >= 127 || needed > limit as u128 {
        return Err(Sl2zError::BudgetExceeded { len, needed, limit });
    }
    let mats: Vec<Sl2z> = word.letters.iter().map(|l| l.matrix()).collect();
    let mut identity_subwords = Vec::new();
    let mut kept = Vec::with_capacity(len);
    scan_rec(
        &mats,
        0,
        Sl2z::identity(),
        &mut kept,
        &mut identity_subwords,
    );
    identity_subwords.sort();
    Ok(SubwordReport {
        word,
        scanned: needed as u64,
        identity_subwords,
    })
}

fn scan_rec(
    mats: &[Sl2z],
    pos: usize,
    acc: Sl2z,
    kept: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if pos == mats.len() {
        if acc.is_identity() {
            out.push(kept.clone());
        }
        return;
    }
    scan_rec(mats, pos + 1, acc.clone(), kept, out);
    kept.push(pos);
    scan_rec(mats, pos + 1, acc.mul(&mats[pos]), kept, out);
    kept.pop();
}
