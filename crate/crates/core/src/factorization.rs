//! Monodromy factorizations and Hurwitz moves.
//!
//! A factorization is an ordered tuple `(g_1, …, g_n)` of conjugates of `s1`.
//! Hurwitz moves preserve the ordered product `g_1 ⋯ g_n`, and once the
//! product has the shape `(s1 s2)^{3q} s1^k` with `k ≥ 0` the orbit is
//! determined by `(q, k, n)` alone.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::orbit::{self, SearchConfig};
use crate::sl2z::{is_positive_twist, Sl2z};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorizationError {
    #[error("entry {index} ({entry}) is not conjugate to s1")]
    NotPositiveTwist { index: usize, entry: Box<Sl2z> },
    #[error("move index {index} out of range for a factorization of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("global monodromy {0} is not of the form (s1 s2)^(3q) s1^k with k >= 0")]
    NotAdmissible(Box<Sl2z>),
    #[error("length {n} with boundary type (q={q}, k={k}) violates n = 12p + 6q + k, p >= 0")]
    InvariantViolation { n: usize, q: u8, k: u64 },
    #[error("invalid canonical-form parameters p={p}, q={q}, k={k}")]
    InvalidParameters { p: i64, q: i64, k: i64 },
}

/// An ordered sequence of positive Dehn twists, i.e. conjugates of `s1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    entries: Vec<Sl2z>,
}

impl Factorization {
    /// Builds a factorization, rejecting entries that are not conjugate to `s1`.
    pub fn new(entries: Vec<Sl2z>) -> Result<Self, FactorizationError> {
        for (index, entry) in entries.iter().enumerate() {
            if is_positive_twist(entry).is_none() {
                return Err(FactorizationError::NotPositiveTwist {
                    index,
                    entry: Box::new(entry.clone()),
                });
            }
        }
        Ok(Factorization { entries })
    }

    #[cfg(test)]
    pub(crate) fn new_unchecked(entries: Vec<Sl2z>) -> Self {
        Factorization { entries }
    }

    /// Internal constructor for results of moves on already valid entries.
    pub(crate) fn from_valid(entries: Vec<Sl2z>) -> Self {
        debug_assert!(entries.iter().all(|e| is_positive_twist(e).is_some()));
        Factorization { entries }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Sl2z] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Sl2z> {
        self.entries
    }

    /// `self · other`, concatenation.
    pub fn concat(&self, other: &Factorization) -> Factorization {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Factorization { entries }
    }

    /// Concatenation of `times` copies.
    pub fn repeat(&self, times: usize) -> Factorization {
        Factorization {
            entries: (0..times)
                .flat_map(|_| self.entries.iter().cloned())
                .collect(),
        }
    }

    /// Appends `count` copies of `s1`.
    pub fn with_s1_appended(&self, count: usize) -> Factorization {
        let mut entries = self.entries.clone();
        entries.extend(std::iter::repeat_n(Sl2z::s1(), count));
        Factorization { entries }
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries
            .iter()
            .map(Sl2z::max_abs_entry)
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Left-to-right product; the empty product is the identity.
    pub fn product(&self) -> Sl2z {
        self.entries
            .iter()
            .fold(Sl2z::identity(), |acc, g| acc.mul(g))
    }

    pub fn hurwitz_move(&self, mv: Move) -> Result<Factorization, FactorizationError> {
        let mut entries = self.entries.clone();
        apply_move_in_place(&mut entries, mv)?;
        Ok(Factorization { entries })
    }

    pub fn apply_moves(&self, moves: &[Move]) -> Result<Factorization, FactorizationError> {
        let mut entries = self.entries.clone();
        for &mv in moves {
            apply_move_in_place(&mut entries, mv)?;
        }
        Ok(Factorization { entries })
    }

    pub fn boundary_type(&self) -> Option<BoundaryType> {
        boundary_type_of(&self.product())
    }
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.entries).finish()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// `(a, b) → (a b a⁻¹, a)`
    Right,
    /// `(a, b) → (b, b⁻¹ a b)`
    Left,
}

impl Direction {
    pub fn inverse(self) -> Direction {
        match self {
            Direction::Right => Direction::Left,
            Direction::Left => Direction::Right,
        }
    }
}

/// A Hurwitz move acting on positions `index` and `index + 1` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub index: usize,
    pub dir: Direction,
}

impl Move {
    pub fn right(index: usize) -> Self {
        Move {
            index,
            dir: Direction::Right,
        }
    }

    pub fn left(index: usize) -> Self {
        Move {
            index,
            dir: Direction::Left,
        }
    }

    pub fn inverse(self) -> Move {
        Move {
            index: self.index,
            dir: self.dir.inverse(),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.dir {
            Direction::Right => 'R',
            Direction::Left => 'L',
        };
        write!(f, "{d}{}", self.index)
    }
}

/// Inverse of a move sequence.
pub fn invert_moves(moves: &[Move]) -> Vec<Move> {
    moves.iter().rev().map(|m| m.inverse()).collect()
}

fn apply_move_in_place(entries: &mut [Sl2z], mv: Move) -> Result<(), FactorizationError> {
    let len = entries.len();
    if mv.index + 1 >= len {
        return Err(FactorizationError::IndexOutOfRange {
            index: mv.index,
            len,
        });
    }
    let (a, b) = (&entries[mv.index], &entries[mv.index + 1]);
    let (x, y) = match mv.dir {
        Direction::Right => (b.conjugate_by(a), a.clone()),
        Direction::Left => (b.clone(), a.conjugate_by(&b.inverse())),
    };
    entries[mv.index] = x;
    entries[mv.index + 1] = y;
    Ok(())
}

/// Shape of the global monodromy, `(s1 s2)^{3q} · s1^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryType {
    pub q: u8,
    pub k: u64,
}

impl BoundaryType {
    pub fn monodromy(&self) -> Sl2z {
        let base = Sl2z::s1_pow(self.k);
        if self.q == 1 {
            Sl2z::neg_identity().mul(&base)
        } else {
            base
        }
    }
}

impl fmt::Display for BoundaryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.q, self.k)
    }
}

/// `[[1,0],[k,1]]` gives `(0,k)`; `[[-1,0],[-k,-1]]` gives `(1,k)`; `k ≥ 0`.
pub fn boundary_type_of(m: &Sl2z) -> Option<BoundaryType> {
    if !m.b().is_zero() {
        return None;
    }
    let one = BigInt::one();
    let (q, k) = if m.a() == &one && m.d() == &one {
        (0, m.c().clone())
    } else if m.a() == &-&one && m.d() == &-&one {
        (1, -m.c())
    } else {
        return None;
    };
    let k = k.to_u64()?;
    Some(BoundaryType { q, k })
}

/// `(s1, s2)^{6p+3q} · (s1)^k`, of length `12p + 6q + k`.
pub fn canonical_form(p: i64, q: i64, k: i64) -> Result<Factorization, FactorizationError> {
    if p < 0 || !(0..=1).contains(&q) || k < 0 {
        return Err(FactorizationError::InvalidParameters { p, q, k });
    }
    let pairs = (6 * p + 3 * q) as usize;
    let mut entries = Vec::with_capacity(2 * pairs + k as usize);
    for _ in 0..pairs {
        entries.push(Sl2z::s1());
        entries.push(Sl2z::s2());
    }
    entries.extend(std::iter::repeat_n(Sl2z::s1(), k as usize));
    Ok(Factorization { entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate {
    pub p: u64,
    pub q: u8,
    pub k: u64,
}

impl Certificate {
    pub fn length(&self) -> u64 {
        12 * self.p + 6 * self.q as u64 + self.k
    }

    pub fn canonical(&self) -> Factorization {
        canonical_form(self.p as i64, self.q as i64, self.k as i64)
            .expect("certificate parameters are non-negative")
    }

    pub fn boundary(&self) -> BoundaryType {
        BoundaryType {
            q: self.q,
            k: self.k,
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} q={} k={}", self.p, self.q, self.k)
    }
}

/// Computes `(p, q, k)` from the boundary type and the length.
pub fn certificate(f: &Factorization) -> Result<Certificate, FactorizationError> {
    let bt = f
        .boundary_type()
        .ok_or_else(|| FactorizationError::NotAdmissible(Box::new(f.product())))?;
    let n = f.len() as u64;
    let offset = 6 * bt.q as u64 + bt.k;
    if n < offset || !(n - offset).is_multiple_of(12) {
        return Err(FactorizationError::InvariantViolation {
            n: f.len(),
            q: bt.q,
            k: bt.k,
        });
    }
    Ok(Certificate {
        p: (n - offset) / 12,
        q: bt.q,
        k: bt.k,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub certificate: Certificate,
    pub canonical: Factorization,
    /// Moves taking the input to `canonical`, when a search found them.
    pub moves: Option<Vec<Move>>,
}

/// Certificate and canonical representative of the Hurwitz class of `f`.
pub fn normalize(f: &Factorization) -> Result<NormalForm, FactorizationError> {
    let certificate = certificate(f)?;
    Ok(NormalForm {
        certificate,
        canonical: certificate.canonical(),
        moves: None,
    })
}

/// Like [`normalize`], additionally searching for an explicit move sequence.
/// The certificate does not depend on the search succeeding.
pub fn normalize_with_moves(
    f: &Factorization,
    config: &SearchConfig,
) -> Result<NormalForm, FactorizationError> {
    let mut nf = normalize(f)?;
    nf.moves = orbit::find_moves_to(f, &nf.canonical, config);
    Ok(nf)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotEquivalentReason {
    BoundaryType(BoundaryType, BoundaryType),
    Length(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent {
        boundary: BoundaryType,
        length: usize,
    },
    NotEquivalent(NotEquivalentReason),
    /// One of the products is not `(s1 s2)^{3q} s1^k` with `k ≥ 0`;
    /// `first` / `second` tell which.
    NotAdmissible {
        first: bool,
        second: bool,
    },
}

impl fmt::Display for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Equivalence::Equivalent { boundary, length } => write!(
                f,
                "equivalent (certificate: same boundary type {boundary}, same length {length})"
            ),
            Equivalence::NotEquivalent(NotEquivalentReason::BoundaryType(a, b)) => {
                write!(f, "not equivalent (boundary type {a} vs {b})")
            }
            Equivalence::NotEquivalent(NotEquivalentReason::Length(a, b)) => {
                write!(f, "not equivalent (length {a} vs {b})")
            }
            Equivalence::NotAdmissible { first, second } => {
                let which = match (first, second) {
                    (true, true) => "both inputs",
                    (true, false) => "first input",
                    _ => "second input",
                };
                write!(
                    f,
                    "not admissible ({which} has non-admissible global monodromy)"
                )
            }
        }
    }
}

/// Decides Hurwitz equivalence of two admissible factorizations: same boundary
/// type and same length.
pub fn equivalent(f1: &Factorization, f2: &Factorization) -> Equivalence {
    let (b1, b2) = (f1.boundary_type(), f2.boundary_type());
    match (b1, b2) {
        (Some(b1), Some(b2)) => {
            if b1 != b2 {
                Equivalence::NotEquivalent(NotEquivalentReason::BoundaryType(b1, b2))
            } else if f1.len() != f2.len() {
                Equivalence::NotEquivalent(NotEquivalentReason::Length(f1.len(), f2.len()))
            } else {
                Equivalence::Equivalent {
                    boundary: b1,
                    length: f1.len(),
                }
            }
        }
        (b1, b2) => Equivalence::NotAdmissible {
            first: b1.is_none(),
            second: b2.is_none(),
        },
    }
}

/// Seeded pseudorandom move sequence valid for a factorization of length `len`.
pub fn random_moves(len: usize, seed: u64, steps: usize) -> Vec<Move> {
    if len < 2 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..steps)
        .map(|_| Move {
            index: rng.gen_range(0..len - 1),
            dir: if rng.gen::<bool>() {
                Direction::Right
            } else {
                Direction::Left
            },
        })
        .collect()
}

/// Applies `steps` seeded random Hurwitz moves.
pub fn scramble(f: &Factorization, seed: u64, steps: usize) -> Factorization {
    scramble_with_moves(f, seed, steps).0
}

/// [`scramble`], also returning the moves applied.
pub fn scramble_with_moves(
    f: &Factorization,
    seed: u64,
    steps: usize,
) -> (Factorization, Vec<Move>) {
    let moves = random_moves(f.len(), seed, steps);
    let out = f
        .apply_moves(&moves)
        .expect("random moves are generated in range");
    (out, moves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Sl2z {
        Sl2z::new(a, b, c, d).unwrap()
    }

    fn fact(entries: Vec<Sl2z>) -> Factorization {
        Factorization::new(entries).unwrap()
    }

    #[test]
    fn rejects_non_twist_entries() {
        let err = Factorization::new(vec![Sl2z::s1(), Sl2z::s1().pow(2)]).unwrap_err();
        assert!(matches!(
            err,
            FactorizationError::NotPositiveTwist { index: 1, .. }
        ));
    }

    #[test]
    fn product_examples() {
        assert!(Factorization::empty().product().is_identity());
        let base = fact(vec![Sl2z::s1(), Sl2z::s2()]);
        assert!(base.repeat(6).product().is_identity());
        assert_eq!(base.repeat(3).product(), Sl2z::neg_identity());
    }

    #[test]
    fn hurwitz_move_examples() {
        let f = fact(vec![Sl2z::s1(), Sl2z::s2()]);
        let r = f.hurwitz_move(Move::right(0)).unwrap();
        assert_eq!(r.entries(), &[m(2, -1, 1, 0), Sl2z::s1()]);
        assert_eq!(r.product(), f.product());
        assert_eq!(r.hurwitz_move(Move::left(0)).unwrap(), f);

        let l = f.hurwitz_move(Move::left(0)).unwrap();
        let s2 = Sl2z::s2();
        let expected = s2.inverse().mul(&Sl2z::s1()).mul(&s2);
        assert_eq!(expected, m(2, -1, 1, 0));
        assert_eq!(l.entries(), &[Sl2z::s2(), expected]);
        assert_eq!(l.product(), f.product());

        assert!(matches!(
            f.hurwitz_move(Move::right(1)),
            Err(FactorizationError::IndexOutOfRange { index: 1, len: 2 })
        ));
    }

    #[test]
    fn boundary_type_examples() {
        assert_eq!(
            boundary_type_of(&Sl2z::identity()),
            Some(BoundaryType { q: 0, k: 0 })
        );
        assert_eq!(
            boundary_type_of(&m(1, 0, 3, 1)),
            Some(BoundaryType { q: 0, k: 3 })
        );
        assert_eq!(boundary_type_of(&m(-1, 0, 4, -1)), None);
        assert_eq!(
            boundary_type_of(&m(-1, 0, -4, -1)),
            Some(BoundaryType { q: 1, k: 4 })
        );
        assert_eq!(boundary_type_of(&m(1, 0, -1, 1)), None);
        assert_eq!(boundary_type_of(&Sl2z::s2()), None);
        for q in 0..=1u8 {
            for k in 0..6 {
                let bt = BoundaryType { q, k };
                assert_eq!(boundary_type_of(&bt.monodromy()), Some(bt));
            }
        }
    }

    #[test]
    fn canonical_form_examples() {
        assert!(canonical_form(0, 0, 0).unwrap().is_empty());
        let c = canonical_form(1, 0, 0).unwrap();
        assert_eq!(c.len(), 12);
        for (i, e) in c.entries().iter().enumerate() {
            let want = if i % 2 == 0 { Sl2z::s1() } else { Sl2z::s2() };
            assert_eq!(e, &want);
        }
        let c = canonical_form(0, 1, 4).unwrap();
        let (s1, s2) = (Sl2z::s1(), Sl2z::s2());
        assert_eq!(
            c.entries(),
            &[
                s1.clone(),
                s2.clone(),
                s1.clone(),
                s2.clone(),
                s1.clone(),
                s2,
                s1.clone(),
                s1.clone(),
                s1.clone(),
                s1
            ]
        );
        assert!(canonical_form(-1, 0, 0).is_err());
        assert!(canonical_form(0, 2, 0).is_err());
        assert!(canonical_form(0, 0, -3).is_err());
    }

    #[test]
    fn normalize_examples() {
        let f = canonical_form(0, 1, 0).unwrap();
        let nf = normalize(&f).unwrap();
        assert_eq!(nf.certificate, Certificate { p: 0, q: 1, k: 0 });
        assert_eq!(nf.canonical, f);

        let g = fact(vec![m(2, -1, 1, 0), Sl2z::s1()]);
        assert_eq!(g.product(), Sl2z::s1().mul(&Sl2z::s2()));
        assert!(matches!(
            normalize(&g),
            Err(FactorizationError::NotAdmissible(_))
        ));

        let base = canonical_form(1, 1, 2).unwrap();
        let scrambled = scramble(&base, 2024, 120);
        let nf = normalize(&scrambled).unwrap();
        assert_eq!(nf.certificate, Certificate { p: 1, q: 1, k: 2 });
        assert_eq!(nf.canonical, base);
    }

    #[test]
    fn normalize_reports_invariant_violation_for_bogus_entries() {
        // s1^2 is not a twist, so this input breaks the type invariant
        let bogus = Factorization::new_unchecked(vec![Sl2z::s1().pow(2)]);
        assert!(matches!(
            normalize(&bogus),
            Err(FactorizationError::InvariantViolation { n: 1, q: 0, k: 2 })
        ));
    }

    #[test]
    fn equivalence_examples() {
        let s = fact(vec![Sl2z::s1()]);
        assert!(matches!(
            equivalent(&s, &s),
            Equivalence::Equivalent { length: 1, .. }
        ));
        let c1 = canonical_form(1, 0, 0).unwrap();
        let sc = scramble(&c1, 99, 120);
        assert_ne!(sc, c1);
        assert!(matches!(
            equivalent(&c1, &sc),
            Equivalence::Equivalent { length: 12, .. }
        ));
        let c2 = canonical_form(2, 0, 0).unwrap();
        assert_eq!(
            equivalent(&c1, &c2),
            Equivalence::NotEquivalent(NotEquivalentReason::Length(12, 24))
        );
        let odd = fact(vec![Sl2z::s1(), Sl2z::s2()]);
        assert_eq!(
            equivalent(&odd, &c1),
            Equivalence::NotAdmissible {
                first: true,
                second: false
            }
        );
        let t = canonical_form(0, 1, 0).unwrap();
        assert!(matches!(
            equivalent(&t, &c1),
            Equivalence::NotEquivalent(NotEquivalentReason::BoundaryType(..))
        ));
        assert_eq!(
            equivalent(&c1, &sc).to_string(),
            "equivalent (certificate: same boundary type (0,0), same length 12)"
        );
    }

    #[test]
    fn scramble_examples() {
        let c = canonical_form(0, 1, 0).unwrap();
        assert_eq!(scramble(&c, 7, 0), c);
        let sc = scramble(&c, 7, 50);
        assert_eq!(sc.product(), Sl2z::neg_identity());
        assert!(sc.entries().iter().all(|e| is_positive_twist(e).is_some()));
        assert_eq!(scramble(&c, 7, 50), sc);
        assert_ne!(scramble(&c, 8, 50), sc);
    }

    #[test]
    fn scramble_inverse_replays() {
        let c = canonical_form(1, 0, 3).unwrap();
        let (sc, moves) = scramble_with_moves(&c, 5, 120);
        assert_eq!(sc.apply_moves(&invert_moves(&moves)).unwrap(), c);
    }

    #[test]
    fn normalize_is_idempotent_on_canonical_forms() {
        for p in 0..3 {
            for q in 0..2 {
                for k in 0..5 {
                    let c = canonical_form(p, q, k).unwrap();
                    let nf = normalize(&c).unwrap();
                    assert_eq!(
                        nf.certificate,
                        Certificate {
                            p: p as u64,
                            q: q as u8,
                            k: k as u64
                        }
                    );
                    assert_eq!(nf.canonical, c);
                    assert_eq!(nf.certificate.length(), c.len() as u64);
                }
            }
        }
    }

    #[test]
    fn moves_found_for_short_scrambles() {
        let c = canonical_form(0, 1, 1).unwrap();
        let sc = scramble(&c, 3, 12);
        let nf = normalize_with_moves(&sc, &SearchConfig::default()).unwrap();
        let moves = nf.moves.expect("search should succeed on a short scramble");
        assert_eq!(sc.apply_moves(&moves).unwrap(), c);
    }

    fn arb_factorization() -> impl Strategy<Value = (Factorization, Vec<(usize, bool)>)> {
        (0i64..2, 0i64..2, 0i64..4, any::<u64>(), 0usize..60).prop_flat_map(
            |(p, q, k, seed, steps)| {
                let c = canonical_form(p, q, k).unwrap();
                let f = scramble(&c, seed, steps);
                let n = f.len();
                let moves = proptest::collection::vec((0..n.max(2) - 1, any::<bool>()), 0..40);
                (Just(f), moves)
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn moves_preserve_product_length_and_twists((f, raw) in arb_factorization()) {
            let product = f.product();
            let mut cur = f.clone();
            for (i, right) in raw {
                if cur.len() < 2 { break; }
                let mv = Move { index: i, dir: if right { Direction::Right } else { Direction::Left } };
                let next = cur.hurwitz_move(mv).unwrap();
                prop_assert_eq!(next.product(), product.clone());
                prop_assert_eq!(next.len(), f.len());
                prop_assert!(next.entries().iter().all(|e| is_positive_twist(e).is_some()));
                prop_assert_eq!(next.hurwitz_move(mv.inverse()).unwrap(), cur.clone());
                cur = next;
            }
        }

        #[test]
        fn length_congruence((f, _) in arb_factorization()) {
            let bt = f.boundary_type().unwrap();
            let n = f.len() as u64;
            prop_assert_eq!(n % 12, (6 * bt.q as u64 + bt.k) % 12);
            prop_assert!(n >= 6 * bt.q as u64 + bt.k);
        }
    }
}
