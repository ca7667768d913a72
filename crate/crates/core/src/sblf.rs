//! Total spaces of genus-one simplified broken Lefschetz fibrations.
//!
//! A fibration is described abstractly by whether it has a round circle, the
//! monodromy factorization of its genus-one side, and discrete gluing data.
//! [`classify`] blows up until the global monodromy is admissible, normalizes
//! the factorization and reads the diffeomorphism type off the resulting
//! certificate.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::factorization::{certificate, Certificate, Factorization, FactorizationError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("global monodromy {0} does not preserve the curve a up to sign")]
    InvalidShape(String),
    #[error("without a round circle the global monodromy must be the identity, got {0}")]
    NotAFibrationOverSphere(String),
    #[error("length {0} of a closed genus-one Lefschetz fibration is not a multiple of 12")]
    InvariantViolation(usize),
    #[error("descriptor is inconsistent: {0}")]
    Structure(String),
    #[error("blow-up count {0} does not fit in 64 bits")]
    TooManyBlowups(String),
    #[error(transparent)]
    Factorization(#[from] FactorizationError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ManifoldError {
    #[error("{0} is not in canonical form")]
    NotCanonical(String),
    #[error("cannot parse manifold expression {0:?}")]
    Syntax(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// How the genus-zero / trivial lower side is glued in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LowerGluing {
    /// Two copies of `T² × D²` glued along `r[C] ± [m_T]`.
    Torus { r: u64 },
    /// Pao-type gluing: `n` is how often the lower 2-handle runs over the
    /// 1-handle, `parity` the parity of its framing.
    Pao { n: u64, parity: Parity },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SblfDescriptor {
    pub has_round: bool,
    pub higher: Factorization,
    /// Twisted identification of the higher side with the round cobordism.
    pub higher_gluing_twist: bool,
    /// Self-intersection of the section.
    pub section_framing: i64,
    pub lower: Option<LowerGluing>,
}

impl SblfDescriptor {
    pub fn round(higher: Factorization, lower: LowerGluing) -> Self {
        SblfDescriptor {
            has_round: true,
            higher,
            higher_gluing_twist: false,
            section_framing: 0,
            lower: Some(lower),
        }
    }

    pub fn no_round(higher: Factorization, lower: Option<LowerGluing>) -> Self {
        SblfDescriptor {
            has_round: false,
            higher,
            higher_gluing_twist: false,
            section_framing: 0,
            lower,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Primitive {
    Cp2,
    Cp2Bar,
    S2xS2,
    S1xS3,
    T2xS2,
    /// `S¹ × L(n,1)`, `n > 1`.
    S1xLens(u64),
    /// Pao manifold `L_n`, `n > 1`.
    Pao(u64),
    /// Pao manifold `L'_n`, `n > 1`.
    PaoPrime(u64),
    /// Elliptic surface `E(n)`, `n ≥ 1`.
    Elliptic(u64),
    S4,
}

impl Primitive {
    pub fn euler(self) -> i64 {
        match self {
            Primitive::S4 => 2,
            Primitive::Cp2 | Primitive::Cp2Bar => 3,
            Primitive::S2xS2 => 4,
            Primitive::S1xS3 | Primitive::T2xS2 | Primitive::S1xLens(_) => 0,
            Primitive::Pao(_) | Primitive::PaoPrime(_) => 2,
            Primitive::Elliptic(n) => 12 * n as i64,
        }
    }

    pub fn pi1(self) -> Option<String> {
        match self {
            Primitive::S1xS3 => Some("Z".into()),
            Primitive::T2xS2 => Some("ZxZ".into()),
            Primitive::S1xLens(n) => Some(format!("ZxZ_{n}")),
            Primitive::Pao(n) | Primitive::PaoPrime(n) => Some(format!("Z_{n}")),
            _ => None,
        }
    }

    pub fn b1(self) -> u64 {
        match self {
            Primitive::S1xS3 | Primitive::S1xLens(_) => 1,
            Primitive::T2xS2 => 2,
            _ => 0,
        }
    }
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Primitive::S4 => f.write_str("S4"),
            Primitive::Cp2 => f.write_str("CP2"),
            Primitive::Cp2Bar => f.write_str("CP2bar"),
            Primitive::S2xS2 => f.write_str("S2xS2"),
            Primitive::S1xS3 => f.write_str("S1xS3"),
            Primitive::T2xS2 => f.write_str("T2xS2"),
            Primitive::S1xLens(n) => write!(f, "S1xL({n},1)"),
            Primitive::Pao(n) => write!(f, "L_{n}"),
            Primitive::PaoPrime(n) => write!(f, "L'_{n}"),
            Primitive::Elliptic(n) => write!(f, "E({n})"),
        }
    }
}

impl FromStr for Primitive {
    type Err = ManifoldError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ManifoldError::Syntax(s.to_string());
        let num = |t: &str| t.parse::<u64>().map_err(|_| bad());
        Ok(match s {
            "S4" => Primitive::S4,
            "CP2" => Primitive::Cp2,
            "CP2bar" => Primitive::Cp2Bar,
            "S2xS2" => Primitive::S2xS2,
            "S1xS3" => Primitive::S1xS3,
            "T2xS2" => Primitive::T2xS2,
            _ => {
                if let Some(n) = s.strip_prefix("S1xL(").and_then(|r| r.strip_suffix(",1)")) {
                    Primitive::S1xLens(num(n)?)
                } else if let Some(n) = s.strip_prefix("L'_") {
                    Primitive::PaoPrime(num(n)?)
                } else if let Some(n) = s.strip_prefix("L_") {
                    Primitive::Pao(num(n)?)
                } else if let Some(n) = s.strip_prefix("E(").and_then(|r| r.strip_suffix(')')) {
                    Primitive::Elliptic(num(n)?)
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

/// A connected sum of primitives with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ManifoldId {
    summands: BTreeMap<Primitive, u64>,
}

impl ManifoldId {
    pub fn s4() -> Self {
        Self::single(Primitive::S4)
    }

    pub fn single(p: Primitive) -> Self {
        Self::from_counts([(p, 1)])
    }

    pub fn from_counts(counts: impl IntoIterator<Item = (Primitive, u64)>) -> Self {
        let mut summands = BTreeMap::new();
        for (p, n) in counts {
            if n > 0 {
                *summands.entry(p).or_insert(0) += n;
            }
        }
        ManifoldId { summands }
    }

    /// `a·CP² # b·CP̄²`; `S⁴` when both are zero.
    pub fn cp2_sum(a: u64, b: u64) -> Self {
        canonicalize_manifold(&Self::from_counts([
            (Primitive::Cp2, a),
            (Primitive::Cp2Bar, b),
        ]))
    }

    pub fn count(&self, p: Primitive) -> u64 {
        self.summands.get(&p).copied().unwrap_or(0)
    }

    pub fn summands(&self) -> impl Iterator<Item = (Primitive, u64)> + '_ {
        self.summands.iter().map(|(p, n)| (*p, *n))
    }

    /// Connected sum, not canonicalized.
    pub fn connect(&self, other: &ManifoldId) -> ManifoldId {
        Self::from_counts(self.summands().chain(other.summands()))
    }

    pub fn blow_up(&self, times: u64) -> ManifoldId {
        self.connect(&Self::from_counts([(Primitive::Cp2Bar, times)]))
    }

    pub fn is_canonical(&self) -> bool {
        canonicalize_manifold(self) == *self
    }
}

impl fmt::Display for ManifoldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("S4");
        }
        for (i, (p, n)) in self.summands().enumerate() {
            if i > 0 {
                f.write_str(" # ")?;
            }
            if n == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{n}*{p}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for ManifoldId {
    type Err = ManifoldError;
    /// Grammar: `term (# term)*`, `term = [n*]primitive`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut counts = Vec::new();
        for term in s.split('#') {
            let term = term.trim();
            let (n, name) = match term.split_once('*') {
                Some((n, name)) => (
                    n.trim()
                        .parse::<u64>()
                        .map_err(|_| ManifoldError::Syntax(s.to_string()))?,
                    name.trim(),
                ),
                None => (1, term),
            };
            counts.push((name.parse::<Primitive>()?, n));
        }
        Ok(Self::from_counts(counts))
    }
}

/// Applies the connected-sum relations until nothing changes:
/// with a `CP̄²` summand present, `S²×S²` becomes `CP² # CP̄²` and `L'_n`
/// becomes `L_n`; `S⁴` summands are dropped unless nothing else is left.
pub fn canonicalize_manifold(m: &ManifoldId) -> ManifoldId {
    let mut cur = m.summands.clone();
    loop {
        let before = cur.clone();
        if cur.get(&Primitive::Cp2Bar).copied().unwrap_or(0) > 0 {
            if let Some(n) = cur.remove(&Primitive::S2xS2) {
                *cur.entry(Primitive::Cp2).or_insert(0) += n;
                *cur.entry(Primitive::Cp2Bar).or_insert(0) += n;
            }
            let primes: Vec<(u64, u64)> = cur
                .iter()
                .filter_map(|(p, c)| match p {
                    Primitive::PaoPrime(n) => Some((*n, *c)),
                    _ => None,
                })
                .collect();
            for (n, c) in primes {
                cur.remove(&Primitive::PaoPrime(n));
                *cur.entry(Primitive::Pao(n)).or_insert(0) += c;
            }
        }
        if cur.len() > 1 {
            cur.remove(&Primitive::S4);
        }
        if cur.is_empty() {
            cur.insert(Primitive::S4, 1);
        }
        if let Some(c) = cur.get_mut(&Primitive::S4) {
            *c = 1;
        }
        if cur == before {
            return ManifoldId { summands: cur };
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub euler: i64,
    pub pi1: String,
    pub b1: u64,
}

/// Euler characteristic, fundamental group label and first Betti number.
pub fn manifold_invariants(m: &ManifoldId) -> Result<Invariants, ManifoldError> {
    if !m.is_canonical() {
        return Err(ManifoldError::NotCanonical(m.to_string()));
    }
    let mut euler = 0i64;
    let mut pieces = 0i64;
    let mut groups = Vec::new();
    let mut b1 = 0;
    for (p, n) in m.summands() {
        euler += p.euler() * n as i64;
        pieces += n as i64;
        b1 += p.b1() * n;
        if let Some(g) = p.pi1() {
            groups.extend(std::iter::repeat_n(g, n as usize));
        }
    }
    euler -= 2 * (pieces - 1);
    let pi1 = if groups.is_empty() {
        "1".to_string()
    } else {
        groups.join(" * ")
    };
    Ok(Invariants { euler, pi1, b1 })
}

/// Global monodromy shape relative to the curve `a = (0,1)ᵀ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonodromyShape {
    /// `[[1,0],[m,1]] = s1^m`
    Untwisted(BigInt),
    /// `[[-1,0],[n,-1]] = (s1 s2)^3 s1^{-n}`
    Twisted(BigInt),
    Invalid,
}

impl fmt::Display for MonodromyShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonodromyShape::Untwisted(m) => write!(f, "untwisted({m})"),
            MonodromyShape::Twisted(n) => write!(f, "twisted({n})"),
            MonodromyShape::Invalid => f.write_str("invalid"),
        }
    }
}

pub fn monodromy_shape(f: &Factorization) -> MonodromyShape {
    let prod = f.product();
    if !prod.b().is_zero() {
        return MonodromyShape::Invalid;
    }
    let one = BigInt::one();
    if prod.a() == &one && prod.d() == &one {
        MonodromyShape::Untwisted(prod.c().clone())
    } else if prod.a() == &-&one && prod.d() == &-&one {
        MonodromyShape::Twisted(prod.c().clone())
    } else {
        MonodromyShape::Invalid
    }
}

/// Number of extra `s1` twists needed to make the global monodromy admissible.
fn blowups_needed(shape: &MonodromyShape) -> Result<u64, ClassifyError> {
    let need = match shape {
        MonodromyShape::Untwisted(m) if m.is_negative() => m.abs(),
        MonodromyShape::Twisted(n) if n.is_positive() => n.clone(),
        MonodromyShape::Invalid => return Err(ClassifyError::InvalidShape("invalid".into())),
        _ => BigInt::zero(),
    };
    need.to_u64()
        .ok_or_else(|| ClassifyError::TooManyBlowups(need.to_string()))
}

/// Appends right-handed twists along `a` until the global monodromy is
/// `s1^k` or `(s1 s2)^3 s1^k` with `k ≥ 0`; returns the count appended.
pub fn blowup_normalize(d: &SblfDescriptor) -> Result<(SblfDescriptor, u64), ClassifyError> {
    let shape = monodromy_shape(&d.higher);
    if shape == MonodromyShape::Invalid {
        return Err(ClassifyError::InvalidShape(d.higher.product().to_string()));
    }
    if !d.has_round {
        if d.higher.boundary_type().is_some() {
            return Ok((d.clone(), 0));
        }
        return Err(ClassifyError::NotAFibrationOverSphere(
            d.higher.product().to_string(),
        ));
    }
    let b = blowups_needed(&shape)?;
    let mut out = d.clone();
    out.higher = d.higher.with_s1_appended(b as usize);
    debug_assert!(out.higher.boundary_type().is_some());
    Ok((out, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    /// No singularities: locally trivial torus fibration.
    TorusBundle,
    /// No round circle: elliptic surface.
    Elliptic,
    /// Round circle, higher monodromy `(t_a)^k`.
    RoundTrivialHigher,
    /// Round circle, higher monodromy `(t_a, t_b)^{6p+3q} (t_a)^k`, `2p+q ≥ 1`.
    RoundNontrivial,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::TorusBundle => "a",
            Case::Elliptic => "b",
            Case::RoundTrivialHigher => "c",
            Case::RoundNontrivial => "d",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// `X # blowups·CP̄² ≅ manifold`, with `X` the input total space.
    pub manifold: ManifoldId,
    pub blowups: u64,
    pub case: Case,
    pub certificate: Option<Certificate>,
    /// Length of the higher factorization after blow-ups.
    pub normalized_length: usize,
    /// Canonical expressions `X` with `X # blowups·CP̄² ≅ manifold` that the
    /// relations can produce; just `manifold` when no blow-ups happened.
    pub candidates: Vec<ManifoldId>,
}

fn pao_base(n: u64, parity: Parity) -> ManifoldId {
    use Primitive::*;
    match (n, parity) {
        (0, Parity::Even) => ManifoldId::from_counts([(S2xS2, 1), (S1xS3, 1)]),
        (0, Parity::Odd) => ManifoldId::from_counts([(Cp2, 1), (Cp2Bar, 1), (S1xS3, 1)]),
        (1, _) => ManifoldId::s4(),
        (n, Parity::Even) => ManifoldId::single(Pao(n)),
        (n, Parity::Odd) => ManifoldId::single(PaoPrime(n)),
    }
}

/// Identifies the total space, up to the reported number of blow-ups.
pub fn classify(d: &SblfDescriptor) -> Result<Classification, ClassifyError> {
    if !d.has_round {
        if d.higher.is_empty() {
            let r = match d.lower {
                Some(LowerGluing::Torus { r }) => r,
                _ => {
                    return Err(ClassifyError::Structure(
                        "a fibration without singularities needs a torus gluing".into(),
                    ))
                }
            };
            let manifold = match r {
                0 => ManifoldId::single(Primitive::T2xS2),
                1 => ManifoldId::single(Primitive::S1xS3),
                r => ManifoldId::single(Primitive::S1xLens(r)),
            };
            return Ok(Classification {
                candidates: vec![manifold.clone()],
                manifold,
                blowups: 0,
                case: Case::TorusBundle,
                certificate: None,
                normalized_length: 0,
            });
        }
        let prod = d.higher.product();
        if monodromy_shape(&d.higher) == MonodromyShape::Invalid {
            return Err(ClassifyError::InvalidShape(prod.to_string()));
        }
        if !prod.is_identity() {
            return Err(ClassifyError::NotAFibrationOverSphere(prod.to_string()));
        }
        let n = d.higher.len();
        if !n.is_multiple_of(12) {
            return Err(ClassifyError::InvariantViolation(n));
        }
        let manifold = ManifoldId::single(Primitive::Elliptic(n as u64 / 12));
        return Ok(Classification {
            candidates: vec![manifold.clone()],
            manifold,
            blowups: 0,
            case: Case::Elliptic,
            certificate: Some(certificate(&d.higher)?),
            normalized_length: n,
        });
    }

    let (parity_n, parity) = match d.lower {
        Some(LowerGluing::Pao { n, parity }) => (n, parity),
        _ => {
            return Err(ClassifyError::Structure(
                "a round circle needs a Pao-type lower gluing".into(),
            ))
        }
    };
    let (normalized, blowups) = blowup_normalize(d)?;
    let cert = certificate(&normalized.higher)?;
    let (case, manifold) = if cert.p == 0 && cert.q == 0 {
        (
            Case::RoundTrivialHigher,
            canonicalize_manifold(&pao_base(parity_n, parity).blow_up(cert.k)),
        )
    } else {
        let pos = 2 * cert.p + cert.q as u64;
        (
            Case::RoundNontrivial,
            ManifoldId::cp2_sum(pos, 10 * cert.p + 5 * cert.q as u64 + cert.k),
        )
    };
    Ok(Classification {
        candidates: stripped_candidates(&manifold, blowups),
        manifold,
        blowups,
        case,
        certificate: Some(cert),
        normalized_length: normalized.higher.len(),
    })
}

/// Canonical `X` with `canonicalize(X # b·CP̄²) = m`, as far as the
/// relations reach: remove `b` copies of `CP̄²`, then optionally trade
/// `CP² # CP̄²` pairs for `S²×S²` and `L_n` for `L'_n` once no `CP̄²` is left.
pub fn stripped_candidates(m: &ManifoldId, b: u64) -> Vec<ManifoldId> {
    if b == 0 {
        return vec![m.clone()];
    }
    let bar = m.count(Primitive::Cp2Bar);
    if bar < b {
        return Vec::new();
    }
    let mut base: BTreeMap<Primitive, u64> = m.summands.clone();
    base.insert(Primitive::Cp2Bar, bar - b);
    let x0 = canonicalize_manifold(&ManifoldId::from_counts(base.clone()));
    let mut out = vec![x0.clone()];
    let left = x0.count(Primitive::Cp2Bar);
    let cp = x0.count(Primitive::Cp2);
    let mut variants = Vec::new();
    if left > 0 && cp >= left {
        let mut y: BTreeMap<Primitive, u64> = x0.summands.clone();
        y.insert(Primitive::Cp2, cp - left);
        y.remove(&Primitive::Cp2Bar);
        *y.entry(Primitive::S2xS2).or_insert(0) += left;
        variants.push(ManifoldId::from_counts(y));
    }
    for cand in std::iter::once(x0.clone()).chain(variants.clone()) {
        if cand.count(Primitive::Cp2Bar) == 0 {
            let paos: Vec<(u64, u64)> = cand
                .summands()
                .filter_map(|(p, c)| match p {
                    Primitive::Pao(n) => Some((n, c)),
                    _ => None,
                })
                .collect();
            for (n, c) in paos {
                let mut y = cand.summands.clone();
                y.remove(&Primitive::Pao(n));
                y.insert(Primitive::PaoPrime(n), c);
                variants.push(ManifoldId::from_counts(y));
            }
        }
    }
    for v in variants {
        let v = canonicalize_manifold(&v);
        if !out.contains(&v) && canonicalize_manifold(&v.blow_up(b)) == *m {
            out.push(v);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::{canonical_form, scramble};
    use crate::sl2z::Sl2z;

    fn man(s: &str) -> ManifoldId {
        s.parse().unwrap()
    }

    fn perutz_higher() -> Factorization {
        Factorization::new(vec![
            Sl2z::new(0, -1, 1, 2).unwrap(),
            Sl2z::new(2, -1, 1, 0).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn shapes() {
        let f = Factorization::new(vec![Sl2z::s1(), Sl2z::s1()]).unwrap();
        assert_eq!(monodromy_shape(&f), MonodromyShape::Untwisted(2.into()));
        let f = canonical_form(0, 1, 0).unwrap();
        assert_eq!(monodromy_shape(&f), MonodromyShape::Twisted(0.into()));
        let f = Factorization::new(vec![Sl2z::s2()]).unwrap();
        assert_eq!(monodromy_shape(&f), MonodromyShape::Invalid);
        assert_eq!(
            monodromy_shape(&perutz_higher()),
            MonodromyShape::Twisted(4.into())
        );
    }

    #[test]
    fn blowup_examples() {
        let pao = LowerGluing::Pao {
            n: 2,
            parity: Parity::Even,
        };
        let d = SblfDescriptor::round(canonical_form(0, 0, 3).unwrap(), pao);
        let (d2, b) = blowup_normalize(&d).unwrap();
        assert_eq!((b, &d2), (0, &d));

        // (s2 s1)^5 s2 = s2 (s1 s2)^-1 = s1^-1
        let f = Factorization::new(vec![Sl2z::s2(), Sl2z::s1()])
            .unwrap()
            .repeat(5)
            .concat(&Factorization::new(vec![Sl2z::s2()]).unwrap());
        assert_eq!(monodromy_shape(&f), MonodromyShape::Untwisted((-1).into()));
        let twice = f.concat(&f);
        assert_eq!(
            monodromy_shape(&twice),
            MonodromyShape::Untwisted((-2).into())
        );
        let (d2, b) = blowup_normalize(&SblfDescriptor::round(twice.clone(), pao)).unwrap();
        assert_eq!(b, 2);
        assert_eq!(d2.higher.len(), twice.len() + 2);
        assert_eq!(
            monodromy_shape(&d2.higher),
            MonodromyShape::Untwisted(0.into())
        );

        let (d2, b) = blowup_normalize(&SblfDescriptor::round(perutz_higher(), pao)).unwrap();
        assert_eq!(b, 4);
        assert_eq!(
            monodromy_shape(&d2.higher),
            MonodromyShape::Twisted(0.into())
        );

        let bad = SblfDescriptor::round(Factorization::new(vec![Sl2z::s2()]).unwrap(), pao);
        assert!(matches!(
            blowup_normalize(&bad),
            Err(ClassifyError::InvalidShape(_))
        ));
    }

    #[test]
    fn classification_examples() {
        let d = SblfDescriptor::no_round(canonical_form(1, 0, 0).unwrap(), None);
        let c = classify(&d).unwrap();
        assert_eq!(c.manifold, man("E(1)"));
        assert_eq!(c.blowups, 0);

        for lower in [
            LowerGluing::Pao {
                n: 0,
                parity: Parity::Even,
            },
            LowerGluing::Pao {
                n: 3,
                parity: Parity::Odd,
            },
        ] {
            let d = SblfDescriptor::round(canonical_form(0, 1, 0).unwrap(), lower);
            let c = classify(&d).unwrap();
            assert_eq!(c.manifold, man("CP2 # 5*CP2bar"));
            assert_eq!(c.blowups, 0);
            assert_eq!(c.case, Case::RoundNontrivial);
        }

        let d = SblfDescriptor::round(
            perutz_higher(),
            LowerGluing::Pao {
                n: 0,
                parity: Parity::Even,
            },
        );
        let c = classify(&d).unwrap();
        assert_eq!(c.blowups, 4);
        assert_eq!(c.certificate, Some(Certificate { p: 0, q: 1, k: 0 }));
        assert_eq!(c.manifold, man("CP2 # 5*CP2bar"));
        assert_eq!(c.candidates, vec![man("CP2 # CP2bar"), man("S2xS2")]);
    }

    #[test]
    fn torus_bundles() {
        let cases = [(0, "T2xS2"), (1, "S1xS3"), (5, "S1xL(5,1)")];
        for (r, want) in cases {
            let d =
                SblfDescriptor::no_round(Factorization::empty(), Some(LowerGluing::Torus { r }));
            assert_eq!(classify(&d).unwrap().manifold, man(want));
        }
        let d = SblfDescriptor::no_round(Factorization::empty(), None);
        assert!(matches!(classify(&d), Err(ClassifyError::Structure(_))));
    }

    #[test]
    fn no_round_errors() {
        let d = SblfDescriptor::no_round(canonical_form(0, 0, 2).unwrap(), None);
        assert!(matches!(
            classify(&d),
            Err(ClassifyError::NotAFibrationOverSphere(_))
        ));
        let d = SblfDescriptor::no_round(Factorization::new(vec![Sl2z::s2()]).unwrap(), None);
        assert!(matches!(classify(&d), Err(ClassifyError::InvalidShape(_))));
    }

    #[test]
    fn round_trivial_higher_side() {
        let table = [
            (0, Parity::Even, 0, "S1xS3 # S2xS2"),
            (0, Parity::Odd, 0, "CP2 # CP2bar # S1xS3"),
            (0, Parity::Even, 2, "CP2 # 3*CP2bar # S1xS3"),
            (1, Parity::Odd, 0, "S4"),
            (1, Parity::Even, 3, "3*CP2bar"),
            (4, Parity::Even, 0, "L_4"),
            (4, Parity::Odd, 0, "L'_4"),
            (4, Parity::Odd, 1, "CP2bar # L_4"),
        ];
        for (n, parity, k, want) in table {
            let d = SblfDescriptor::round(
                canonical_form(0, 0, k).unwrap(),
                LowerGluing::Pao { n, parity },
            );
            let c = classify(&d).unwrap();
            assert_eq!(c.manifold, man(want), "n={n} {parity} k={k}");
            assert_eq!(c.case, Case::RoundTrivialHigher);
        }
    }

    #[test]
    fn manifold_text_round_trip() {
        for s in [
            "S4",
            "2*CP2 # 10*CP2bar",
            "CP2bar # L_3",
            "S1xL(7,1)",
            "L'_2",
            "E(3)",
        ] {
            assert_eq!(man(s).to_string(), s);
        }
        assert!("CP3".parse::<ManifoldId>().is_err());
    }

    #[test]
    fn canonicalize_examples() {
        let m = man("S2xS2 # S1xS3 # CP2bar");
        assert_eq!(canonicalize_manifold(&m), man("CP2 # 2*CP2bar # S1xS3"));
        assert_eq!(
            canonicalize_manifold(&man("L'_2 # CP2bar")),
            man("CP2bar # L_2")
        );
        assert_eq!(canonicalize_manifold(&ManifoldId::s4()), ManifoldId::s4());
        assert_eq!(canonicalize_manifold(&man("S4 # CP2")), man("CP2"));
        assert_eq!(
            canonicalize_manifold(&man("S2xS2 # L'_5")),
            man("S2xS2 # L'_5")
        );
        let once = canonicalize_manifold(&m);
        assert_eq!(canonicalize_manifold(&once), once);
    }

    #[test]
    fn invariant_examples() {
        let i = manifold_invariants(&man("E(2)")).unwrap();
        assert_eq!(
            i,
            Invariants {
                euler: 24,
                pi1: "1".into(),
                b1: 0
            }
        );
        let i = manifold_invariants(&ManifoldId::s4()).unwrap();
        assert_eq!((i.euler, i.pi1.as_str()), (2, "1"));
        let i = manifold_invariants(&man("L_3 # 2*CP2bar")).unwrap();
        assert_eq!(
            i,
            Invariants {
                euler: 4,
                pi1: "Z_3".into(),
                b1: 0
            }
        );
        let i = manifold_invariants(&man("T2xS2")).unwrap();
        assert_eq!((i.euler, i.b1), (0, 2));
        assert!(matches!(
            manifold_invariants(&man("S2xS2 # CP2bar")),
            Err(ManifoldError::NotCanonical(_))
        ));
    }

    #[test]
    fn scrambling_does_not_change_the_answer() {
        let lower = LowerGluing::Pao {
            n: 2,
            parity: Parity::Odd,
        };
        for (p, q, k) in [(0, 1, 2), (1, 0, 1), (1, 1, 0)] {
            let f = canonical_form(p, q, k).unwrap();
            let base = classify(&SblfDescriptor::round(f.clone(), lower)).unwrap();
            for seed in 0..3 {
                let d = SblfDescriptor::round(scramble(&f, seed, 80), lower);
                assert_eq!(classify(&d).unwrap(), base);
            }
        }
    }

    #[test]
    fn candidates_without_blowups() {
        let m = man("2*CP2 # 11*CP2bar");
        assert_eq!(stripped_candidates(&m, 0), vec![m.clone()]);
        assert!(stripped_candidates(&m, 12).is_empty());
        let c = stripped_candidates(&man("CP2bar # L_3"), 1);
        assert_eq!(c, vec![man("L_3"), man("L'_3")]);
    }
}
