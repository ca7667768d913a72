//! Monodromy calculus for genus-one simplified broken Lefschetz fibrations.
//!
//! * [`sl2z`] — exact arithmetic in `SL(2,Z)`, generator words, the
//!   positive-twist test.
//! * [`factorization`] — Hurwitz moves, boundary types, normal forms.
//! * [`orbit`] — bounded breadth-first and guided exploration of Hurwitz orbits.
//! * [`chart`] — chart validation, counting identity, canonical charts.
//! * [`sblf`] — blow-up normalization and classification of total spaces.
//! * [`io`] — text formats.

pub mod chart;
pub mod factorization;
pub mod io;
pub mod orbit;
pub mod sblf;
pub mod sl2z;

pub use chart::{canonical_chart, chart_counts, validate, Chart, ChartCounts, Verdict};
pub use factorization::{
    canonical_form, certificate, equivalent, normalize, scramble, BoundaryType, Certificate,
    Equivalence, Factorization, FactorizationError, Move,
};
pub use orbit::{enumerate_orbit, OrbitConfig, OrbitReport, SearchConfig};
pub use sblf::{classify, Classification, LowerGluing, ManifoldId, Parity, SblfDescriptor};
pub use sl2z::{is_positive_twist, GeneratorWord, Letter, Sl2z};
