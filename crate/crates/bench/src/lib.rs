//! Shared fixtures for the criterion benchmarks in `benches/`.

use mono_core::factorization::{canonical_form, scramble, Factorization};

/// A scramble of the canonical form `(p, q, k)` with a fixed seed.
pub fn scrambled(p: i64, q: i64, k: i64, steps: usize) -> Factorization {
    scramble(
        &canonical_form(p, q, k).expect("non-negative parameters"),
        17,
        steps,
    )
}
