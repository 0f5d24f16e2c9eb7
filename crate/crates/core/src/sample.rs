//! Seeded random elements for property checks and samplers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::artin::{ArtinAlgebra, NilElement};
use crate::dgla::DglaPresentation;
use crate::scalar::Scalar;
use crate::sparse::{add_term, SparseVec};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small nonzero-biased integer coefficient.
pub fn coefficient<S: Scalar>(rng: &mut SampleRng) -> S {
    let v: i64 = rng.gen_range(-3..=3);
    if rng.gen_bool(0.2) {
        S::ratio(v, 2)
    } else {
        S::int(v)
    }
}

/// Random vector supported on basis elements of the given degree.
pub fn vector<S: Scalar>(rng: &mut SampleRng, candidates: &[usize], density: f64) -> SparseVec<S> {
    let mut v = SparseVec::new();
    for &i in candidates {
        if rng.gen_bool(density) {
            add_term(&mut v, i, coefficient(rng));
        }
    }
    v
}

/// Random element of `L^degree ⊗ m_A`; when `max_order` is set only ring
/// basis elements up to that filtration order are used.
pub fn nil_element<S: Scalar>(
    rng: &mut SampleRng,
    dgla: &DglaPresentation<S>,
    ring: &ArtinAlgebra<S>,
    degree: i32,
    density: f64,
) -> NilElement<S> {
    let idx = dgla.space().in_degree(degree);
    let mut out = NilElement::zero(degree);
    for mu in 0..ring.dim() {
        for &i in &idx {
            if rng.gen_bool(density) {
                add_term(&mut out.terms, (i, mu), coefficient(rng));
            }
        }
    }
    out
}

pub fn pick<'a, T>(rng: &mut SampleRng, items: &'a [T]) -> &'a T {
    &items[rng.gen_range(0..items.len())]
}

pub fn below(rng: &mut SampleRng, n: usize) -> usize {
    rng.gen_range(0..n)
}

pub fn chance(rng: &mut SampleRng, p: f64) -> bool {
    rng.gen_bool(p)
}
