use std::collections::BTreeMap;

use crate::artin::{ArtinAlgebra, ArtinMorphism};
use crate::dgla::DglaPresentation;
use crate::graded::{format_terms, GradedMap};
use crate::lie::{DgLie, GradedElement};
use crate::scalar::Scalar;
use crate::sparse::{add_term, SparseVec};

/// Homogeneous element of `L ⊗ m_A`, keyed by `(DGLA basis, ring basis)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NilElement<S> {
    pub degree: i32,
    pub terms: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> NilElement<S> {
    pub fn zero(degree: i32) -> Self {
        NilElement {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(degree: i32, terms: impl IntoIterator<Item = ((usize, usize), S)>) -> Self {
        let mut out = Self::zero(degree);
        for (k, c) in terms {
            add_term(&mut out.terms, k, c);
        }
        out
    }

    /// `v ⊗ μ` for a DGLA vector `v` and ring basis element `μ`.
    pub fn from_component(degree: i32, mu: usize, v: &SparseVec<S>) -> Self {
        Self::from_terms(degree, v.iter().map(|(i, c)| ((*i, mu), c.clone())))
    }

    /// The DGLA vector multiplying the ring basis element `μ`.
    pub fn component(&self, mu: usize) -> SparseVec<S> {
        self.terms
            .iter()
            .filter(|((_, m), _)| *m == mu)
            .map(|((i, _), c)| (*i, c.clone()))
            .collect()
    }

    pub fn ring_support(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().map(|(_, m)| *m).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Keeps only ring basis elements satisfying the predicate.
    pub fn filter_ring(&self, keep: impl Fn(usize) -> bool) -> Self {
        NilElement {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|((_, m), _)| keep(*m))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Part of filtration order exactly `k`.
    pub fn order_part(&self, ring: &ArtinAlgebra<S>, k: usize) -> Self {
        self.filter_ring(|m| ring.order(m) == k)
    }

    /// Image under a degree zero linear map on the DGLA factor.
    pub fn map_dgla(&self, f: &GradedMap<S>) -> Self {
        let mut out = Self::zero(self.degree + f.degree());
        for ((i, mu), c) in &self.terms {
            for (k, a) in f.column(*i) {
                add_term(&mut out.terms, (*k, *mu), c.clone() * a.clone());
            }
        }
        out
    }

    /// Image under a ring morphism on the coefficients.
    pub fn map_ring(&self, phi: &ArtinMorphism<S>) -> Self {
        let mut out = Self::zero(self.degree);
        for ((i, mu), c) in &self.terms {
            for (nu, a) in &phi.images[*mu] {
                add_term(&mut out.terms, (*i, *nu), c.clone() * a.clone());
            }
        }
        out
    }

    /// Reindexes ring basis elements through `section`.
    pub fn reindex_ring(&self, section: &[usize]) -> Self {
        NilElement {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|((i, m), c)| ((*i, section[*m]), c.clone()))
                .collect(),
        }
    }

    pub fn format(&self, dgla: &DglaPresentation<S>, ring: &ArtinAlgebra<S>) -> String {
        format_terms(self.terms.iter().map(|((i, m), c)| {
            let name = if ring.is_ground() {
                dgla.space().name(*i).to_string()
            } else {
                format!("{}*{}", dgla.space().name(*i), ring.label(*m))
            };
            (name, c)
        }))
    }
}

impl<S: Scalar> GradedElement<S> for NilElement<S> {
    fn degree(&self) -> i32 {
        self.degree
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        debug_assert!(self.degree == other.degree || self.is_zero() || other.is_zero());
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_term(&mut out.terms, *k, c.clone());
        }
        if self.is_zero() {
            out.degree = other.degree;
        }
        out
    }

    fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.degree);
        if !c.is_zero() {
            out.terms = self
                .terms
                .iter()
                .map(|(k, a)| (*k, a.clone() * c.clone()))
                .collect();
        }
        out
    }
}

/// The DGLA `L ⊗ m_A` (or `L ⊗ Q` over the ground field).
#[derive(Clone, Copy, Debug)]
pub struct TensorDgla<'a, S> {
    pub dgla: &'a DglaPresentation<S>,
    pub ring: &'a ArtinAlgebra<S>,
}

impl<'a, S: Scalar> TensorDgla<'a, S> {
    pub fn new(dgla: &'a DglaPresentation<S>, ring: &'a ArtinAlgebra<S>) -> Self {
        TensorDgla { dgla, ring }
    }

    /// Checks that every term sits in the declared degree.
    pub fn is_homogeneous(&self, x: &NilElement<S>) -> bool {
        x.terms
            .keys()
            .all(|(i, m)| self.dgla.degree(*i) == x.degree && *m < self.ring.dim())
    }
}

impl<'a, S: Scalar> DgLie<S> for TensorDgla<'a, S> {
    type Elem = NilElement<S>;

    fn zero(&self, degree: i32) -> NilElement<S> {
        NilElement::zero(degree)
    }

    fn d(&self, x: &NilElement<S>) -> NilElement<S> {
        x.map_dgla(self.dgla.differential())
    }

    fn bracket(&self, x: &NilElement<S>, y: &NilElement<S>) -> NilElement<S> {
        let mut out = NilElement::zero(x.degree + y.degree);
        for ((i, mu), a) in &x.terms {
            for ((j, nu), b) in &y.terms {
                let br = self.dgla.bracket_basis(*i, *j);
                if br.is_empty() {
                    continue;
                }
                let prod = self.ring.mul_basis(*mu, *nu);
                if prod.is_empty() {
                    continue;
                }
                let ab = a.clone() * b.clone();
                for (k, c) in br {
                    let abc = ab.clone() * c.clone();
                    for (rho, r) in prod {
                        add_term(&mut out.terms, (*k, *rho), abc.clone() * r.clone());
                    }
                }
            }
        }
        out
    }

    fn nilpotency(&self) -> Option<usize> {
        self.ring.nilpotency_order()
    }
}
