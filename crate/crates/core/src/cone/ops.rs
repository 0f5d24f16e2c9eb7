use crate::artin::{ArtinAlgebra, NilElement, TensorDgla};
use crate::cone::PairDiagram;
use crate::graded::GradedMap;
use crate::lie::{DgLie, GradedElement};
use crate::scalar::Scalar;

/// A pair of DGLA morphisms `h: L -> M <- N: g` acting on symbolic elements.
///
/// Implemented both for plain tensor products with a coefficient ring and
/// for their polynomial path extensions, so the same cone formulas serve
/// points and homotopies.
pub trait PairOps<S: Scalar> {
    type Alg: DgLie<S>;

    fn l(&self) -> &Self::Alg;
    fn n(&self) -> &Self::Alg;
    fn m(&self) -> &Self::Alg;
    fn h(&self, x: &PairElem<S, Self>) -> PairElem<S, Self>;
    fn g(&self, y: &PairElem<S, Self>) -> PairElem<S, Self>;
}

pub type PairElem<S, P> = <<P as PairOps<S>>::Alg as DgLie<S>>::Elem;

/// An element `(l, n, m)` of the cone, `m` sitting one degree lower.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeElem<E> {
    pub l: E,
    pub n: E,
    pub m: E,
}

impl<E> ConeElem<E> {
    pub fn new(l: E, n: E, m: E) -> Self {
        ConeElem { l, n, m }
    }
}

impl<S: Scalar, E: GradedElement<S>> GradedElement<S> for ConeElem<E> {
    fn degree(&self) -> i32 {
        if !self.l.is_zero() {
            self.l.degree()
        } else if !self.n.is_zero() {
            self.n.degree()
        } else if !self.m.is_zero() {
            self.m.degree() + 1
        } else {
            self.l.degree()
        }
    }

    fn is_zero(&self) -> bool {
        self.l.is_zero() && self.n.is_zero() && self.m.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        ConeElem {
            l: self.l.add(&o.l),
            n: self.n.add(&o.n),
            m: self.m.add(&o.m),
        }
    }

    fn scale(&self, c: &S) -> Self {
        ConeElem {
            l: self.l.scale(c),
            n: self.n.scale(c),
            m: self.m.scale(c),
        }
    }
}

pub fn cone_zero<S: Scalar, P: PairOps<S> + ?Sized>(
    pair: &P,
    degree: i32,
) -> ConeElem<PairElem<S, P>> {
    ConeElem {
        l: pair.l().zero(degree),
        n: pair.n().zero(degree),
        m: pair.m().zero(degree - 1),
    }
}

/// `D(l, n, m) = (dl, dn, -dm - g(n) + h(l))`
pub fn cone_d<S: Scalar, P: PairOps<S> + ?Sized>(
    pair: &P,
    c: &ConeElem<PairElem<S, P>>,
) -> ConeElem<PairElem<S, P>> {
    ConeElem {
        l: pair.l().d(&c.l),
        n: pair.n().d(&c.n),
        m: pair.h(&c.l).sub(&pair.m().d(&c.m)).sub(&pair.g(&c.n)),
    }
}

/// A pair diagram tensored with a coefficient ring.
#[derive(Clone, Copy, Debug)]
pub struct TensorPair<'a, S> {
    pub l: TensorDgla<'a, S>,
    pub n: TensorDgla<'a, S>,
    pub m: TensorDgla<'a, S>,
    pub hmap: &'a GradedMap<S>,
    pub gmap: &'a GradedMap<S>,
}

impl<'a, S: Scalar> TensorPair<'a, S> {
    pub fn new(p: &'a PairDiagram<S>, ring: &'a ArtinAlgebra<S>) -> Self {
        TensorPair {
            l: TensorDgla::new(&p.l, ring),
            n: TensorDgla::new(&p.n, ring),
            m: TensorDgla::new(&p.m, ring),
            hmap: &p.h,
            gmap: &p.g,
        }
    }

    pub fn ring(&self) -> &'a ArtinAlgebra<S> {
        self.m.ring
    }
}

impl<'a, S: Scalar> PairOps<S> for TensorPair<'a, S> {
    type Alg = TensorDgla<'a, S>;

    fn l(&self) -> &Self::Alg {
        &self.l
    }

    fn n(&self) -> &Self::Alg {
        &self.n
    }

    fn m(&self) -> &Self::Alg {
        &self.m
    }

    fn h(&self, x: &NilElement<S>) -> NilElement<S> {
        x.map_dgla(self.hmap)
    }

    fn g(&self, y: &NilElement<S>) -> NilElement<S> {
        y.map_dgla(self.gmap)
    }
}
