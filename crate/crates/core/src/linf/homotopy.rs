//! Homotopies of Maurer-Cartan elements of the cone over `C[s, ds]` and
//! their translation to and from equivalences of pair witnesses.

use std::marker::PhantomData;

use thiserror::Error;

use crate::artin::{ArtinAlgebra, NilElement};
use crate::cone::{
    pair_equiv_verify, ConeElem, EquivWitness, PairDiagram, PairElem, PairError, PairMCWitness,
    PairOps, TensorPair,
};
use crate::lie::{bch_chain, exp_ad, stabilizer_element, GradedElement, LieError};
use crate::path::{
    mc_path_decompose, mc_path_from_gauge, stabilizer_from_loop, PathDgla, PathElement, PathError,
};
use crate::scalar::Scalar;

use super::transfer::mc_infinity_residual;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HomotopyError {
    #[error("the given triple does not carry w0 to w1")]
    NotEquivalent,
    #[error("path fails the Maurer-Cartan equation over C[s, ds]")]
    NotMcInfinity,
    #[error("endpoint at s = {0} does not match")]
    Endpoint(u8),
    #[error("stage {stage}: {source}")]
    Path {
        stage: &'static str,
        source: PathError,
    },
    #[error("post-hoc verification failed: {0}")]
    Verification(&'static str),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// A pair extended by polynomial forms in `s`, `h` and `g` acting on
/// coefficients.
pub struct PathPair<'a, S: Scalar, P: PairOps<S>> {
    pair: &'a P,
    l: PathDgla<P::Alg>,
    n: PathDgla<P::Alg>,
    m: PathDgla<P::Alg>,
    _s: PhantomData<S>,
}

impl<'a, S: Scalar, P: PairOps<S>> PathPair<'a, S, P>
where
    P::Alg: Clone,
{
    pub fn new(pair: &'a P) -> Self {
        PathPair {
            pair,
            l: PathDgla::new(pair.l().clone()),
            n: PathDgla::new(pair.n().clone()),
            m: PathDgla::new(pair.m().clone()),
            _s: PhantomData,
        }
    }
}

fn map_form<S: Scalar, E: GradedElement<S>>(
    x: &PathElement<E>,
    f: impl Fn(&E) -> E,
) -> PathElement<E> {
    let mut out = PathElement::zero(x.degree);
    for (i, e) in &x.poly {
        out = out.add(&PathElement::monomial(*i, f(e)));
    }
    for (i, e) in &x.dt {
        out = out.add(&PathElement::dt_monomial(*i, f(e)));
    }
    out.degree = x.degree;
    out
}

impl<'a, S: Scalar, P: PairOps<S>> PairOps<S> for PathPair<'a, S, P> {
    type Alg = PathDgla<P::Alg>;

    fn l(&self) -> &Self::Alg {
        &self.l
    }

    fn n(&self) -> &Self::Alg {
        &self.n
    }

    fn m(&self) -> &Self::Alg {
        &self.m
    }

    fn h(&self, x: &PairElem<S, Self>) -> PairElem<S, Self> {
        map_form(x, |e| self.pair.h(e))
    }

    fn g(&self, y: &PairElem<S, Self>) -> PairElem<S, Self> {
        map_form(y, |e| self.pair.g(e))
    }
}

/// `(l̃, ñ, m̃)` over `C[s, ds]`, the group part stored by its logarithm.
#[derive(Clone, Debug, PartialEq)]
pub struct HomotopyPath<E> {
    pub l: PathElement<E>,
    pub n: PathElement<E>,
    pub m: PathElement<E>,
}

impl<S: Scalar> HomotopyPath<NilElement<S>> {
    pub fn as_cone(&self) -> ConeElem<PathElement<NilElement<S>>> {
        ConeElem::new(self.l.clone(), self.n.clone(), self.m.clone())
    }

    /// The witness at `s = value`.
    pub fn endpoint(
        &self,
        p: &PairDiagram<S>,
        ring: &ArtinAlgebra<S>,
        value: &S,
    ) -> PairMCWitness<S> {
        let t = TensorPair::new(p, ring);
        let pp = PathPair::new(&t);
        PairMCWitness {
            x: pp.l.eval_at(&self.l, value),
            y: pp.n.eval_at(&self.n, value),
            p: pp.m.eval_at(&self.m, value),
        }
    }

    pub fn start(&self, p: &PairDiagram<S>, ring: &ArtinAlgebra<S>) -> PairMCWitness<S> {
        self.endpoint(p, ring, &S::zero())
    }

    pub fn end(&self, p: &PairDiagram<S>, ring: &ArtinAlgebra<S>) -> PairMCWitness<S> {
        self.endpoint(p, ring, &S::one())
    }
}

/// The Maurer-Cartan equation of the cone over `C[s, ds] ⊗ m_A`, checked
/// coefficientwise.
pub fn homotopy_verify<S: Scalar>(
    p: &PairDiagram<S>,
    ring: &ArtinAlgebra<S>,
    path: &HomotopyPath<NilElement<S>>,
) -> Result<bool, HomotopyError> {
    let t = TensorPair::new(p, ring);
    let pp = PathPair::new(&t);
    Ok(mc_infinity_residual(&pp, &path.as_cone())?.is_zero())
}

fn constant_times_s<S: Scalar>(e: &NilElement<S>) -> PathElement<NilElement<S>> {
    let mut out = PathElement::monomial(1, e.clone());
    out.degree = e.degree();
    out
}

/// `l̃ = e^{sa} * l_0`, `ñ = e^{sb} * n_0` and
/// `m̃ = g(sb) • T(s) • m_0 • (-h(sa))` with `T(s) = d(sc) + [g(n_0), sc]`.
pub fn gauge_to_homotopy<S: Scalar>(
    p: &PairDiagram<S>,
    ring: &ArtinAlgebra<S>,
    w0: &PairMCWitness<S>,
    w1: &PairMCWitness<S>,
    ew: &EquivWitness<S>,
) -> Result<HomotopyPath<NilElement<S>>, HomotopyError> {
    if !pair_equiv_verify(p, ring, w0, w1, ew)? {
        return Err(HomotopyError::NotEquivalent);
    }
    let t = TensorPair::new(p, ring);
    let pp = PathPair::new(&t);
    let stage = |stage| move |source| HomotopyError::Path { stage, source };
    let sa = constant_times_s(&ew.a);
    let sb = constant_times_s(&ew.b);
    let sc = constant_times_s(&ew.c);
    let l = mc_path_from_gauge(&pp.l, &w0.x, &sa).map_err(stage("l"))?;
    let n = mc_path_from_gauge(&pp.n, &w0.y, &sb).map_err(stage("n"))?;
    let gn0 = PathElement::constant(t.g(&w0.y));
    let tt = stabilizer_element(&pp.m, &gn0, &sc);
    let m0 = PathElement::constant(w0.p.clone());
    let m = bch_chain(&pp.m, &[&pp.g(&sb), &tt, &m0, &pp.h(&sa).neg()])?;
    let path = HomotopyPath { l, n, m };
    if !homotopy_verify(p, ring, &path)? {
        return Err(HomotopyError::NotMcInfinity);
    }
    if path.start(p, ring) != *w0 {
        return Err(HomotopyError::Endpoint(0));
    }
    if path.end(p, ring) != *w1 {
        return Err(HomotopyError::Endpoint(1));
    }
    Ok(path)
}

/// Reads an equivalence off a homotopy: `a = λ(1)`, `b = ν(1)` from the
/// decompositions of `l̃` and `ñ`, and `c` from the stabilizer of the loop
/// `μ = m̃ • h(λ) • (-m_0) • (-g(ν))` at `g(ñ)`, conjugated back to `g(n_0)`.
pub fn homotopy_to_gauge<S: Scalar>(
    p: &PairDiagram<S>,
    ring: &ArtinAlgebra<S>,
    path: &HomotopyPath<NilElement<S>>,
) -> Result<EquivWitness<S>, HomotopyError> {
    if !homotopy_verify(p, ring, path)? {
        return Err(HomotopyError::NotMcInfinity);
    }
    let t = TensorPair::new(p, ring);
    let pp = PathPair::new(&t);
    let stage = |stage| move |source| HomotopyError::Path { stage, source };
    let (zero, one) = (S::zero(), S::one());
    let lambda = mc_path_decompose(&pp.l, &path.l).map_err(stage("decompose l"))?;
    let nu = mc_path_decompose(&pp.n, &path.n).map_err(stage("decompose n"))?;
    let m0 = PathElement::constant(pp.m.eval_at(&path.m, &zero));
    let mu = bch_chain(
        &pp.m,
        &[&path.m, &pp.h(&lambda), &m0.neg(), &pp.g(&nu).neg()],
    )?;
    let c = stabilizer_from_loop(&pp.m, &pp.g(&path.n), &mu).map_err(stage("loop stabilizer"))?;
    let b = pp.n.eval_at(&nu, &one);
    let c = exp_ad(&t.m, &t.g(&b).neg(), &c)?;
    let ew = EquivWitness {
        a: pp.l.eval_at(&lambda, &one),
        b,
        c,
    };
    let (w0, w1) = (path.start(p, ring), path.end(p, ring));
    if !pair_equiv_verify(p, ring, &w0, &w1, &ew)? {
        return Err(HomotopyError::Verification("pair equivalence"));
    }
    Ok(ew)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{entry, ring, NAMES};
    use crate::cone::{equivalence_action, random_equivalence, random_mc, sample_mc};
    use crate::sample;
    use crate::Q;

    #[test]
    fn constant_path_round_trip() {
        let e = entry::<Q>("gl2-wedge").unwrap();
        let r = ring::<Q>("eps3").unwrap();
        let w = random_mc(&e.diagram, &r, 3).unwrap();
        let path = gauge_to_homotopy(&e.diagram, &r, &w, &w, &EquivWitness::zero()).unwrap();
        assert!(!path.l.has_dt() && !path.m.has_dt());
        let ew = homotopy_to_gauge(&e.diagram, &r, &path).unwrap();
        assert!(pair_equiv_verify(&e.diagram, &r, &w, &w, &ew).unwrap());
    }

    #[test]
    fn random_round_trips() {
        for name in NAMES {
            let e = entry::<Q>(name).unwrap();
            for rn in ["eps3", "st"] {
                let r = ring::<Q>(rn).unwrap();
                let mut rng = sample::rng(11);
                for seed in 0..3 {
                    let w0 = sample_mc(&e.diagram, &r, seed);
                    let ew = random_equivalence(&e.diagram, &r, &mut rng);
                    let w1 = equivalence_action(&e.diagram, &r, &w0, &ew).unwrap();
                    let path = gauge_to_homotopy(&e.diagram, &r, &w0, &w1, &ew)
                        .unwrap_or_else(|err| panic!("{name}/{rn}/{seed}: {err}"));
                    let back = homotopy_to_gauge(&e.diagram, &r, &path)
                        .unwrap_or_else(|err| panic!("{name}/{rn}/{seed}: {err}"));
                    assert!(pair_equiv_verify(&e.diagram, &r, &w0, &w1, &back).unwrap());
                }
            }
        }
    }

    #[test]
    fn wrong_witness_is_rejected() {
        let e = entry::<Q>("gl2-wedge").unwrap();
        let r = ring::<Q>("eps3").unwrap();
        let mut rng = sample::rng(5);
        let w0 = random_mc(&e.diagram, &r, 1).unwrap();
        let ew = random_equivalence(&e.diagram, &r, &mut rng);
        let other = random_equivalence(&e.diagram, &r, &mut rng);
        let w1 = equivalence_action(&e.diagram, &r, &w0, &ew).unwrap();
        if !pair_equiv_verify(&e.diagram, &r, &w0, &w1, &other).unwrap() {
            assert_eq!(
                gauge_to_homotopy(&e.diagram, &r, &w0, &w1, &other),
                Err(HomotopyError::NotEquivalent)
            );
        }
    }
}
