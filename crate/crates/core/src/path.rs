//! Polynomial forms `A[t, dt]` with values in a DGLA, the path DGLA
//! `H` of a pair with its contraction onto the cone, and the lemmas about
//! Maurer-Cartan paths and loop stabilizers.
//!
//! Forms are written with `dt` on the left: an element is
//! `Σ t^i a_i + Σ t^i dt b_i`, `deg dt = 1`, so that
//! `d(t^i dt b) = -t^i dt db` and `[t^i a, t^j dt b] = (-1)^{|a|} t^{i+j} dt [a, b]`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cone::{ConeElem, PairElem, PairOps};
use crate::lie::{bch_chain, exp_ad, gauge_action, is_mc, DgLie, GradedElement, LieError};
use crate::scalar::{parity_sign, pow, sign, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PathError {
    #[error("endpoint conditions h(l) = m(1), g(n) = m(0) fail")]
    NotMember,
    #[error("path is not Maurer-Cartan")]
    NotMc,
    #[error("gauge family must vanish at t = 0 and have no dt part")]
    BadFamily,
    #[error("e^mu * x = x fails for the given loop")]
    NotFixed,
    #[error("decomposition did not converge")]
    Decompose,
    #[error("post-hoc verification failed: {0}")]
    Verification(&'static str),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// `Σ t^i poly[i] + Σ t^i dt dt[i]`. The `dt` coefficients sit one degree
/// below `degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct PathElement<E> {
    pub degree: i32,
    pub poly: BTreeMap<u32, E>,
    pub dt: BTreeMap<u32, E>,
}

impl<E> PathElement<E> {
    pub fn zero(degree: i32) -> Self {
        PathElement {
            degree,
            poly: BTreeMap::new(),
            dt: BTreeMap::new(),
        }
    }

    /// Highest power of `t` present.
    pub fn t_degree(&self) -> u32 {
        self.poly
            .keys()
            .chain(self.dt.keys())
            .copied()
            .max()
            .unwrap_or(0)
    }

    pub fn has_dt(&self) -> bool {
        !self.dt.is_empty()
    }
}

fn put<S: Scalar, E: GradedElement<S>>(map: &mut BTreeMap<u32, E>, i: u32, e: E) {
    if e.is_zero() {
        return;
    }
    let v = match map.remove(&i) {
        Some(old) => old.add(&e),
        None => e,
    };
    if !v.is_zero() {
        map.insert(i, v);
    }
}

impl<E> PathElement<E> {
    /// `t^i e`
    pub fn monomial<S: Scalar>(i: u32, e: E) -> Self
    where
        E: GradedElement<S>,
    {
        let mut out = Self::zero(e.degree());
        put(&mut out.poly, i, e);
        out
    }

    pub fn constant<S: Scalar>(e: E) -> Self
    where
        E: GradedElement<S>,
    {
        Self::monomial(0, e)
    }

    /// `t^i dt e`
    pub fn dt_monomial<S: Scalar>(i: u32, e: E) -> Self
    where
        E: GradedElement<S>,
    {
        let mut out = Self::zero(e.degree() + 1);
        put(&mut out.dt, i, e);
        out
    }
}

impl<S: Scalar, E: GradedElement<S>> GradedElement<S> for PathElement<E> {
    fn degree(&self) -> i32 {
        self.degree
    }

    fn is_zero(&self) -> bool {
        self.poly.is_empty() && self.dt.is_empty()
    }

    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        if self.is_zero() {
            out.degree = o.degree;
        }
        for (i, e) in &o.poly {
            put(&mut out.poly, *i, e.clone());
        }
        for (i, e) in &o.dt {
            put(&mut out.dt, *i, e.clone());
        }
        out
    }

    fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        PathElement {
            degree: self.degree,
            poly: self.poly.iter().map(|(i, e)| (*i, e.scale(c))).collect(),
            dt: self.dt.iter().map(|(i, e)| (*i, e.scale(c))).collect(),
        }
    }
}

/// `A[t, dt]` for a DGLA `A`.
#[derive(Clone, Copy, Debug)]
pub struct PathDgla<A> {
    pub inner: A,
}

impl<A> PathDgla<A> {
    pub fn new(inner: A) -> Self {
        PathDgla { inner }
    }
}

impl<S: Scalar, A: DgLie<S>> DgLie<S> for PathDgla<A> {
    type Elem = PathElement<A::Elem>;

    fn zero(&self, degree: i32) -> Self::Elem {
        PathElement::zero(degree)
    }

    fn d(&self, x: &Self::Elem) -> Self::Elem {
        let mut out = PathElement::zero(x.degree + 1);
        for (i, a) in &x.poly {
            put(&mut out.poly, *i, self.inner.d(a));
            if *i > 0 {
                put(&mut out.dt, i - 1, a.scale(&S::int(*i as i64)));
            }
        }
        for (i, b) in &x.dt {
            put(&mut out.dt, *i, self.inner.d(b).neg());
        }
        out
    }

    fn bracket(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let mut out = PathElement::zero(x.degree + y.degree);
        for (i, a) in &x.poly {
            for (j, b) in &y.poly {
                put(&mut out.poly, i + j, self.inner.bracket(a, b));
            }
            let s = sign::<S>(parity_sign(a.degree() as i64));
            for (j, b) in &y.dt {
                put(&mut out.dt, i + j, self.inner.bracket(a, b).scale(&s));
            }
        }
        for (i, a) in &x.dt {
            for (j, b) in &y.poly {
                put(&mut out.dt, i + j, self.inner.bracket(a, b));
            }
        }
        out
    }

    fn nilpotency(&self) -> Option<usize> {
        self.inner.nilpotency()
    }
}

impl<A> PathDgla<A> {
    /// `e_a`: drop `dt` terms and put `t = a`.
    pub fn eval_at<S: Scalar>(&self, m: &PathElement<A::Elem>, a: &S) -> A::Elem
    where
        A: DgLie<S>,
    {
        let mut out = self.inner.zero(m.degree);
        for (i, e) in &m.poly {
            out = out.add(&e.scale(&pow(a, *i as usize)));
        }
        out
    }

    /// `∫_a^b`, only `dt` terms contribute.
    pub fn integrate<S: Scalar>(&self, m: &PathElement<A::Elem>, a: &S, b: &S) -> A::Elem
    where
        A: DgLie<S>,
    {
        let mut out = self.inner.zero(m.degree - 1);
        for (i, e) in &m.dt {
            let k = *i as usize + 1;
            let c = (pow(b, k) - pow(a, k)) / S::int(k as i64);
            out = out.add(&e.scale(&c));
        }
        out
    }

    /// `t ↦ ∫_0^t m`, a form without `dt` part.
    pub fn integral_from_zero<S: Scalar>(&self, m: &PathElement<A::Elem>) -> PathElement<A::Elem>
    where
        A: DgLie<S>,
    {
        let mut out = PathElement::zero(m.degree - 1);
        for (i, e) in &m.dt {
            put(&mut out.poly, i + 1, e.scale(&S::ratio(1, *i as i64 + 1)));
        }
        out
    }

    /// Product with a scalar polynomial `Σ p[k] t^k`.
    pub fn mul_poly<S: Scalar>(&self, p: &[S], m: &PathElement<A::Elem>) -> PathElement<A::Elem>
    where
        A: DgLie<S>,
    {
        let mut out = PathElement::zero(m.degree);
        for (k, c) in p.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, e) in &m.poly {
                put(&mut out.poly, i + k as u32, e.scale(c));
            }
            for (i, e) in &m.dt {
                put(&mut out.dt, i + k as u32, e.scale(c));
            }
        }
        out
    }

    /// Pullback along `t ↦ c0 + c1 t`; `dt` coefficients pick up `c1`.
    pub fn substitute_affine<S: Scalar>(
        &self,
        m: &PathElement<A::Elem>,
        c0: &S,
        c1: &S,
    ) -> PathElement<A::Elem>
    where
        A: DgLie<S>,
    {
        let power = |i: u32| -> Vec<S> {
            // (c0 + c1 t)^i
            let mut p = vec![S::one()];
            for _ in 0..i {
                let mut q = vec![S::zero(); p.len() + 1];
                for (k, a) in p.iter().enumerate() {
                    q[k] = q[k].clone() + a.clone() * c0.clone();
                    q[k + 1] = q[k + 1].clone() + a.clone() * c1.clone();
                }
                p = q;
            }
            p
        };
        let mut out = PathElement::zero(m.degree);
        for (i, e) in &m.poly {
            out = out.add(&self.mul_poly(&power(*i), &PathElement::constant(e.clone())));
        }
        for (i, e) in &m.dt {
            let p: Vec<S> = power(*i).into_iter().map(|c| c * c1.clone()).collect();
            out = out.add(&self.mul_poly(&p, &PathElement::dt_monomial(0, e.clone())));
        }
        out
    }
}

/// `(l, n, m(t, dt))` with `l ∈ L`, `n ∈ N`, `m ∈ M[t, dt]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PathTriple<E> {
    pub l: E,
    pub n: E,
    pub m: PathElement<E>,
}

impl<S: Scalar, E: GradedElement<S>> GradedElement<S> for PathTriple<E> {
    fn degree(&self) -> i32 {
        if !self.l.is_zero() {
            self.l.degree()
        } else if !self.n.is_zero() {
            self.n.degree()
        } else {
            self.m.degree
        }
    }

    fn is_zero(&self) -> bool {
        self.l.is_zero() && self.n.is_zero() && GradedElement::<S>::is_zero(&self.m)
    }

    fn add(&self, o: &Self) -> Self {
        PathTriple {
            l: self.l.add(&o.l),
            n: self.n.add(&o.n),
            m: self.m.add(&o.m),
        }
    }

    fn scale(&self, c: &S) -> Self {
        PathTriple {
            l: self.l.scale(c),
            n: self.n.scale(c),
            m: self.m.scale(c),
        }
    }
}

/// The DGLA `H = {(l, n, m) | h(l) = m(1), g(n) = m(0)}` of a pair,
/// together with the contraction `(ι, π, K)` onto the cone.
pub struct HDgla<'p, P: PairOps<S>, S: Scalar> {
    pub pair: &'p P,
    pub path: PathDgla<P::Alg>,
}

impl<'p, S: Scalar, P: PairOps<S>> HDgla<'p, P, S>
where
    P::Alg: Clone,
{
    pub fn new(pair: &'p P) -> Self {
        HDgla {
            pair,
            path: PathDgla::new(pair.m().clone()),
        }
    }
}

type Triple<S, P> = PathTriple<PairElem<S, P>>;
type Cone<S, P> = ConeElem<PairElem<S, P>>;

impl<'p, S: Scalar, P: PairOps<S>> DgLie<S> for HDgla<'p, P, S> {
    type Elem = Triple<S, P>;

    fn zero(&self, degree: i32) -> Self::Elem {
        PathTriple {
            l: self.pair.l().zero(degree),
            n: self.pair.n().zero(degree),
            m: PathElement::zero(degree),
        }
    }

    fn d(&self, x: &Self::Elem) -> Self::Elem {
        PathTriple {
            l: self.pair.l().d(&x.l),
            n: self.pair.n().d(&x.n),
            m: self.path.d(&x.m),
        }
    }

    fn bracket(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        PathTriple {
            l: self.pair.l().bracket(&x.l, &y.l),
            n: self.pair.n().bracket(&x.n, &y.n),
            m: self.path.bracket(&x.m, &y.m),
        }
    }

    fn nilpotency(&self) -> Option<usize> {
        self.pair.m().nilpotency()
    }
}

impl<'p, S: Scalar, P: PairOps<S>> HDgla<'p, P, S> {
    /// `h(l) = m(1)` and `g(n) = m(0)`.
    pub fn is_member(&self, x: &Triple<S, P>) -> bool {
        let one = self.path.eval_at(&x.m, &S::one()).sub(&self.pair.h(&x.l));
        let zero = self.path.eval_at(&x.m, &S::zero()).sub(&self.pair.g(&x.n));
        one.is_zero() && zero.is_zero()
    }

    /// `ι(l, n, m) = (l, n, (1 - t) g(n) + t h(l) + dt m)`
    pub fn iota(&self, c: &Cone<S, P>) -> Triple<S, P> {
        let gn = PathElement::constant(self.pair.g(&c.n));
        let hl = PathElement::monomial(1, self.pair.h(&c.l));
        let m = self
            .path
            .mul_poly(&[S::one(), -S::one()], &gn)
            .add(&hl)
            .add(&PathElement::dt_monomial(0, c.m.clone()));
        PathTriple {
            l: c.l.clone(),
            n: c.n.clone(),
            m,
        }
    }

    /// `π(l, n, m) = (l, n, ∫_0^1 m)`
    pub fn pi(&self, x: &Triple<S, P>) -> Result<Cone<S, P>, PathError> {
        if !self.is_member(x) {
            return Err(PathError::NotMember);
        }
        Ok(self.pi_unchecked(x))
    }

    pub fn pi_unchecked(&self, x: &Triple<S, P>) -> Cone<S, P> {
        ConeElem {
            l: x.l.clone(),
            n: x.n.clone(),
            m: self.path.integrate(&x.m, &S::zero(), &S::one()),
        }
    }

    /// `K(l, n, m) = (0, 0, t ∫_0^1 m - ∫_0^t m)`
    pub fn homotopy_k(&self, x: &Triple<S, P>) -> Triple<S, P> {
        let total = self.path.integrate(&x.m, &S::zero(), &S::one());
        let m = PathElement::monomial(1, total).sub(&self.path.integral_from_zero(&x.m));
        let deg = x.m.degree - 1;
        PathTriple {
            l: self.pair.l().zero(deg),
            n: self.pair.n().zero(deg),
            m,
        }
    }

    /// `q_1 = -d`
    pub fn q1(&self, x: &Triple<S, P>) -> Triple<S, P> {
        self.d(x).neg()
    }

    /// `q_2(x ⊙ y) = (-1)^{deg x} [x, y]`
    pub fn q2(&self, x: &Triple<S, P>, y: &Triple<S, P>) -> Triple<S, P> {
        let b = self.bracket(x, y);
        if GradedElement::<S>::degree(x).rem_euclid(2) == 1 {
            b.neg()
        } else {
            b
        }
    }
}

/// Outcome of the contraction identities on a batch of samples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ContractionReport {
    pub samples: usize,
    pub pi_iota_failures: usize,
    pub homotopy_failures: usize,
    pub side_condition_pairs: usize,
    pub side_condition_failures: usize,
}

impl ContractionReport {
    pub fn passed(&self) -> bool {
        self.pi_iota_failures == 0
            && self.homotopy_failures == 0
            && self.side_condition_failures == 0
    }
}

/// Checks `π ι = id` on cone samples, `id - ι π = K q_1 + q_1 K` on path
/// samples and `q_2(Im K ⊗ Im K) ⊆ ker π ∩ ker K` on consecutive pairs of
/// path samples.
pub fn contraction_check<S: Scalar, P: PairOps<S>>(
    h: &HDgla<'_, P, S>,
    cone_samples: &[Cone<S, P>],
    path_samples: &[Triple<S, P>],
) -> ContractionReport {
    let mut r = ContractionReport {
        samples: cone_samples.len() + path_samples.len(),
        ..Default::default()
    };
    for c in cone_samples {
        let back = h.pi_unchecked(&h.iota(c));
        if !back.sub(c).is_zero() {
            r.pi_iota_failures += 1;
        }
    }
    for x in path_samples {
        let lhs = x.sub(&h.iota(&h.pi_unchecked(x)));
        let rhs = h.homotopy_k(&h.q1(x)).add(&h.q1(&h.homotopy_k(x)));
        if !lhs.sub(&rhs).is_zero() {
            r.homotopy_failures += 1;
        }
    }
    for w in path_samples.windows(2) {
        let (a, b) = (h.homotopy_k(&w[0]), h.homotopy_k(&w[1]));
        let q = h.q2(&a, &b);
        r.side_condition_pairs += 1;
        if !GradedElement::<S>::is_zero(&h.pi_unchecked(&q))
            || !GradedElement::<S>::is_zero(&h.homotopy_k(&q))
        {
            r.side_condition_failures += 1;
        }
    }
    r
}

/// `(l, n, m_1(t, dt), m_2(s, ds))` with `g(n) = m_1(0)`, `h(l) = m_2(1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KQuadruple<E> {
    pub l: E,
    pub n: E,
    pub m1: PathElement<E>,
    pub m2: PathElement<E>,
}

impl<S: Scalar, E: GradedElement<S>> GradedElement<S> for KQuadruple<E> {
    fn degree(&self) -> i32 {
        if !self.l.is_zero() {
            self.l.degree()
        } else if !self.n.is_zero() {
            self.n.degree()
        } else {
            self.m1.degree
        }
    }

    fn is_zero(&self) -> bool {
        self.l.is_zero()
            && self.n.is_zero()
            && GradedElement::<S>::is_zero(&self.m1)
            && GradedElement::<S>::is_zero(&self.m2)
    }

    fn add(&self, o: &Self) -> Self {
        KQuadruple {
            l: self.l.add(&o.l),
            n: self.n.add(&o.n),
            m1: self.m1.add(&o.m1),
            m2: self.m2.add(&o.m2),
        }
    }

    fn scale(&self, c: &S) -> Self {
        KQuadruple {
            l: self.l.scale(c),
            n: self.n.scale(c),
            m1: self.m1.scale(c),
            m2: self.m2.scale(c),
        }
    }
}

/// The quadruple DGLA, componentwise.
pub struct KDgla<'p, P: PairOps<S>, S: Scalar> {
    pub h: &'p HDgla<'p, P, S>,
}

impl<'p, S: Scalar, P: PairOps<S>> DgLie<S> for KDgla<'p, P, S> {
    type Elem = KQuadruple<PairElem<S, P>>;

    fn zero(&self, degree: i32) -> Self::Elem {
        KQuadruple {
            l: self.h.pair.l().zero(degree),
            n: self.h.pair.n().zero(degree),
            m1: PathElement::zero(degree),
            m2: PathElement::zero(degree),
        }
    }

    fn d(&self, x: &Self::Elem) -> Self::Elem {
        let p = self.h.pair;
        KQuadruple {
            l: p.l().d(&x.l),
            n: p.n().d(&x.n),
            m1: self.h.path.d(&x.m1),
            m2: self.h.path.d(&x.m2),
        }
    }

    fn bracket(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let p = self.h.pair;
        KQuadruple {
            l: p.l().bracket(&x.l, &y.l),
            n: p.n().bracket(&x.n, &y.n),
            m1: self.h.path.bracket(&x.m1, &y.m1),
            m2: self.h.path.bracket(&x.m2, &y.m2),
        }
    }

    fn nilpotency(&self) -> Option<usize> {
        self.h.nilpotency()
    }
}

impl<'p, S: Scalar, P: PairOps<S>> KDgla<'p, P, S> {
    /// Endpoint conditions plus `m_1(1) = m_2(0)`.
    pub fn is_member(&self, x: &KQuadruple<PairElem<S, P>>) -> bool {
        let (path, pair) = (&self.h.path, self.h.pair);
        let one = S::one();
        let zero = S::zero();
        path.eval_at(&x.m1, &zero).sub(&pair.g(&x.n)).is_zero()
            && path.eval_at(&x.m2, &one).sub(&pair.h(&x.l)).is_zero()
            && path
                .eval_at(&x.m1, &one)
                .sub(&path.eval_at(&x.m2, &zero))
                .is_zero()
    }
}

/// `(l, n, m) ↦ (l, n, m(t/2), m((s + 1)/2))`
pub fn barycentric_embed<S: Scalar, P: PairOps<S>>(
    h: &HDgla<'_, P, S>,
    x: &Triple<S, P>,
) -> Result<KQuadruple<PairElem<S, P>>, PathError> {
    if !h.is_member(x) {
        return Err(PathError::NotMember);
    }
    let half = S::ratio(1, 2);
    Ok(KQuadruple {
        l: x.l.clone(),
        n: x.n.clone(),
        m1: h.path.substitute_affine(&x.m, &S::zero(), &half),
        m2: h.path.substitute_affine(&x.m, &half, &half),
    })
}

/// `e^{g(t)} * x` in `A[t, dt]` for a Maurer-Cartan `x` and a degree zero
/// family `g` with `g(0) = 0`.
pub fn mc_path_from_gauge<S: Scalar, A: DgLie<S>>(
    path: &PathDgla<A>,
    x: &A::Elem,
    family: &PathElement<A::Elem>,
) -> Result<PathElement<A::Elem>, PathError> {
    if family.has_dt() || !path.eval_at(family, &S::zero()).is_zero() {
        return Err(PathError::BadFamily);
    }
    if !is_mc(&path.inner, x) {
        return Err(PathError::NotMc);
    }
    Ok(gauge_action(
        path,
        family,
        &PathElement::constant(x.clone()),
    )?)
}

/// `λ(t)` with `λ(0) = 0` and `e^{λ(t)} * x(0) = x(t)`.
///
/// Each round subtracts `∫_0^t` of the current residual; the residual's
/// lowest filtration part is closed and vanishes at `t = 0`, so one round
/// kills it. Verified by reconstruction.
pub fn mc_path_decompose<S: Scalar, A: DgLie<S>>(
    path: &PathDgla<A>,
    xpath: &PathElement<A::Elem>,
) -> Result<PathElement<A::Elem>, PathError> {
    if !is_mc(path, xpath) {
        return Err(PathError::NotMc);
    }
    let x0 = path.eval_at(xpath, &S::zero());
    let rounds = path.nilpotency().unwrap_or(64) + 2;
    let mut lambda = PathElement::zero(0);
    for _ in 0..rounds {
        let current = gauge_action(path, &lambda, &PathElement::constant(x0.clone()))?;
        let r = xpath.sub(&current);
        if GradedElement::<S>::is_zero(&r) {
            return Ok(lambda);
        }
        lambda = lambda.sub(&path.integral_from_zero(&r));
        if !lambda.dt.is_empty() {
            return Err(PathError::Decompose);
        }
        // fix the degree of an initially zero family
        lambda.degree = 0;
    }
    Err(PathError::Decompose)
}

/// For `e^μ * x = x` with `μ(0) = 0`, returns `C ∈ A^{-1}` with
/// `μ(1) = dC + [x(1), C]`.
pub fn stabilizer_from_loop<S: Scalar, A: DgLie<S>>(
    path: &PathDgla<A>,
    xpath: &PathElement<A::Elem>,
    mu: &PathElement<A::Elem>,
) -> Result<A::Elem, PathError> {
    let (zero, one) = (S::zero(), S::one());
    if !path.eval_at(mu, &zero).is_zero() {
        return Err(PathError::BadFamily);
    }
    if gauge_action(path, mu, xpath)?
        .sub(xpath)
        .is_zero()
        .then_some(())
        .is_none()
    {
        return Err(PathError::NotFixed);
    }
    let lambda = mc_path_decompose(path, xpath)?;
    // q = -λ • μ • λ fixes the constant path x(0)
    let q = bch_chain(path, &[&lambda.neg(), mu, &lambda])?;
    let c0 = path.integrate(&q, &zero, &one);
    let c = exp_ad(&path.inner, &path.eval_at(&lambda, &one), &c0)?;
    let x1 = path.eval_at(xpath, &one);
    let image = path.inner.d(&c).add(&path.inner.bracket(&x1, &c));
    if !image.sub(&path.eval_at(mu, &one)).is_zero() {
        return Err(PathError::Verification("mu(1) = dC + [x(1), C]"));
    }
    Ok(c)
}

pub mod samples {
    //! Random path data over tensor pairs.

    use super::*;
    use crate::artin::{ArtinAlgebra, NilElement};
    use crate::cone::{PairDiagram, TensorPair};
    use crate::sample::{self, SampleRng};

    pub fn cone_element<S: Scalar>(
        rng: &mut SampleRng,
        p: &PairDiagram<S>,
        ring: &ArtinAlgebra<S>,
        degree: i32,
        density: f64,
    ) -> ConeElem<NilElement<S>> {
        ConeElem {
            l: sample::nil_element(rng, &p.l, ring, degree, density),
            n: sample::nil_element(rng, &p.n, ring, degree, density),
            m: sample::nil_element(rng, &p.m, ring, degree - 1, density),
        }
    }

    /// Random form in `M[t, dt]` of t-degree at most `max_t`.
    pub fn path_element<S: Scalar>(
        rng: &mut SampleRng,
        p: &PairDiagram<S>,
        ring: &ArtinAlgebra<S>,
        degree: i32,
        max_t: u32,
        density: f64,
    ) -> PathElement<NilElement<S>> {
        let mut out = PathElement::zero(degree);
        for i in 0..=max_t {
            if sample::chance(rng, 0.6) {
                put(
                    &mut out.poly,
                    i,
                    sample::nil_element(rng, &p.m, ring, degree, density),
                );
            }
            if sample::chance(rng, 0.6) {
                put(
                    &mut out.dt,
                    i,
                    sample::nil_element(rng, &p.m, ring, degree - 1, density),
                );
            }
        }
        out
    }

    /// Random member of `H`: `ι` of a random cone element plus a form
    /// vanishing at both endpoints.
    pub fn member<S: Scalar>(
        rng: &mut SampleRng,
        h: &HDgla<'_, TensorPair<'_, S>, S>,
        p: &PairDiagram<S>,
        ring: &ArtinAlgebra<S>,
        degree: i32,
        max_t: u32,
        density: f64,
    ) -> PathTriple<NilElement<S>> {
        let base = h.iota(&cone_element(rng, p, ring, degree, density));
        let free = path_element(rng, p, ring, degree, max_t.saturating_sub(2), density);
        // multiply the poly part by t(1 - t) so endpoints stay fixed
        let mut bump = PathElement {
            degree,
            poly: free.poly.clone(),
            dt: BTreeMap::new(),
        };
        bump = h.path.mul_poly(&[S::zero(), S::one(), -S::one()], &bump);
        let dt_part = PathElement {
            degree,
            poly: BTreeMap::new(),
            dt: free.dt,
        };
        PathTriple {
            l: base.l,
            n: base.n,
            m: base.m.add(&bump).add(&dt_part),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;
    use crate::artin::{ArtinAlgebra, NilElement, TensorDgla};
    use crate::catalog;
    use crate::cone::TensorPair;
    use crate::sample;
    use crate::sparse::unit;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn setup(name: &str) -> (catalog::CatalogEntry<Q>, ArtinAlgebra<Q>) {
        (
            catalog::entry::<Q>(name).unwrap(),
            catalog::ring::<Q>("eps3").unwrap(),
        )
    }

    #[test]
    fn evaluation_and_integration() {
        let (e, ring) = setup("gl2-wedge");
        let alg = TensorDgla::new(&e.diagram.m, &ring);
        let path = PathDgla::new(alg);
        let m = NilElement::from_component(0, 0, &unit(0));
        let n = NilElement::from_component(-1 + 1, 0, &unit(1));
        let x = PathElement::monomial(1, m.clone());
        assert!(path.eval_at(&x, &q(0)).is_zero());
        let y = x.add(&PathElement::dt_monomial(0, n.clone()));
        assert_eq!(path.eval_at(&y, &q(1)), m);
        assert_eq!(
            path.integrate(&PathElement::dt_monomial(0, n.clone()), &q(0), &q(1)),
            n
        );
        assert_eq!(
            path.integrate(&PathElement::dt_monomial(1, n.clone()), &q(0), &q(1)),
            n.scale(&Q::new(1.into(), 2.into()))
        );
        assert!(path.integrate(&x, &q(0), &q(1)).is_zero());
    }

    #[test]
    fn path_dgla_axioms_and_evaluation_morphism() {
        let (e, ring) = setup("heisenberg-acyclic");
        let path = PathDgla::new(TensorDgla::new(&e.diagram.m, &ring));
        let mut rng = sample::rng(11);
        for _ in 0..20 {
            let a = path_element(&mut rng, &e.diagram, &ring, 0, 3, 0.3);
            let b = path_element(&mut rng, &e.diagram, &ring, 1, 3, 0.3);
            assert!(path.d(&path.d(&a)).is_zero());
            // Leibniz
            let lhs = path.d(&path.bracket(&a, &b));
            let rhs = path
                .bracket(&path.d(&a), &b)
                .add(&path.bracket(&a, &path.d(&b)));
            assert_eq!(lhs.sub(&rhs), PathElement::zero(2));
            for t in [q(0), q(1), Q::new(2.into(), 3.into())] {
                let e1 = path.eval_at(&path.bracket(&a, &b), &t);
                let e2 = path
                    .inner
                    .bracket(&path.eval_at(&a, &t), &path.eval_at(&b, &t));
                assert!(e1.sub(&e2).is_zero());
                let d1 = path.eval_at(&path.d(&a), &t);
                assert!(d1.sub(&path.inner.d(&path.eval_at(&a, &t))).is_zero());
            }
            // fundamental theorem: d ∫_0^t ω recovers the dt part of closed ω
            let w = path.d(&a);
            let f = path.integral_from_zero(&w);
            let back = path
                .d(&f)
                .sub(&w)
                .add(&PathElement::constant(path.eval_at(&w, &q(0))));
            assert!(back.is_zero());
        }
    }

    #[test]
    fn homotopy_examples() {
        let (e, ring) = setup("abelian-line");
        let pair = TensorPair::new(&e.diagram, &ring);
        let h = HDgla::new(&pair);
        let m = NilElement::from_component(1, 0, &unit(0));
        let zero = NilElement::zero(2);
        let x = PathTriple {
            l: zero.clone(),
            n: zero.clone(),
            m: PathElement::dt_monomial(0, m.clone()),
        };
        assert!(h.homotopy_k(&x).is_zero());
        let y = PathTriple {
            l: zero.clone(),
            n: zero,
            m: PathElement::dt_monomial(1, m.clone()),
        };
        let k = h.homotopy_k(&y);
        let half = Q::new(1.into(), 2.into());
        let expect =
            PathElement::monomial(1, m.scale(&half)).sub(&PathElement::monomial(2, m.scale(&half)));
        assert_eq!(k.m, expect);
        let c = ConeElem {
            l: NilElement::zero(2),
            n: NilElement::zero(2),
            m: m.clone(),
        };
        assert_eq!(h.iota(&c).m, PathElement::dt_monomial(0, m));
    }

    #[test]
    fn contraction_identities() {
        for name in catalog::NAMES {
            let (e, ring) = setup(name);
            let pair = TensorPair::new(&e.diagram, &ring);
            let h = HDgla::new(&pair);
            let mut rng = sample::rng(7);
            let cones: Vec<_> = (0..10)
                .map(|i| cone_element(&mut rng, &e.diagram, &ring, i % 3, 0.3))
                .collect();
            let paths: Vec<_> = (0..10)
                .map(|i| member(&mut rng, &h, &e.diagram, &ring, i % 3, 6, 0.3))
                .collect();
            for p in &paths {
                assert!(h.pi(p).is_ok());
            }
            let r = contraction_check(&h, &cones, &paths);
            assert!(r.passed(), "{name}: {r:?}");
        }
    }

    #[test]
    fn iota_is_a_chain_map_into_h() {
        let (e, ring) = setup("gl2-wedge");
        let pair = TensorPair::new(&e.diagram, &ring);
        let h = HDgla::new(&pair);
        let mut rng = sample::rng(8);
        for _ in 0..10 {
            let c = cone_element(&mut rng, &e.diagram, &ring, 1, 0.3);
            let lhs = h.iota(&crate::cone::cone_d(&pair, &c));
            let rhs = h.d(&h.iota(&c));
            assert!(lhs.sub(&rhs).is_zero());
            assert!(h.pi(&h.iota(&c)).is_ok());
        }
    }

    #[test]
    fn barycentric_is_a_morphism() {
        let (e, ring) = setup("heisenberg-acyclic");
        let pair = TensorPair::new(&e.diagram, &ring);
        let h = HDgla::new(&pair);
        let k = KDgla { h: &h };
        let mut rng = sample::rng(9);
        for _ in 0..10 {
            let a = member(&mut rng, &h, &e.diagram, &ring, 0, 4, 0.3);
            let b = member(&mut rng, &h, &e.diagram, &ring, 1, 4, 0.3);
            let (ea, eb) = (
                barycentric_embed(&h, &a).unwrap(),
                barycentric_embed(&h, &b).unwrap(),
            );
            assert!(k.is_member(&ea) && k.is_member(&eb));
            let br = barycentric_embed(&h, &h.bracket(&a, &b)).unwrap();
            assert!(br.sub(&k.bracket(&ea, &eb)).is_zero());
            let d = barycentric_embed(&h, &h.d(&a)).unwrap();
            assert!(d.sub(&k.d(&ea)).is_zero());
        }
    }

    #[test]
    fn constant_path_embeds_trivially() {
        let (e, ring) = setup("abelian-line");
        let pair = TensorPair::new(&e.diagram, &ring);
        let h = HDgla::new(&pair);
        let v = NilElement::from_component(1, 0, &unit(0));
        let x = PathTriple {
            l: v.clone(),
            n: v.clone(),
            m: PathElement::constant(v.clone()),
        };
        let k = barycentric_embed(&h, &x).unwrap();
        assert_eq!(k.m1, PathElement::constant(v.clone()));
        assert_eq!(k.m2, PathElement::constant(v));
        let bad = PathTriple {
            l: NilElement::zero(1),
            n: NilElement::zero(1),
            m: x.m,
        };
        assert_eq!(barycentric_embed(&h, &bad), Err(PathError::NotMember));
    }

    #[test]
    fn gauge_paths_decompose() {
        for name in ["gl2-wedge", "heisenberg-acyclic", "obstructed-pair"] {
            let (e, ring) = setup(name);
            let path = PathDgla::new(TensorDgla::new(&e.diagram.m, &ring));
            let mut rng = sample::rng(12);
            for _ in 0..5 {
                let x = match crate::cone::random_mc(
                    &e.diagram,
                    &ring,
                    sample::below(&mut rng, 1000) as u64,
                ) {
                    Ok(w) => w.x.map_dgla(&e.diagram.h),
                    Err(_) => continue,
                };
                let fam = path_element(&mut rng, &e.diagram, &ring, 0, 3, 0.3);
                let fam = PathElement {
                    degree: 0,
                    poly: fam.poly.into_iter().filter(|(i, _)| *i > 0).collect(),
                    dt: BTreeMap::new(),
                };
                let xp = mc_path_from_gauge(&path, &x, &fam).unwrap();
                assert!(is_mc(&path, &xp));
                let g1 = gauge_action(&path.inner, &path.eval_at(&fam, &q(1)), &x).unwrap();
                assert!(path.eval_at(&xp, &q(1)).sub(&g1).is_zero());
                let lambda = mc_path_decompose(&path, &xp).unwrap();
                let back = mc_path_from_gauge(&path, &x, &lambda).unwrap();
                assert!(back.sub(&xp).is_zero());
            }
        }
    }

    #[test]
    fn loop_stabilizers() {
        for name in ["gl2-wedge", "heisenberg-acyclic"] {
            let (e, ring) = setup(name);
            let path = PathDgla::new(TensorDgla::new(&e.diagram.m, &ring));
            let mut rng = sample::rng(13);
            for _ in 0..5 {
                let x =
                    crate::cone::random_mc(&e.diagram, &ring, sample::below(&mut rng, 1000) as u64)
                        .unwrap()
                        .y
                        .map_dgla(&e.diagram.g);
                // an irrelevant stabilizer loop: μ(t) = dH(t) + [x(t), H(t)] along a gauge path
                let fam = path_element(&mut rng, &e.diagram, &ring, 0, 2, 0.3);
                let fam = PathElement {
                    degree: 0,
                    poly: fam.poly.into_iter().filter(|(i, _)| *i > 0).collect(),
                    dt: BTreeMap::new(),
                };
                let xp = mc_path_from_gauge(&path, &x, &fam).unwrap();
                let hh = path_element(&mut rng, &e.diagram, &ring, -1, 2, 0.3);
                let hh = PathElement {
                    degree: -1,
                    poly: hh.poly.into_iter().filter(|(i, _)| *i > 0).collect(),
                    dt: BTreeMap::new(),
                };
                let mu = crate::lie::stabilizer_element(&path, &xp, &hh);
                let c = stabilizer_from_loop(&path, &xp, &mu).unwrap();
                let x1 = path.eval_at(&xp, &q(1));
                let image = path.inner.d(&c).add(&path.inner.bracket(&x1, &c));
                assert!(image.sub(&path.eval_at(&mu, &q(1))).is_zero());
            }
            let x = NilElement::zero(1);
            let xp = PathElement::constant(x);
            assert!(stabilizer_from_loop(&path, &xp, &PathElement::zero(0))
                .unwrap()
                .is_zero());
        }
    }
}
