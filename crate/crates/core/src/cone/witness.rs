use std::fmt;

use crate::artin::{ArtinAlgebra, FiberProduct, NilElement, SmallExtension};
use crate::cone::{build_cone, ConeComplex, ConeElem, PairDiagram, PairError, PairOps, TensorPair};
use crate::dgla::{cohomology, CohomologyGroup};
use crate::lie::{bch_chain, gauge_action, mc_residual, stabilizer_element, GradedElement};
use crate::linalg;
use crate::sample;
use crate::scalar::Scalar;
use crate::sparse::{from_dense, to_dense, SparseVec};

/// `(x, y, e^p)` with `x ∈ L¹⊗m_A`, `y ∈ N¹⊗m_A` and the group element
/// stored through its logarithm `p ∈ M⁰⊗m_A`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairMCWitness<S> {
    pub x: NilElement<S>,
    pub y: NilElement<S>,
    pub p: NilElement<S>,
}

impl<S: Scalar> PairMCWitness<S> {
    pub fn zero() -> Self {
        PairMCWitness {
            x: NilElement::zero(1),
            y: NilElement::zero(1),
            p: NilElement::zero(0),
        }
    }

    pub fn as_cone(&self) -> ConeElem<NilElement<S>> {
        ConeElem {
            l: self.x.clone(),
            n: self.y.clone(),
            m: self.p.clone(),
        }
    }

    pub fn from_cone(c: &ConeElem<NilElement<S>>) -> Self {
        PairMCWitness {
            x: c.l.clone(),
            y: c.n.clone(),
            p: c.m.clone(),
        }
    }
}

/// `(a, b, c)` with `a ∈ L⁰⊗m_A`, `b ∈ N⁰⊗m_A`, `c ∈ M⁻¹⊗m_A`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivWitness<S> {
    pub a: NilElement<S>,
    pub b: NilElement<S>,
    pub c: NilElement<S>,
}

impl<S: Scalar> EquivWitness<S> {
    pub fn zero() -> Self {
        EquivWitness {
            a: NilElement::zero(0),
            b: NilElement::zero(0),
            c: NilElement::zero(-1),
        }
    }

    pub fn as_cone(&self) -> ConeElem<NilElement<S>> {
        ConeElem {
            l: self.a.clone(),
            n: self.b.clone(),
            m: self.c.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McEquation {
    L,
    N,
    Gluing,
}

impl fmt::Display for McEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            McEquation::L => "dx + 1/2[x,x] = 0",
            McEquation::N => "dy + 1/2[y,y] = 0",
            McEquation::Gluing => "g(y) = e^p * h(x)",
        })
    }
}

/// Residuals `(dx + ½[x,x], dy + ½[y,y], g(y) - e^p * h(x))`.
pub fn mc_pair_residuals<S: Scalar>(
    p: &PairDiagram<S>,
    ring: &ArtinAlgebra<S>,
    w: &PairMCWitness<S>,
) -> Result<[NilElement<S>; 3], PairError> {
    let t = TensorPair::new(p, ring);
    let rl = mc_residual(&t.l, &w.x);
    let rn = mc_residual(&t.n, &w.y);
    let moved = gauge_action(&t.m, &w.p, &t.h(&w.x))?;
    Ok([rl, rn, t.g(&w.y).sub(&moved)])
}

/// The equations that fail, in order.
pub fn mc_pair_failures<S: Scalar>(
    p: &PairDiagram<S>,
    ring: &ArtinAlgebra<S>,
    w: &PairMCWitness<S>,
) -> Result<Vec<McEquation>, PairError> {
    let r = mc_pair_residuals(p, ring, w)?;
    Ok([McEquation::L, McEquation::N, McEquation::Gluing]
        .into_iter()
        .zip(r.iter())
        .filter(|(_, v)| !v.is_zero())
        .map(|(e, _)| e)
        .collect())
}

pub fn mc_pair_verify<S: Scalar>(
    p: &PairDiagram<S>,
    ring: &ArtinAlgebra<S>,
    w: &PairMCWitness<S>,
) -> bool {
    matches!(mc_pair_failures(p, ring, w), Ok(f) if f.is_empty())
}

/// The action of `(a, b, c)`: `x ↦ e^a * x`, `y ↦ e^b * y` and
/// `e^p ↦ e^{g(b)} e^T e^p e^{-h(a)}` with `T = dc + [g(y), c]`.
pub fn equivalence_action<S: Scalar>(
    p: &PairDiagram<S>,
    ring: &ArtinAlgebra<S>,
    w: &PairMCWitness<S>,
    ew: &EquivWitness<S>,
) -> Result<PairMCWitness<S>, PairError> {
    let t = TensorPair::new(p, ring);
    let x = gauge_action(&t.l, &ew.a, &w.x)?;
    let y = gauge_action(&t.n, &ew.b, &w.y)?;
    let tt = stabilizer_element(&t.m, &t.g(&w.y), &ew.c);
    let gb = t.g(&ew.b);
    let ha = t.h(&ew.a).neg();
    let pp = bch_chain(&t.m, &[&gb, &tt, &w.p, &ha])?;
    Ok(PairMCWitness { x, y, p: pp })
}

/// True iff `ew` carries `w1` to `w2`. Both witnesses must be MC.
pub fn pair_equiv_verify<S: Scalar>(
    p: &PairDiagram<S>,
    ring: &ArtinAlgebra<S>,
    w1: &PairMCWitness<S>,
    w2: &PairMCWitness<S>,
    ew: &EquivWitness<S>,
) -> Result<bool, PairError> {
    if !mc_pair_verify(p, ring, w1) {
        return Err(PairError::NotMc("w1"));
    }
    if !mc_pair_verify(p, ring, w2) {
        return Err(PairError::NotMc("w2"));
    }
    let moved = equivalence_action(p, ring, w1, ew)?;
    Ok(moved.x == w2.x && moved.y == w2.y && moved.p == w2.p)
}

/// The obstruction to lifting a witness across a small extension.
#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionClass<S> {
    /// `J` basis elements as vectors on the total ring basis.
    pub ideal_basis: Vec<SparseVec<S>>,
    /// `(l, k, r)` split along the `J` basis: one cone 2-cocycle per element.
    pub cocycles: Vec<SparseVec<S>>,
    /// Cocycles reduced against the fixed echelon basis of `B²`.
    pub canonical: Vec<SparseVec<S>>,
    /// Coordinates in `H²` for each `J` basis element.
    pub classes: Vec<Vec<S>>,
}

impl<S: Scalar> ObstructionClass<S> {
    pub fn vanishes(&self) -> bool {
        self.canonical.iter().all(|v| v.is_empty())
    }
}

/// Outcome of `lift_mc`.
#[derive(Clone, Debug, PartialEq)]
pub enum LiftOutcome<S> {
    Lifted(PairMCWitness<S>),
    Obstructed(ObstructionClass<S>),
}

fn lift_witness<S: Scalar>(se: &SmallExtension<S>, w: &PairMCWitness<S>) -> PairMCWitness<S> {
    PairMCWitness {
        x: w.x.reindex_ring(&se.section),
        y: w.y.reindex_ring(&se.section),
        p: w.p.reindex_ring(&se.section),
    }
}

/// `(l, k, r)` over the total ring for a lifted witness.
fn residual_cone<S: Scalar>(
    p: &PairDiagram<S>,
    ring: &ArtinAlgebra<S>,
    w: &PairMCWitness<S>,
) -> Result<ConeElem<NilElement<S>>, PairError> {
    let [l, k, r] = mc_pair_residuals(p, ring, w)?;
    // r = -g(y) + e^q * h(x)
    Ok(ConeElem {
        l,
        n: k,
        m: r.neg(),
    })
}

fn project<S: Scalar>(se: &SmallExtension<S>, w: &PairMCWitness<S>) -> PairMCWitness<S> {
    PairMCWitness {
        x: w.x.map_ring(&se.projection),
        y: w.y.map_ring(&se.projection),
        p: w.p.map_ring(&se.projection),
    }
}

pub fn obstruction_class<S: Scalar>(
    p: &PairDiagram<S>,
    se: &SmallExtension<S>,
    w: &PairMCWitness<S>,
    lift_choice: Option<&PairMCWitness<S>>,
) -> Result<ObstructionClass<S>, PairError> {
    if !mc_pair_verify(p, &se.quotient, w) {
        return Err(PairError::NotMc("w"));
    }
    let lifted = match lift_choice {
        Some(l) => {
            if project(se, l) != *w {
                return Err(PairError::BadLift);
            }
            l.clone()
        }
        None => lift_witness(se, w),
    };
    let cone = build_cone(p).expect("valid diagram");
    let e = residual_cone(p, &se.total, &lifted)?;
    for part in [&e.l, &e.n, &e.m] {
        if !part.map_ring(&se.projection).is_zero() {
            return Err(PairError::BadLift);
        }
    }
    let h2 = cohomology(&cone.complex, 2);
    let mut cocycles = Vec::new();
    let mut canonical = Vec::new();
    let mut classes = Vec::new();
    for row in &se.ideal {
        let pivot = *row.keys().next().expect("nonzero ideal vector");
        let v = cone.component(&e, pivot);
        if !cone.complex.differential().apply(&v).is_empty() {
            return Err(PairError::NotCocycle(cone.space().format_vector(&v)));
        }
        canonical.push(h2.reduce(&v));
        classes.push(h2.class_of(&v).expect("cocycle"));
        cocycles.push(v);
    }
    Ok(ObstructionClass {
        ideal_basis: se.ideal.clone(),
        cocycles,
        canonical,
        classes,
    })
}

/// Solves `D δ = target` for `δ` in cone degree `degree`.
fn solve_d<S: Scalar>(
    cone: &ConeComplex<S>,
    degree: i32,
    target: &SparseVec<S>,
) -> Option<SparseVec<S>> {
    let rows = cone.space().in_degree(degree + 1);
    let cols = cone.space().in_degree(degree);
    let a = cone.d_matrix(degree);
    let b = to_dense(target, &rows);
    if target.keys().any(|k| !rows.contains(k)) {
        return None;
    }
    linalg::solve(&a, &b, cols.len()).map(|x| from_dense(&x, &cols))
}

fn add_cone<S: Scalar>(w: &PairMCWitness<S>, c: &ConeElem<NilElement<S>>) -> PairMCWitness<S> {
    PairMCWitness {
        x: w.x.add(&c.l),
        y: w.y.add(&c.n),
        p: w.p.add(&c.m),
    }
}

/// Lifts `w` across the small extension, or returns the nonzero class.
pub fn lift_mc<S: Scalar>(
    p: &PairDiagram<S>,
    se: &SmallExtension<S>,
    w: &PairMCWitness<S>,
) -> Result<LiftOutcome<S>, PairError> {
    let class = obstruction_class(p, se, w, None)?;
    if !class.vanishes() {
        return Ok(LiftOutcome::Obstructed(class));
    }
    let cone = build_cone(p).expect("valid diagram");
    let mut lifted = lift_witness(se, w);
    for (row, e) in se.ideal.iter().zip(&class.cocycles) {
        let neg: SparseVec<S> = e.iter().map(|(k, c)| (*k, -c.clone())).collect();
        let delta = solve_d(&cone, 1, &neg).expect("vanishing class means the cocycle is exact");
        // δ ⊗ j for the ideal vector j
        for (mu, coeff) in row {
            let piece = cone.tensor(&crate::sparse::scaled(coeff, &delta), 1, *mu);
            lifted = add_cone(&lifted, &piece);
        }
    }
    if !mc_pair_verify(p, &se.total, &lifted) {
        return Err(PairError::NotMc("lift"));
    }
    Ok(LiftOutcome::Lifted(lifted))
}

/// Kills the order-`k` part of the Maurer-Cartan residual of `w`, assuming
/// lower orders already vanish. Returns the order on failure.
pub fn solve_order<S: Scalar>(
    p: &PairDiagram<S>,
    cone: &ConeComplex<S>,
    ring: &ArtinAlgebra<S>,
    w: &PairMCWitness<S>,
    k: usize,
) -> Result<PairMCWitness<S>, usize> {
    let e = residual_cone(p, ring, w).map_err(|_| k)?;
    let mut out = w.clone();
    for mu in ring.of_order(k) {
        let v = cone.component(&e, mu);
        if v.is_empty() {
            continue;
        }
        let neg: SparseVec<S> = v.iter().map(|(i, c)| (*i, -c.clone())).collect();
        let delta = solve_d(cone, 1, &neg).ok_or(k)?;
        out = add_cone(&out, &cone.tensor(&delta, 1, mu));
    }
    Ok(out)
}

fn random_cocycle<S: Scalar>(
    rng: &mut sample::SampleRng,
    z1: &[Vec<S>],
    coords: &[usize],
) -> SparseVec<S> {
    let mut v = vec![S::zero(); coords.len()];
    for z in z1 {
        if sample::chance(rng, 0.6) {
            let c: S = sample::coefficient(rng);
            for (x, y) in v.iter_mut().zip(z) {
                *x = x.clone() + c.clone() * y.clone();
            }
        }
    }
    from_dense(&v, coords)
}

/// Random `(a, b, c)` with coefficients in `m_A`.
pub fn random_equivalence<S: Scalar>(
    p: &PairDiagram<S>,
    ring: &ArtinAlgebra<S>,
    rng: &mut sample::SampleRng,
) -> EquivWitness<S> {
    EquivWitness {
        a: sample::nil_element(rng, &p.l, ring, 0, 0.35),
        b: sample::nil_element(rng, &p.n, ring, 0, 0.35),
        c: sample::nil_element(rng, &p.m, ring, -1, 0.35),
    }
}

/// A witness in the gauge orbit of zero; always Maurer-Cartan.
pub fn trivial_orbit_witness<S: Scalar>(
    p: &PairDiagram<S>,
    ring: &ArtinAlgebra<S>,
    seed: u64,
) -> Result<PairMCWitness<S>, PairError> {
    let mut rng = sample::rng(seed);
    let ew = random_equivalence(p, ring, &mut rng);
    equivalence_action(p, ring, &PairMCWitness::zero(), &ew)
}

/// Order-by-order random Maurer-Cartan witness followed by a random gauge
/// move. Fails with the order of the first obstruction met.
pub fn random_mc<S: Scalar>(
    p: &PairDiagram<S>,
    ring: &ArtinAlgebra<S>,
    seed: u64,
) -> Result<PairMCWitness<S>, usize> {
    let mut rng = sample::rng(seed);
    let cone = build_cone(p).expect("valid diagram");
    let coords = cone.space().in_degree(1);
    let z1 = linalg::nullspace(&cone.d_matrix(1), coords.len());
    let mut w = PairMCWitness::zero();
    for k in 1..=ring.max_order() {
        if k >= 2 {
            w = solve_order(p, &cone, ring, &w, k)?;
        }
        for mu in ring.of_order(k) {
            let z = random_cocycle(&mut rng, &z1, &coords);
            w = add_cone(&w, &cone.tensor(&z, 1, mu));
        }
    }
    let ew = random_equivalence(p, ring, &mut rng);
    let moved = equivalence_action(p, ring, &w, &ew).map_err(|_| 0usize)?;
    debug_assert!(mc_pair_verify(p, ring, &moved));
    Ok(moved)
}

/// [`random_mc`], falling back to a gauge-trivial witness when an
/// obstruction is met.
pub fn sample_mc<S: Scalar>(
    p: &PairDiagram<S>,
    ring: &ArtinAlgebra<S>,
    seed: u64,
) -> PairMCWitness<S> {
    random_mc(p, ring, seed)
        .or_else(|_| trivial_orbit_witness(p, ring, seed))
        .expect("gauge orbit of zero is Maurer-Cartan")
}

/// Outcome of the order-by-order equivalence search.
#[derive(Clone, Debug, PartialEq)]
pub enum SearchOutcome<S> {
    Found(EquivWitness<S>),
    /// No attempt succeeded; `order` is the highest order any attempt reached.
    Failed {
        order: usize,
    },
    BudgetExhausted,
}

/// Best-effort search for `(a, b, c)` carrying `w1` to `w2`: each filtration
/// order is a linear system in the new corrections. Choices are not
/// revisited within an attempt; later attempts add random elements of
/// `Z⁰` of the cone to each correction. Failure does not prove
/// inequivalence.
pub fn search_equivalence<S: Scalar>(
    p: &PairDiagram<S>,
    ring: &ArtinAlgebra<S>,
    w1: &PairMCWitness<S>,
    w2: &PairMCWitness<S>,
    attempts: usize,
) -> Result<SearchOutcome<S>, PairError> {
    if !mc_pair_verify(p, ring, w1) {
        return Err(PairError::NotMc("w1"));
    }
    if !mc_pair_verify(p, ring, w2) {
        return Err(PairError::NotMc("w2"));
    }
    let cone = build_cone(p).expect("valid diagram");
    let coords = cone.space().in_degree(0);
    let z0 = linalg::nullspace(&cone.d_matrix(0), coords.len());
    let mut rng = sample::rng(0);
    let mut worst = 0;
    for attempt in 0..attempts {
        let mut ew = EquivWitness::zero();
        let mut failed = None;
        'orders: for k in 1..=ring.max_order() {
            let moved = equivalence_action(p, ring, w1, &ew)?;
            let diff = ConeElem {
                l: w2.x.sub(&moved.x),
                n: w2.y.sub(&moved.y),
                m: w2.p.sub(&moved.p),
            };
            for mu in ring.of_order(k) {
                let r = cone.component(&diff, mu);
                // the linear part of the action is -D on (a, b, c)
                let neg: SparseVec<S> = r.iter().map(|(i, c)| (*i, -c.clone())).collect();
                let Some(mut delta) = solve_d(&cone, 0, &neg) else {
                    failed = Some(k);
                    break 'orders;
                };
                if attempt > 0 {
                    delta = crate::sparse::sum(&delta, &random_cocycle(&mut rng, &z0, &coords));
                }
                let piece = cone.tensor(&delta, 0, mu);
                ew = EquivWitness {
                    a: ew.a.add(&piece.l),
                    b: ew.b.add(&piece.n),
                    c: ew.c.add(&piece.m),
                };
            }
        }
        match failed {
            None if pair_equiv_verify(p, ring, w1, w2, &ew)? => {
                return Ok(SearchOutcome::Found(ew))
            }
            None => worst = worst.max(ring.max_order()),
            Some(k) => worst = worst.max(k),
        }
        if attempt == 0 && z0.is_empty() {
            return Ok(SearchOutcome::Failed { order: worst });
        }
    }
    if attempts == 0 {
        return Ok(SearchOutcome::BudgetExhausted);
    }
    Ok(SearchOutcome::Failed { order: worst })
}

/// Restricts a witness over a fiber product to one of its factors.
pub fn project_witness<S: Scalar>(
    w: &PairMCWitness<S>,
    phi: &crate::artin::ArtinMorphism<S>,
) -> PairMCWitness<S> {
    PairMCWitness {
        x: w.x.map_ring(phi),
        y: w.y.map_ring(phi),
        p: w.p.map_ring(phi),
    }
}

fn glue_elem<S: Scalar>(
    fp: &FiberProduct<S>,
    u: &NilElement<S>,
    v: &NilElement<S>,
) -> Result<NilElement<S>, crate::artin::ArtinError> {
    let mut idx: Vec<usize> = u
        .terms
        .keys()
        .chain(v.terms.keys())
        .map(|(i, _)| *i)
        .collect();
    idx.sort_unstable();
    idx.dedup();
    let mut out = NilElement::zero(if u.is_zero() { v.degree } else { u.degree });
    for i in idx {
        let cu: SparseVec<S> = u
            .terms
            .iter()
            .filter(|((j, _), _)| *j == i)
            .map(|((_, m), c)| (*m, c.clone()))
            .collect();
        let cv: SparseVec<S> = v
            .terms
            .iter()
            .filter(|((j, _), _)| *j == i)
            .map(|((_, m), c)| (*m, c.clone()))
            .collect();
        for (m, c) in fp.glue(&cu, &cv)? {
            out.terms.insert((i, m), c);
        }
    }
    Ok(out)
}

/// The witness over `B ×_A C` restricting to `wb` and `wc`.
pub fn glue_witness<S: Scalar>(
    fp: &FiberProduct<S>,
    wb: &PairMCWitness<S>,
    wc: &PairMCWitness<S>,
) -> Result<PairMCWitness<S>, crate::artin::ArtinError> {
    Ok(PairMCWitness {
        x: glue_elem(fp, &wb.x, &wc.x)?,
        y: glue_elem(fp, &wb.y, &wc.y)?,
        p: glue_elem(fp, &wb.p, &wc.p)?,
    })
}

#[allow(dead_code)]
fn h2_of<S: Scalar>(cone: &ConeComplex<S>) -> CohomologyGroup<S> {
    cohomology(&cone.complex, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin::make_small_extension;
    use crate::catalog;
    use crate::sparse::unit;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn random_witnesses_verify() {
        for name in catalog::NAMES {
            let e = catalog::entry::<Q>(name).unwrap();
            for rname in ["dual", "eps3", "st"] {
                let ring = catalog::ring::<Q>(rname).unwrap();
                for seed in 0..4 {
                    match random_mc(&e.diagram, &ring, seed) {
                        Ok(w) => assert!(
                            mc_pair_verify(&e.diagram, &ring, &w),
                            "{name} {rname} {seed}"
                        ),
                        Err(k) => {
                            assert!(name == "obstructed-pair" && k >= 2, "{name} {rname} {seed}")
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn seeds_are_deterministic() {
        let e = catalog::entry::<Q>("gl2-wedge").unwrap();
        let ring = catalog::ring::<Q>("eps3").unwrap();
        assert_eq!(
            random_mc(&e.diagram, &ring, 9),
            random_mc(&e.diagram, &ring, 9)
        );
    }

    #[test]
    fn action_preserves_mc_and_is_detected() {
        for name in catalog::NAMES {
            let e = catalog::entry::<Q>(name).unwrap();
            for rname in ["eps3", "st"] {
                let ring = catalog::ring::<Q>(rname).unwrap();
                let w1 = trivial_orbit_witness(&e.diagram, &ring, 4).unwrap();
                let mut rng = sample::rng(5);
                let ew = random_equivalence(&e.diagram, &ring, &mut rng);
                let w2 = equivalence_action(&e.diagram, &ring, &w1, &ew).unwrap();
                assert!(mc_pair_verify(&e.diagram, &ring, &w2));
                assert!(pair_equiv_verify(&e.diagram, &ring, &w1, &w2, &ew).unwrap());
                match search_equivalence(&e.diagram, &ring, &w1, &w2, 200).unwrap() {
                    SearchOutcome::Found(f) => {
                        assert!(pair_equiv_verify(&e.diagram, &ring, &w1, &w2, &f).unwrap())
                    }
                    other => panic!("{name} {rname}: {other:?}"),
                }
            }
        }
    }

    #[test]
    fn corrupted_gluing_is_named() {
        let e = catalog::entry::<Q>("abelian-line").unwrap();
        let ring = catalog::ring::<Q>("dual").unwrap();
        let w = PairMCWitness {
            x: NilElement::from_component(1, 0, &unit(0)),
            y: NilElement::from_component(1, 0, &crate::sparse::scaled(&q(2), &unit(0))),
            p: NilElement::zero(0),
        };
        assert_eq!(
            mc_pair_failures(&e.diagram, &ring, &w).unwrap(),
            vec![McEquation::Gluing]
        );
    }

    fn eps_extension() -> SmallExtension<Q> {
        let total = catalog::ring::<Q>("eps3").unwrap();
        let j = total.monomial(&[2]).unwrap();
        make_small_extension(&total, &[j]).unwrap()
    }

    #[test]
    fn obstructed_pair_does_not_lift() {
        let e = catalog::entry::<Q>("obstructed-pair").unwrap();
        let se = eps_extension();
        let x = NilElement::from_component(1, 0, &unit(0));
        let w = PairMCWitness {
            x: x.clone(),
            y: x,
            p: NilElement::zero(0),
        };
        assert!(mc_pair_verify(&e.diagram, &se.quotient, &w));
        match lift_mc(&e.diagram, &se, &w).unwrap() {
            LiftOutcome::Obstructed(c) => assert!(!c.vanishes()),
            LiftOutcome::Lifted(_) => panic!("lifted"),
        }
    }

    #[test]
    fn unobstructed_lifts() {
        let se = eps_extension();
        for name in ["abelian-line", "gl2-wedge", "heisenberg-acyclic"] {
            let e = catalog::entry::<Q>(name).unwrap();
            let w = random_mc(&e.diagram, &se.quotient, 2).unwrap();
            match lift_mc(&e.diagram, &se, &w).unwrap() {
                LiftOutcome::Lifted(l) => {
                    assert!(mc_pair_verify(&e.diagram, &se.total, &l));
                    assert_eq!(project_witness(&l, &se.projection), w);
                }
                LiftOutcome::Obstructed(c) => panic!("{name}: {c:?}"),
            }
        }
    }
}
