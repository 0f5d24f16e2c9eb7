//! The suspended mapping cone of a pair `h: L -> M <- N: g`, its long exact
//! sequence, the injective-`h` reduction and the Maurer-Cartan functor of
//! the pair.

mod ops;
mod witness;

pub use ops::{cone_d, cone_zero, ConeElem, PairElem, PairOps, TensorPair};
pub use witness::{
    equivalence_action, glue_witness, lift_mc, mc_pair_failures, mc_pair_residuals, mc_pair_verify,
    obstruction_class, pair_equiv_verify, project_witness, random_equivalence, random_mc,
    sample_mc, search_equivalence, solve_order, trivial_orbit_witness, EquivWitness, LiftOutcome,
    McEquation, ObstructionClass, PairMCWitness, SearchOutcome,
};

use thiserror::Error;

use crate::artin::NilElement;
use crate::dgla::{
    validate_morphism, CohomologyTable, Complex, DglaMorphism, DglaPresentation, ValidityReport,
};
use crate::graded::{GradedMap, GradedSpace};
use crate::lie::LieError;
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;
use crate::sparse::{add_term, SparseVec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PairError {
    #[error("morphism {0} is not a DGLA morphism: {1}")]
    InvalidMorphism(&'static str, String),
    #[error("morphism {0} has the wrong source or target")]
    Spaces(&'static str),
    #[error("h is not injective")]
    NotInjective,
    #[error("witness {0} does not satisfy the Maurer-Cartan equations")]
    NotMc(&'static str),
    #[error("lift does not project to the given witness")]
    BadLift,
    #[error("cocycle condition fails for the obstruction: {0}")]
    NotCocycle(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// A diagram `h: L -> M <- N: g` of DGLAs.
#[derive(Clone, Debug, PartialEq)]
pub struct PairDiagram<S> {
    pub l: DglaPresentation<S>,
    pub n: DglaPresentation<S>,
    pub m: DglaPresentation<S>,
    pub h: GradedMap<S>,
    pub g: GradedMap<S>,
}

fn summary(r: &ValidityReport) -> String {
    r.failures
        .iter()
        .take(3)
        .map(|f| format!("{} on {:?}", f.axiom, f.basis))
        .collect::<Vec<_>>()
        .join("; ")
}

impl<S: Scalar> PairDiagram<S> {
    /// Builds the diagram, rejecting maps that are not DGLA morphisms.
    pub fn new(
        l: DglaPresentation<S>,
        n: DglaPresentation<S>,
        m: DglaPresentation<S>,
        h: GradedMap<S>,
        g: GradedMap<S>,
    ) -> Result<Self, PairError> {
        let hm = DglaMorphism::new(l.clone(), m.clone(), h.clone())
            .map_err(|_| PairError::Spaces("h"))?;
        let gm = DglaMorphism::new(n.clone(), m.clone(), g.clone())
            .map_err(|_| PairError::Spaces("g"))?;
        let rh = validate_morphism(&hm);
        if !rh.is_valid() {
            return Err(PairError::InvalidMorphism("h", summary(&rh)));
        }
        let rg = validate_morphism(&gm);
        if !rg.is_valid() {
            return Err(PairError::InvalidMorphism("g", summary(&rg)));
        }
        Ok(PairDiagram { l, n, m, h, g })
    }

    pub fn h_morphism(&self) -> DglaMorphism<S> {
        DglaMorphism {
            source: self.l.clone(),
            target: self.m.clone(),
            map: self.h.clone(),
        }
    }

    pub fn g_morphism(&self) -> DglaMorphism<S> {
        DglaMorphism {
            source: self.n.clone(),
            target: self.m.clone(),
            map: self.g.clone(),
        }
    }

    pub fn h_injective(&self) -> bool {
        self.h.is_injective()
    }

    /// True when `M` has nothing in negative degrees.
    pub fn m_nonnegative(&self) -> bool {
        self.m.space().basis().iter().all(|b| b.degree >= 0)
    }
}

/// The cone complex with `C^i = L^i ⊕ N^i ⊕ M^{i-1}`, basis ordered as
/// `L`, then `N`, then `M`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeComplex<S> {
    pub complex: Complex<S>,
    pub dims: (usize, usize, usize),
}

impl<S: Scalar> ConeComplex<S> {
    pub fn space(&self) -> &GradedSpace {
        self.complex.space()
    }

    pub fn join(&self, l: &SparseVec<S>, n: &SparseVec<S>, m: &SparseVec<S>) -> SparseVec<S> {
        let (nl, nn, _) = self.dims;
        let mut out = SparseVec::new();
        for (i, c) in l {
            add_term(&mut out, *i, c.clone());
        }
        for (i, c) in n {
            add_term(&mut out, nl + i, c.clone());
        }
        for (i, c) in m {
            add_term(&mut out, nl + nn + i, c.clone());
        }
        out
    }

    pub fn split(&self, v: &SparseVec<S>) -> (SparseVec<S>, SparseVec<S>, SparseVec<S>) {
        let (nl, nn, _) = self.dims;
        let (mut l, mut n, mut m) = (SparseVec::new(), SparseVec::new(), SparseVec::new());
        for (i, c) in v {
            if *i < nl {
                l.insert(*i, c.clone());
            } else if *i < nl + nn {
                n.insert(i - nl, c.clone());
            } else {
                m.insert(i - nl - nn, c.clone());
            }
        }
        (l, n, m)
    }

    /// Coefficient of the ring basis element `mu` as a cone vector.
    pub fn component(&self, c: &ConeElem<NilElement<S>>, mu: usize) -> SparseVec<S> {
        self.join(&c.l.component(mu), &c.n.component(mu), &c.m.component(mu))
    }

    /// `v ⊗ mu` for a cone vector `v` of cone degree `degree`.
    pub fn tensor(&self, v: &SparseVec<S>, degree: i32, mu: usize) -> ConeElem<NilElement<S>> {
        let (l, n, m) = self.split(v);
        ConeElem {
            l: NilElement::from_component(degree, mu, &l),
            n: NilElement::from_component(degree, mu, &n),
            m: NilElement::from_component(degree - 1, mu, &m),
        }
    }

    /// A cone vector viewed as an element over the ground field.
    pub fn to_elem(&self, v: &SparseVec<S>, degree: i32) -> ConeElem<NilElement<S>> {
        self.tensor(v, degree, 0)
    }

    pub fn from_elem(&self, c: &ConeElem<NilElement<S>>) -> SparseVec<S> {
        self.component(c, 0)
    }

    pub fn d_matrix(&self, i: i32) -> Matrix<S> {
        self.complex.d_block(i)
    }
}

/// Builds the cone of the pair and checks `D² = 0`.
pub fn build_cone<S: Scalar>(
    p: &PairDiagram<S>,
) -> Result<ConeComplex<S>, crate::dgla::ComplexError> {
    let (nl, nn, nm) = (p.l.dim(), p.n.dim(), p.m.dim());
    let space = GradedSpace::new(
        p.l.space()
            .basis()
            .iter()
            .map(|b| (format!("l.{}", b.name), b.degree))
            .chain(
                p.n.space()
                    .basis()
                    .iter()
                    .map(|b| (format!("n.{}", b.name), b.degree)),
            )
            .chain(
                p.m.space()
                    .basis()
                    .iter()
                    .map(|b| (format!("m.{}", b.name), b.degree + 1)),
            ),
    )
    .expect("prefixed names are unique");
    let mut d = GradedMap::zero(&space, &space, 1);
    for (t, s, c) in p.l.differential().entries() {
        d.add_entry(t, s, c.clone()).expect("degree");
    }
    for (t, s, c) in p.h.entries() {
        d.add_entry(nl + nn + t, s, c.clone()).expect("degree");
    }
    for (t, s, c) in p.n.differential().entries() {
        d.add_entry(nl + t, nl + s, c.clone()).expect("degree");
    }
    for (t, s, c) in p.g.entries() {
        d.add_entry(nl + nn + t, nl + s, -c.clone())
            .expect("degree");
    }
    for (t, s, c) in p.m.differential().entries() {
        d.add_entry(nl + nn + t, nl + nn + s, -c.clone())
            .expect("degree");
    }
    Ok(ConeComplex {
        complex: Complex::new(d)?,
        dims: (nl, nn, nm),
    })
}

/// Complex underlying a DGLA.
pub fn dgla_complex<S: Scalar>(l: &DglaPresentation<S>) -> Complex<S> {
    Complex::new(l.differential().clone()).expect("DGLA differential squares to zero")
}

#[derive(Clone, Debug, PartialEq)]
pub struct LesNode {
    pub label: String,
    pub degree: i32,
    pub dimension: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub composite_zero: bool,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactnessReport {
    pub nodes: Vec<LesNode>,
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }

    pub fn node(&self, label: &str, degree: i32) -> Option<&LesNode> {
        self.nodes
            .iter()
            .find(|n| n.label == label && n.degree == degree)
    }
}

/// Matrix (columns = images of source representatives) of an induced map.
fn induced<S: Scalar>(
    src: &crate::dgla::CohomologyGroup<S>,
    tgt: Option<&crate::dgla::CohomologyGroup<S>>,
    f: impl Fn(&SparseVec<S>) -> SparseVec<S>,
) -> Matrix<S> {
    let Some(tgt) = tgt else {
        return vec![];
    };
    let cols: Vec<Vec<S>> = src
        .representatives
        .iter()
        .map(|r| {
            tgt.class_of(&f(r))
                .expect("chain map sends cocycles to cocycles")
        })
        .collect();
    linalg::columns_to_rows(&cols, tgt.dimension)
}

fn mat_mul<S: Scalar>(b: &Matrix<S>, a: &Matrix<S>, inner: usize) -> Matrix<S> {
    let cols = a.first().map_or(0, |r| r.len());
    b.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(S::zero(), |acc, k| acc + row[k].clone() * a[k][j].clone())
                })
                .collect()
        })
        .collect()
}

/// Constructs the maps of the long exact sequence
/// `H^i(C) -> H^i(L ⊕ N) -> H^i(M) -> H^{i+1}(C)` and checks exactness at
/// every node.
pub fn cone_les_check<S: Scalar>(p: &PairDiagram<S>) -> ExactnessReport {
    let cone = build_cone(p).expect("valid diagram has D^2 = 0");
    let ln = crate::dgla::product_dgla(&p.l, &p.n);
    let ln_c = dgla_complex(&ln);
    let m_c = dgla_complex(&p.m);
    let hc = CohomologyTable::new(&cone.complex);
    let hln = CohomologyTable::new(&ln_c);
    let hm = CohomologyTable::new(&m_c);
    let (nl, _, _) = cone.dims;
    let lo = [
        cone.complex.degree_range(),
        ln_c.degree_range(),
        m_c.degree_range(),
    ]
    .iter()
    .map(|r| *r.start())
    .min()
    .unwrap_or(0)
        - 1;
    let hi = [
        cone.complex.degree_range(),
        ln_c.degree_range(),
        m_c.degree_range(),
    ]
    .iter()
    .map(|r| *r.end())
    .max()
    .unwrap_or(0)
        + 1;
    let group =
        |t: &CohomologyTable<S>, c: &Complex<S>, i: i32| -> crate::dgla::CohomologyGroup<S> {
            t.group(i)
                .cloned()
                .unwrap_or_else(|| crate::dgla::cohomology(c, i))
        };
    let p_map = |v: &SparseVec<S>| -> SparseVec<S> {
        let (l, n, _) = cone.split(v);
        let mut out = l;
        for (i, c) in n {
            out.insert(nl + i, c);
        }
        out
    };
    let q_map = |v: &SparseVec<S>| -> SparseVec<S> {
        let l: SparseVec<S> = v
            .iter()
            .filter(|(i, _)| **i < nl)
            .map(|(i, c)| (*i, c.clone()))
            .collect();
        let n: SparseVec<S> = v
            .iter()
            .filter(|(i, _)| **i >= nl)
            .map(|(i, c)| (i - nl, c.clone()))
            .collect();
        crate::sparse::difference(&p.h.apply(&l), &p.g.apply(&n))
    };
    let j_map =
        |v: &SparseVec<S>| -> SparseVec<S> { cone.join(&SparseVec::new(), &SparseVec::new(), v) };
    let mut nodes = Vec::new();
    for i in lo..=hi {
        let hc_i = group(&hc, &cone.complex, i);
        let hln_i = group(&hln, &ln_c, i);
        let hm_i = group(&hm, &m_c, i);
        let hm_prev = group(&hm, &m_c, i - 1);
        let hc_next = group(&hc, &cone.complex, i + 1);
        let pm = induced(&hc_i, Some(&hln_i), p_map);
        let qm = induced(&hln_i, Some(&hm_i), q_map);
        let jm_prev = induced(&hm_prev, Some(&hc_i), j_map);
        let jm = induced(&hm_i, Some(&hc_next), j_map);
        let node = |label: &str, dim: usize, a: &Matrix<S>, b: &Matrix<S>| {
            let (ra, rb) = (linalg::rank(a), linalg::rank(b));
            let comp = mat_mul(b, a, dim);
            let zero = comp.iter().all(|r| r.iter().all(|x| x.is_zero()));
            LesNode {
                label: label.to_string(),
                degree: i,
                dimension: dim,
                rank_in: ra,
                rank_out: rb,
                composite_zero: zero,
                exact: zero && ra + rb == dim,
            }
        };
        nodes.push(node("H(C)", hc_i.dimension, &jm_prev, &pm));
        nodes.push(node("H(L+N)", hln_i.dimension, &pm, &qm));
        nodes.push(node("H(M)", hm_i.dimension, &qm, &jm));
    }
    ExactnessReport { nodes }
}

/// Result of the injective-`h` reduction: `γ(l, n, m) = (-n, π(m))` from the
/// cone of the pair to the cone of `π ∘ g: N -> coker(h)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaReport<S> {
    pub coker: Complex<S>,
    pub target: Complex<S>,
    pub gamma: GradedMap<S>,
    /// `(degree, dim H(C), dim H(C_πg), induced map invertible)`
    pub degrees: Vec<(i32, usize, usize, bool)>,
}

impl<S: Scalar> GammaReport<S> {
    pub fn quasi_isomorphism(&self) -> bool {
        self.degrees.iter().all(|(_, a, b, inv)| a == b && *inv)
    }
}

pub fn gamma_map<S: Scalar>(p: &PairDiagram<S>) -> Result<GammaReport<S>, PairError> {
    if !p.h_injective() {
        return Err(PairError::NotInjective);
    }
    let cone = build_cone(p).expect("valid diagram");
    let nm = p.m.dim();
    let cols: Vec<usize> = (0..nm).collect();
    let rows: Matrix<S> = (0..p.l.dim())
        .map(|i| crate::sparse::to_dense(p.h.column(i), &cols))
        .collect();
    let (img, pivots) = linalg::rref(rows);
    let free: Vec<usize> = cols
        .iter()
        .copied()
        .filter(|c| !pivots.contains(c))
        .collect();
    let coker_space = GradedSpace::new(
        free.iter()
            .map(|&i| (p.m.space().name(i).to_string(), p.m.degree(i))),
    )
    .expect("unique");
    let position = |i: usize| free.iter().position(|&f| f == i);
    // π: M -> coker
    let mut pi = GradedMap::zero(p.m.space(), &coker_space, 0);
    for i in 0..nm {
        if let Some(k) = position(i) {
            pi.add_entry(k, i, S::one()).expect("degree");
        } else {
            let r = pivots.iter().position(|&q| q == i).expect("pivot");
            for (k, &f) in free.iter().enumerate() {
                pi.add_entry(k, i, -img[r][f].clone()).expect("degree");
            }
        }
    }
    let mut dc = GradedMap::zero(&coker_space, &coker_space, 1);
    for (k, &f) in free.iter().enumerate() {
        for (t, c) in pi.apply(p.m.differential().column(f)) {
            dc.add_entry(t, k, c).expect("degree");
        }
    }
    let coker = Complex::new(dc.clone()).map_err(|e| PairError::NotCocycle(e.to_string()))?;
    let f = pi.compose(&p.g).expect("spaces");
    let nn = p.n.dim();
    let tspace = GradedSpace::new(
        p.n.space()
            .basis()
            .iter()
            .map(|b| (format!("n.{}", b.name), b.degree))
            .chain(
                coker_space
                    .basis()
                    .iter()
                    .map(|b| (format!("c.{}", b.name), b.degree + 1)),
            ),
    )
    .expect("unique");
    // δ(n, c) = (dn, f(n) - dc)
    let mut delta = GradedMap::zero(&tspace, &tspace, 1);
    for (t, s, c) in p.n.differential().entries() {
        delta.add_entry(t, s, c.clone()).expect("degree");
    }
    for (t, s, c) in f.entries() {
        delta.add_entry(nn + t, s, c.clone()).expect("degree");
    }
    for (t, s, c) in dc.entries() {
        delta.add_entry(nn + t, nn + s, -c.clone()).expect("degree");
    }
    let target = Complex::new(delta).map_err(|e| PairError::NotCocycle(e.to_string()))?;
    let (nl, _, _) = cone.dims;
    let mut gamma = GradedMap::zero(cone.space(), &tspace, 0);
    for j in 0..nn {
        gamma.add_entry(j, nl + j, -S::one()).expect("degree");
    }
    for i in 0..nm {
        for (t, c) in pi.column(i) {
            gamma
                .add_entry(nn + t, nl + nn + i, c.clone())
                .expect("degree");
        }
    }
    let hc = CohomologyTable::new(&cone.complex);
    let ht = CohomologyTable::new(&target);
    let lo = (*cone.complex.degree_range().start()).min(*target.degree_range().start());
    let hi = (*cone.complex.degree_range().end()).max(*target.degree_range().end());
    let mut degrees = Vec::new();
    for i in lo..=hi {
        let a = hc
            .group(i)
            .cloned()
            .unwrap_or_else(|| crate::dgla::cohomology(&cone.complex, i));
        let b = ht
            .group(i)
            .cloned()
            .unwrap_or_else(|| crate::dgla::cohomology(&target, i));
        let m = induced(&a, Some(&b), |v| gamma.apply(v));
        let invertible = a.dimension == b.dimension && linalg::rank(&m) == a.dimension;
        degrees.push((i, a.dimension, b.dimension, invertible));
    }
    Ok(GammaReport {
        coker,
        target,
        gamma,
        degrees,
    })
}

/// `H^1` of the cone: the tangent space of the deformation functor.
pub fn tangent_space<S: Scalar>(p: &PairDiagram<S>) -> (usize, Vec<SparseVec<S>>) {
    let cone = build_cone(p).expect("valid diagram");
    let h1 = crate::dgla::cohomology(&cone.complex, 1);
    (h1.dimension, h1.representatives)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn line(name: &str) -> DglaPresentation<Q> {
        DglaPresentation::abelian(GradedSpace::new([(name, 1)]).unwrap())
    }

    fn identity_pair() -> PairDiagram<Q> {
        let l = line("e");
        PairDiagram::new(
            l.clone(),
            l.clone(),
            l.clone(),
            GradedMap::identity(l.space()),
            GradedMap::identity(l.space()),
        )
        .unwrap()
    }

    #[test]
    fn cone_formulas() {
        let p = identity_pair();
        let c = build_cone(&p).unwrap();
        // D(l,0,0) = (0, 0, h(l))
        let dl = c.complex.differential().apply(&crate::sparse::unit(0));
        assert_eq!(dl, crate::sparse::unit(2));
        let dn = c.complex.differential().apply(&crate::sparse::unit(1));
        assert_eq!(dn, crate::sparse::scaled(&q(-1), &crate::sparse::unit(2)));
        assert_eq!(tangent_space(&p).0, 1);
    }

    #[test]
    fn cone_with_zero_sides_is_l() {
        let l = crate::catalog::gl2_exterior::<Q>(&["eta"]);
        let z = DglaPresentation::zero();
        let p = PairDiagram::new(
            l.clone(),
            z.clone(),
            z.clone(),
            GradedMap::zero(l.space(), z.space(), 0),
            GradedMap::zero(z.space(), z.space(), 0),
        )
        .unwrap();
        let c = build_cone(&p).unwrap();
        assert_eq!(c.space().dim(), l.dim());
        assert!(cone_les_check(&p).exact());
    }

    #[test]
    fn identity_cone_is_acyclic() {
        let l = crate::catalog::gl2_exterior::<Q>(&["eta"]);
        let z = DglaPresentation::zero();
        let p = PairDiagram::new(
            l.clone(),
            z.clone(),
            l.clone(),
            GradedMap::identity(l.space()),
            GradedMap::zero(z.space(), l.space(), 0),
        )
        .unwrap();
        let rep = cone_les_check(&p);
        assert!(rep.exact());
        assert!(rep
            .nodes
            .iter()
            .filter(|n| n.label == "H(C)")
            .all(|n| n.dimension == 0));
        assert_eq!(tangent_space(&p).0, 0);
        let g = gamma_map(&p).unwrap();
        assert!(g.quasi_isomorphism());
    }

    #[test]
    fn zero_diagram() {
        let z = DglaPresentation::<Q>::zero();
        let p = PairDiagram::new(
            z.clone(),
            z.clone(),
            z.clone(),
            GradedMap::zero(z.space(), z.space(), 0),
            GradedMap::zero(z.space(), z.space(), 0),
        )
        .unwrap();
        assert!(cone_les_check(&p).exact());
        assert_eq!(tangent_space(&p).0, 0);
    }

    #[test]
    fn non_morphism_rejected() {
        let l = crate::catalog::gl2_exterior::<Q>(&["eta"]);
        let h = GradedMap::identity(l.space()).scale(&q(2));
        let err = PairDiagram::new(
            l.clone(),
            l.clone(),
            l.clone(),
            h,
            GradedMap::identity(l.space()),
        )
        .unwrap_err();
        assert!(matches!(err, PairError::InvalidMorphism("h", _)));
    }
}
