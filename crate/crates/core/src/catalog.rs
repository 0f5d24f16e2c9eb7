//! Built-in pair diagrams, coefficient rings and the Lie data behind them.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::artin::{make_artin, ArtinAlgebra, ArtinError};
use crate::cone::{build_cone, cone_les_check, PairDiagram, PairError};
use crate::dgla::{validate_dgla, CohomologyTable, DglaError, DglaPresentation};
use crate::graded::{GradedMap, GradedSpace};
use crate::scalar::{parity_sign, sign, Scalar};
use crate::sparse::{add_term, axpy, SparseVec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatalogError {
    #[error("Lie data fails Jacobi on ({0}, {1}, {2})")]
    Jacobi(String, String, String),
    #[error("Lie data: unknown basis element {0}")]
    Unknown(String),
    #[error("exterior generator {0} must have odd degree")]
    EvenGenerator(String),
    #[error("differential of {0} has the wrong degree")]
    DifferentialDegree(String),
    #[error("tensor DGLA fails its axioms: {0}")]
    Invalid(String),
    #[error(transparent)]
    Dgla(#[from] DglaError),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error("no catalog entry named {0}")]
    NoEntry(String),
}

/// A finite dimensional Lie algebra concentrated in degree zero.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<S> {
    pub names: Vec<String>,
    /// `[e_i, e_j]` for `i < j`.
    pub brackets: BTreeMap<(usize, usize), SparseVec<S>>,
}

impl<S: Scalar> LieAlgebra<S> {
    /// `entries` are `(x, y, [(z, c)])` meaning `[x, y] = Σ c z`.
    pub fn new(
        names: &[&str],
        entries: &[(&str, &str, Vec<(&str, S)>)],
    ) -> Result<Self, CatalogError> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let idx = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| CatalogError::Unknown(s.into()))
        };
        let mut brackets: BTreeMap<(usize, usize), SparseVec<S>> = BTreeMap::new();
        for (x, y, v) in entries {
            let (i, j) = (idx(x)?, idx(y)?);
            let mut val = SparseVec::new();
            for (z, c) in v {
                add_term(&mut val, idx(z)?, c.clone());
            }
            if i == j {
                continue;
            }
            let (key, val) = if i < j {
                ((i, j), val)
            } else {
                ((j, i), crate::sparse::scaled(&-S::one(), &val))
            };
            brackets.insert(key, val);
        }
        let g = LieAlgebra { names, brackets };
        g.check_jacobi()?;
        Ok(g)
    }

    pub fn abelian(names: &[&str]) -> Self {
        LieAlgebra {
            names: names.iter().map(|s| s.to_string()).collect(),
            brackets: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec<S> {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => crate::sparse::scaled(
                &-S::one(),
                &self.brackets.get(&(j, i)).cloned().unwrap_or_default(),
            ),
            std::cmp::Ordering::Equal => SparseVec::new(),
        }
    }

    pub fn bracket(&self, x: &SparseVec<S>, y: &SparseVec<S>) -> SparseVec<S> {
        let mut out = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                axpy(
                    &mut out,
                    &(a.clone() * b.clone()),
                    &self.bracket_basis(*i, *j),
                );
            }
        }
        out
    }

    fn check_jacobi(&self) -> Result<(), CatalogError> {
        let n = self.dim();
        let u = |i: usize| crate::sparse::unit::<S>(i);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let a = self.bracket(&u(i), &self.bracket_basis(j, k));
                    let b = self.bracket(&u(j), &self.bracket_basis(k, i));
                    let c = self.bracket(&u(k), &self.bracket_basis(i, j));
                    if !crate::sparse::sum(&crate::sparse::sum(&a, &b), &c).is_empty() {
                        return Err(CatalogError::Jacobi(
                            self.names[i].clone(),
                            self.names[j].clone(),
                            self.names[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `gl_2` on `E11, E12, E21, E22` with `[Eij, Ekl] = δjk Eil - δli Ekj`.
pub fn gl2<S: Scalar>() -> LieAlgebra<S> {
    let names = ["E11", "E12", "E21", "E22"];
    let e = |i: usize, j: usize| format!("E{i}{j}");
    let mut entries: Vec<(String, String, Vec<(String, S)>)> = Vec::new();
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        for (k, l) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let mut v = Vec::new();
            if j == k {
                v.push((e(i, l), S::one()));
            }
            if l == i {
                v.push((e(k, j), -S::one()));
            }
            entries.push((e(i, j), e(k, l), v));
        }
    }
    lie_from_owned(&names, &entries)
}

/// Upper triangular `b ⊂ gl_2` on `E11, E12, E22`.
pub fn borel<S: Scalar>() -> LieAlgebra<S> {
    let one = S::one;
    LieAlgebra::new(
        &["E11", "E12", "E22"],
        &[
            ("E11", "E12", vec![("E12", one())]),
            ("E12", "E22", vec![("E12", one())]),
        ],
    )
    .expect("borel subalgebra satisfies Jacobi")
}

/// `sl_2` on `H, E, F`.
pub fn sl2<S: Scalar>() -> LieAlgebra<S> {
    LieAlgebra::new(
        &["H", "E", "F"],
        &[
            ("H", "E", vec![("E", S::int(2))]),
            ("H", "F", vec![("F", S::int(-2))]),
            ("E", "F", vec![("H", S::one())]),
        ],
    )
    .expect("sl2 satisfies Jacobi")
}

/// Heisenberg algebra `[X, Y] = Z`.
pub fn heisenberg<S: Scalar>() -> LieAlgebra<S> {
    LieAlgebra::new(&["X", "Y", "Z"], &[("X", "Y", vec![("Z", S::one())])])
        .expect("Heisenberg satisfies Jacobi")
}

fn lie_from_owned<S: Scalar>(
    names: &[&str],
    entries: &[(String, String, Vec<(String, S)>)],
) -> LieAlgebra<S> {
    let borrowed: Vec<(&str, &str, Vec<(&str, S)>)> = entries
        .iter()
        .map(|(a, b, v)| {
            (
                a.as_str(),
                b.as_str(),
                v.iter().map(|(z, c)| (z.as_str(), c.clone())).collect(),
            )
        })
        .collect();
    LieAlgebra::new(names, &borrowed).expect("built-in Lie data satisfies Jacobi")
}

/// Sorted generator indices; all generators are odd so this is a monomial
/// of the exterior algebra.
type Wedge = Vec<usize>;

/// `α β` as `(sign, monomial)`, or `None` when a generator repeats.
fn wedge_mul(a: &[usize], b: &[usize]) -> Option<(i32, Wedge)> {
    if a.iter().any(|x| b.contains(x)) {
        return None;
    }
    let mut inversions = 0i64;
    for x in a {
        inversions += b.iter().filter(|y| *y < x).count() as i64;
    }
    let mut out: Wedge = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    Some((parity_sign(inversions), out))
}

fn wedges(k: usize) -> Vec<Wedge> {
    let mut all: Vec<Wedge> = (0u32..(1 << k))
        .map(|mask| (0..k).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    all.sort_by(|a: &Wedge, b: &Wedge| a.len().cmp(&b.len()).then(a.cmp(b)));
    all
}

/// Name of `x ⊗ α`: `x` alone for `α = 1`, otherwise `x_g1_g2`.
pub fn tensor_name(x: &str, gens: &[&str], alpha: &[usize]) -> String {
    let mut s = x.to_string();
    for &i in alpha {
        s.push('_');
        s.push_str(gens[i]);
    }
    s
}

/// `g ⊗ Λ(generators)` with the differential extending `dη` as a
/// derivation. `differential` lists `(η, [(monomial, c)])`, monomials being
/// lists of generator names; the empty monomial is the unit.
pub fn make_tensor_dgla<S: Scalar>(
    g: &LieAlgebra<S>,
    generators: &[(&str, i32)],
    differential: &[(&str, Vec<(Vec<&str>, S)>)],
) -> Result<DglaPresentation<S>, CatalogError> {
    g.check_jacobi()?;
    let gens: Vec<&str> = generators.iter().map(|(n, _)| *n).collect();
    for (n, d) in generators {
        if d.rem_euclid(2) == 0 {
            return Err(CatalogError::EvenGenerator(n.to_string()));
        }
    }
    let gdeg = |a: &[usize]| a.iter().map(|&i| generators[i].1).sum::<i32>();
    let gidx = |s: &str| {
        gens.iter()
            .position(|n| *n == s)
            .ok_or_else(|| CatalogError::Unknown(s.into()))
    };
    let mut dgen: Vec<Vec<(Wedge, S)>> = vec![Vec::new(); gens.len()];
    for (n, terms) in differential {
        let i = gidx(n)?;
        for (mono, c) in terms {
            let mut w: Wedge = mono.iter().map(|s| gidx(s)).collect::<Result<_, _>>()?;
            let unsorted = w.clone();
            w.sort_unstable();
            w.dedup();
            if w.len() != unsorted.len() || gdeg(&w) != generators[i].1 + 1 {
                return Err(CatalogError::DifferentialDegree(n.to_string()));
            }
            // reorder the monomial to sorted form
            let (s, _) = unsorted
                .iter()
                .fold((1i32, Vec::<usize>::new()), |(s, acc), &x| {
                    let (t, m) = wedge_mul(&acc, &[x]).expect("distinct");
                    (s * t, m)
                });
            dgen[i].push((w, sign::<S>(s) * c.clone()));
        }
    }
    let monos = wedges(gens.len());
    let mono_index: BTreeMap<&Wedge, usize> =
        monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let gd = g.dim();
    let index = |x: usize, m: &Wedge| mono_index[m] * gd + x;
    let space = GradedSpace::new(monos.iter().flat_map(|m| {
        g.names
            .iter()
            .map(|x| (tensor_name(x, &gens, m), gdeg(m)))
            .collect::<Vec<_>>()
    }))
    .map_err(DglaError::from)?;
    // dα via Leibniz, all generators odd
    let d_wedge = |alpha: &Wedge| -> BTreeMap<Wedge, S> {
        let mut out = BTreeMap::new();
        for (p, &gi) in alpha.iter().enumerate() {
            let (before, after) = (&alpha[..p], &alpha[p + 1..]);
            for (w, c) in &dgen[gi] {
                let Some((s1, bw)) = wedge_mul(before, w) else {
                    continue;
                };
                let Some((s2, full)) = wedge_mul(&bw, after) else {
                    continue;
                };
                let s = parity_sign(p as i64) * s1 * s2;
                add_term(&mut out, full, sign::<S>(s) * c.clone());
            }
        }
        out
    };
    let mut d = GradedMap::zero(&space, &space, 1);
    for m in &monos {
        let dm = d_wedge(m);
        for x in 0..gd {
            for (w, c) in &dm {
                d.add_entry(index(x, w), index(x, m), c.clone())
                    .map_err(DglaError::from)?;
            }
        }
    }
    let mut brackets = Vec::new();
    for (a, ma) in monos.iter().enumerate() {
        for mb in monos.iter().skip(a) {
            let Some((s, prod)) = wedge_mul(ma, mb) else {
                continue;
            };
            for x in 0..gd {
                for y in 0..gd {
                    let (i, j) = (index(x, ma), index(y, mb));
                    if i > j {
                        continue;
                    }
                    let v = crate::sparse::scaled(&sign::<S>(s), &g.bracket_basis(x, y));
                    if v.is_empty() {
                        continue;
                    }
                    let v: SparseVec<S> =
                        v.into_iter().map(|(z, c)| (index(z, &prod), c)).collect();
                    brackets.push(((i, j), v));
                }
            }
        }
    }
    let l = DglaPresentation::new(space, d, brackets)?;
    let report = validate_dgla(&l);
    if !report.is_valid() {
        let f = &report.failures[0];
        return Err(CatalogError::Invalid(format!(
            "{} on {:?}",
            f.axiom, f.basis
        )));
    }
    Ok(l)
}

/// `gl_2 ⊗ Λ(generators)` with all generators in degree 1 and `d = 0`.
pub fn gl2_exterior<S: Scalar>(generators: &[&str]) -> DglaPresentation<S> {
    let gens: Vec<(&str, i32)> = generators.iter().map(|g| (*g, 1)).collect();
    make_tensor_dgla(&gl2(), &gens, &[]).expect("gl2 tensor exterior algebra is a DGLA")
}

/// Sends each basis element to the same-named element of the target, or
/// through `rename` first.
pub fn inclusion_by_name<S: Scalar>(
    src: &DglaPresentation<S>,
    tgt: &DglaPresentation<S>,
    rename: impl Fn(&str) -> SparseVec<S>,
) -> GradedMap<S> {
    let mut m = GradedMap::zero(src.space(), tgt.space(), 0);
    for (s, b) in src.space().basis().iter().enumerate() {
        for (t, c) in rename(&b.name) {
            m.add_entry(t, s, c).expect("names match degrees");
        }
    }
    m
}

/// Pinned facts about an entry, checked whenever it is loaded.
#[derive(Clone, Debug, PartialEq)]
pub struct Properties {
    /// Nonzero `(degree, dim H(C))`.
    pub cone_cohomology: Vec<(i32, usize)>,
    pub h_injective: bool,
    pub m_nonnegative: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry<S> {
    pub name: &'static str,
    pub summary: &'static str,
    pub diagram: PairDiagram<S>,
    pub properties: Properties,
}

pub const NAMES: [&str; 4] = [
    "abelian-line",
    "gl2-wedge",
    "obstructed-pair",
    "heisenberg-acyclic",
];

pub fn catalog_list() -> Vec<&'static str> {
    NAMES.to_vec()
}

fn by_name<S: Scalar>(tgt: &DglaPresentation<S>) -> impl Fn(&str) -> SparseVec<S> + '_ {
    move |n| crate::sparse::unit(tgt.space().index_of(n).expect("same names"))
}

fn abelian_line<S: Scalar>() -> PairDiagram<S> {
    let l = DglaPresentation::abelian(GradedSpace::new([("e", 1)]).expect("one element"));
    let id = GradedMap::identity(l.space());
    PairDiagram::new(l.clone(), l.clone(), l, id.clone(), id).expect("identity maps")
}

fn gl2_wedge<S: Scalar>() -> PairDiagram<S> {
    let m = gl2_exterior::<S>(&["eta1", "eta2"]);
    let l = gl2_exterior::<S>(&["eta1"]);
    let n = make_tensor_dgla(&borel(), &[("eta2", 1)], &[]).expect("valid");
    let h = inclusion_by_name(&l, &m, by_name(&m));
    let g = inclusion_by_name(&n, &m, by_name(&m));
    PairDiagram::new(l, n, m, h, g).expect("inclusions are morphisms")
}

fn obstructed_pair<S: Scalar>() -> PairDiagram<S> {
    let space = GradedSpace::new([("x", 1), ("y", 2)]).expect("distinct");
    let d = GradedMap::zero(&space, &space, 1);
    let l =
        DglaPresentation::new(space, d, [((0, 0), crate::sparse::unit(1))]).expect("degrees add");
    let id = GradedMap::identity(l.space());
    PairDiagram::new(l.clone(), l.clone(), l, id.clone(), id).expect("identity maps")
}

fn heisenberg_acyclic<S: Scalar>() -> PairDiagram<S> {
    let hz = heisenberg::<S>();
    let m = make_tensor_dgla(
        &hz,
        &[("sigma", -1), ("eta", 1)],
        &[("sigma", vec![(vec![], S::one())])],
    )
    .expect("valid");
    let l = make_tensor_dgla(&hz, &[("eta", 1)], &[]).expect("valid");
    let n = l.clone();
    let h = inclusion_by_name(&l, &m, by_name(&m));
    // X -> X, Y -> X + Y, Z -> Z on each exterior component
    let g = inclusion_by_name(&n, &m, |name| {
        let mut v = crate::sparse::unit(m.space().index_of(name).expect("same names"));
        if let Some(rest) = name.strip_prefix('Y') {
            add_term(
                &mut v,
                m.space().index_of(&format!("X{rest}")).expect("X partner"),
                S::one(),
            );
        }
        v
    });
    PairDiagram::new(l, n, m, h, g).expect("Lie morphism tensored with the identity")
}

fn pinned(name: &str) -> Properties {
    let dims = |v: &[(i32, usize)]| v.to_vec();
    match name {
        "abelian-line" => Properties {
            cone_cohomology: dims(&[(1, 1)]),
            h_injective: true,
            m_nonnegative: true,
        },
        "gl2-wedge" => Properties {
            cone_cohomology: dims(&[(0, 3), (2, 1), (3, 4)]),
            h_injective: true,
            m_nonnegative: true,
        },
        "obstructed-pair" => Properties {
            cone_cohomology: dims(&[(1, 1), (2, 1)]),
            h_injective: true,
            m_nonnegative: true,
        },
        "heisenberg-acyclic" => Properties {
            cone_cohomology: dims(&[(0, 6), (1, 6)]),
            h_injective: true,
            m_nonnegative: false,
        },
        _ => unreachable!("pinned data exists for every listed name"),
    }
}

fn summary(name: &str) -> &'static str {
    match name {
        "abelian-line" => "one degree 1 generator, h = g = id",
        "gl2-wedge" => "gl2 ⊗ Λ(eta1) -> gl2 ⊗ Λ(eta1, eta2) <- b ⊗ Λ(eta2), inclusions",
        "obstructed-pair" => "x:1, y:2 with [x,x] = y and h = g = id; H² of the cone is nonzero",
        "heisenberg-acyclic" => {
            "Heisenberg ⊗ Λ(eta) into the acyclic Heisenberg ⊗ Λ(sigma, eta), dsigma = 1"
        }
        _ => unreachable!("summary exists for every listed name"),
    }
}

/// Computes the facts pinned for an entry.
pub fn compute_properties<S: Scalar>(p: &PairDiagram<S>) -> Properties {
    let cone = build_cone(p).expect("valid diagram");
    let table = CohomologyTable::new(&cone.complex);
    Properties {
        cone_cohomology: table.dims(),
        h_injective: p.h_injective(),
        m_nonnegative: p.m_nonnegative(),
    }
}

/// Builds an entry without load checks.
pub fn build_entry<S: Scalar>(name: &str) -> Result<CatalogEntry<S>, CatalogError> {
    let name = NAMES
        .iter()
        .copied()
        .find(|n| *n == name)
        .ok_or_else(|| CatalogError::NoEntry(name.into()))?;
    let diagram = match name {
        "abelian-line" => abelian_line(),
        "gl2-wedge" => gl2_wedge(),
        "obstructed-pair" => obstructed_pair(),
        _ => heisenberg_acyclic(),
    };
    Ok(CatalogEntry {
        name,
        summary: summary(name),
        diagram,
        properties: pinned(name),
    })
}

/// Builds and checks an entry: axioms, morphisms, `D² = 0`, the long exact
/// sequence and the pinned cohomology.
pub fn entry<S: Scalar>(name: &str) -> Result<CatalogEntry<S>, CatalogError> {
    let e = build_entry(name)?;
    load_check(&e)?;
    Ok(e)
}

pub fn load_check<S: Scalar>(e: &CatalogEntry<S>) -> Result<(), CatalogError> {
    let p = &e.diagram;
    for l in [&p.l, &p.n, &p.m] {
        let r = validate_dgla(l);
        if !r.is_valid() {
            return Err(CatalogError::Invalid(format!(
                "{}: {:?}",
                e.name, r.failures[0]
            )));
        }
    }
    if !cone_les_check(p).exact() {
        return Err(CatalogError::Invalid(format!(
            "{}: long exact sequence",
            e.name
        )));
    }
    let got = compute_properties(p);
    if got != e.properties {
        return Err(CatalogError::Invalid(format!(
            "{}: pinned properties differ, computed {:?}",
            e.name, got
        )));
    }
    Ok(())
}

pub fn all_entries<S: Scalar>() -> Vec<CatalogEntry<S>> {
    NAMES
        .iter()
        .map(|n| entry(n).expect("catalog entries load"))
        .collect()
}

/// Named coefficient rings.
pub const RING_NAMES: [&str; 5] = ["dual", "eps3", "eps4", "st", "st3"];

pub fn ring<S: Scalar>(name: &str) -> Result<ArtinAlgebra<S>, ArtinError> {
    match name {
        "dual" => make_artin(&["eps"], 2, &[]),
        "eps3" => make_artin(&["eps"], 3, &[]),
        "eps4" => make_artin(&["eps"], 4, &[]),
        "st" => make_artin(
            &["s", "t"],
            3,
            &[vec![(vec![2, 0], S::one())], vec![(vec![0, 2], S::one())]],
        ),
        "st3" => make_artin(&["s", "t"], 3, &[]),
        _ => Err(ArtinError::UnknownMonomial(name.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{gauge_action, GradedElement};
    use crate::Q;

    #[test]
    fn entries_load() {
        for n in NAMES {
            let e = entry::<Q>(n).unwrap();
            assert_eq!(e.name, n);
        }
    }

    #[test]
    fn abelian_lie_gives_abelian_dgla() {
        let g = LieAlgebra::<Q>::abelian(&["u", "v"]);
        let l = make_tensor_dgla(&g, &[("eta", 1)], &[]).unwrap();
        assert!(l.is_abelian());
        assert_eq!(l.dim(), 4);
    }

    #[test]
    fn sl2_with_one_generator() {
        let l = make_tensor_dgla(&sl2::<Q>(), &[("eta", 1)], &[]).unwrap();
        assert_eq!(
            l.space().degrees().into_iter().collect::<Vec<_>>(),
            vec![0, 1]
        );
        assert!(!l.is_abelian());
        assert!(validate_dgla(&l).is_valid());
    }

    #[test]
    fn bad_lie_data_rejected() {
        let q = |n: i64| Q::from_integer(n.into());
        let err = LieAlgebra::new(
            &["a", "b", "c"],
            &[
                ("a", "b", vec![("a", q(1))]),
                ("b", "c", vec![("b", q(1))]),
                ("a", "c", vec![("b", q(1))]),
            ],
        );
        assert!(err.is_err());
        let e = make_tensor_dgla(&sl2::<Q>(), &[("t", 2)], &[]);
        assert!(matches!(e, Err(CatalogError::EvenGenerator(_))));
    }

    #[test]
    fn heisenberg_tensor_is_acyclic() {
        let hz = heisenberg::<Q>();
        let m = make_tensor_dgla(
            &hz,
            &[("sigma", -1), ("eta", 1)],
            &[("sigma", vec![(vec![], Q::from_integer(1.into()))])],
        )
        .unwrap();
        let t = CohomologyTable::new(&crate::cone::dgla_complex(&m));
        assert!(t.dims().iter().all(|(_, d)| *d == 0));
    }

    #[test]
    fn nilpotent_gauge_terminates_quickly() {
        // strictly upper triangular: every ad series stops after dim g terms
        let ring = ring::<Q>("eps4").unwrap();
        let hz = make_tensor_dgla(&heisenberg::<Q>(), &[("eta", 1)], &[]).unwrap();
        let t = crate::artin::TensorDgla::new(&hz, &ring);
        let mut rng = crate::sample::rng(3);
        for _ in 0..10 {
            let a = crate::sample::nil_element(&mut rng, &hz, &ring, 0, 0.8);
            let x = crate::sample::nil_element(&mut rng, &hz, &ring, 1, 0.8);
            let mut ad = x.clone();
            for _ in 0..hz.space().dim_in_degree(0) {
                ad = crate::lie::DgLie::bracket(&t, &a, &ad);
            }
            assert!(ad.is_zero());
            let _ = gauge_action(&t, &a, &x).unwrap();
        }
    }

    #[test]
    fn rings() {
        for n in RING_NAMES {
            assert!(ring::<Q>(n).unwrap().check_axioms());
        }
        assert_eq!(ring::<Q>("st").unwrap().dim(), 3);
    }
}
