//! Presentations of finite dimensional DGLAs by structure constants.

mod complex;

pub use complex::{cohomology, CohomologyGroup, CohomologyTable, Complex, ComplexError};

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::graded::{GradedError, GradedMap, GradedSpace};
use crate::scalar::{parity_sign, sign, Scalar};
use crate::sparse::{add_term, axpy, difference, scaled, SparseVec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DglaError {
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error("differential must have degree 1 on the DGLA space")]
    BadDifferential,
    #[error("bracket [{left},{right}] -> {target}: degrees do not add")]
    BracketDegree {
        left: String,
        right: String,
        target: String,
    },
    #[error("bracket [{left},{right}] given twice")]
    DuplicateBracket { left: String, right: String },
    #[error("morphism {0} does not match source or target")]
    MorphismSpaces(String),
}

/// A DGLA given by a differential matrix and bracket structure constants.
///
/// Brackets are stored for index pairs `i <= j`; the other half follows
/// from graded antisymmetry. A full table is cached for fast lookup.
#[derive(Clone, Debug, PartialEq)]
pub struct DglaPresentation<S> {
    space: GradedSpace,
    differential: GradedMap<S>,
    upper: BTreeMap<(usize, usize), SparseVec<S>>,
    table: Vec<Vec<SparseVec<S>>>,
}

impl<S: Scalar> DglaPresentation<S> {
    /// `brackets` are `((i, j), [e_i, e_j])`; pairs with `i > j` are turned
    /// around by antisymmetry before storage.
    pub fn new(
        space: GradedSpace,
        differential: GradedMap<S>,
        brackets: impl IntoIterator<Item = ((usize, usize), SparseVec<S>)>,
    ) -> Result<Self, DglaError> {
        if differential.source() != &space
            || differential.target() != &space
            || differential.degree() != 1
        {
            return Err(DglaError::BadDifferential);
        }
        let mut upper: BTreeMap<(usize, usize), SparseVec<S>> = BTreeMap::new();
        for ((i, j), v) in brackets {
            let target_degree = space.degree(i) + space.degree(j);
            if let Some((&k, _)) = v.iter().find(|(k, _)| space.degree(**k) != target_degree) {
                return Err(DglaError::BracketDegree {
                    left: space.name(i).into(),
                    right: space.name(j).into(),
                    target: space.name(k).into(),
                });
            }
            let (key, val) = if i <= j {
                ((i, j), v)
            } else {
                let s = -parity_sign((space.degree(i) * space.degree(j)) as i64);
                ((j, i), scaled(&sign::<S>(s), &v))
            };
            if upper.contains_key(&key) {
                return Err(DglaError::DuplicateBracket {
                    left: space.name(key.0).into(),
                    right: space.name(key.1).into(),
                });
            }
            if !val.is_empty() {
                upper.insert(key, val);
            }
        }
        let n = space.dim();
        let mut table = vec![vec![SparseVec::new(); n]; n];
        for (&(i, j), v) in &upper {
            table[i][j] = v.clone();
            if i != j {
                let s = -parity_sign((space.degree(i) * space.degree(j)) as i64);
                table[j][i] = scaled(&sign::<S>(s), v);
            }
        }
        Ok(DglaPresentation {
            space,
            differential,
            upper,
            table,
        })
    }

    pub fn abelian(space: GradedSpace) -> Self {
        let d = GradedMap::zero(&space, &space, 1);
        Self::new(space, d, []).expect("zero structure is consistent")
    }

    pub fn zero() -> Self {
        Self::abelian(GradedSpace::zero())
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.space.degree(i)
    }

    pub fn differential(&self) -> &GradedMap<S> {
        &self.differential
    }

    /// Stored structure constants, `i <= j` only.
    pub fn brackets(&self) -> &BTreeMap<(usize, usize), SparseVec<S>> {
        &self.upper
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec<S> {
        &self.table[i][j]
    }

    pub fn is_abelian(&self) -> bool {
        self.upper.is_empty()
    }

    pub fn d(&self, v: &SparseVec<S>) -> SparseVec<S> {
        self.differential.apply(v)
    }

    /// Bracket of coordinate vectors (assumed homogeneous or not, bilinear).
    pub fn bracket(&self, x: &SparseVec<S>, y: &SparseVec<S>) -> SparseVec<S> {
        let mut out = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                let v = &self.table[*i][*j];
                if !v.is_empty() {
                    axpy(&mut out, &(a.clone() * b.clone()), v);
                }
            }
        }
        out
    }

    /// Copy with a different bracket table (used for perturbation tests).
    pub fn with_brackets(
        &self,
        brackets: impl IntoIterator<Item = ((usize, usize), SparseVec<S>)>,
    ) -> Result<Self, DglaError> {
        Self::new(self.space.clone(), self.differential.clone(), brackets)
    }

    /// Adds `delta` to the coefficient of `e_k` in `[e_i, e_j]`. With
    /// `one_sided` the mirrored entry `[e_j, e_i]` is left alone, so the
    /// result no longer satisfies antisymmetry. Used to build failing
    /// fixtures.
    pub fn perturbed(&self, i: usize, j: usize, k: usize, delta: S, one_sided: bool) -> Self {
        let mut out = self.clone();
        let bump = |v: &mut SparseVec<S>, c: S| add_term(v, k, c);
        bump(&mut out.table[i][j], delta.clone());
        if i != j && !one_sided {
            let s = -parity_sign((self.degree(i) * self.degree(j)) as i64);
            bump(&mut out.table[j][i], sign::<S>(s) * delta.clone());
        }
        let key = (i.min(j), i.max(j));
        let upper = out.table[key.0][key.1].clone();
        if upper.is_empty() {
            out.upper.remove(&key);
        } else {
            out.upper.insert(key, upper);
        }
        out
    }

    pub fn with_differential(&self, d: GradedMap<S>) -> Result<Self, DglaError> {
        Self::new(self.space.clone(), d, self.upper.clone())
    }
}

/// A morphism of DGLAs given by a degree zero map.
#[derive(Clone, Debug, PartialEq)]
pub struct DglaMorphism<S> {
    pub source: DglaPresentation<S>,
    pub target: DglaPresentation<S>,
    pub map: GradedMap<S>,
}

impl<S: Scalar> DglaMorphism<S> {
    pub fn new(
        source: DglaPresentation<S>,
        target: DglaPresentation<S>,
        map: GradedMap<S>,
    ) -> Result<Self, DglaError> {
        if map.source() != source.space() || map.target() != target.space() || map.degree() != 0 {
            return Err(DglaError::MorphismSpaces("map".into()));
        }
        Ok(DglaMorphism {
            source,
            target,
            map,
        })
    }

    pub fn identity(l: &DglaPresentation<S>) -> Self {
        DglaMorphism {
            source: l.clone(),
            target: l.clone(),
            map: GradedMap::identity(l.space()),
        }
    }

    pub fn zero(source: &DglaPresentation<S>, target: &DglaPresentation<S>) -> Self {
        DglaMorphism {
            source: source.clone(),
            target: target.clone(),
            map: GradedMap::zero(source.space(), target.space(), 0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    DifferentialSquare,
    Antisymmetry,
    Jacobi,
    Leibniz,
    ChainMap,
    BracketPreservation,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::DifferentialSquare => "d^2 = 0",
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Jacobi => "Jacobi",
            Axiom::Leibniz => "Leibniz",
            Axiom::ChainMap => "f d = d f",
            Axiom::BracketPreservation => "f[x,y] = [fx,fy]",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub basis: Vec<String>,
    pub residual: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidityReport {
    pub failures: Vec<AxiomFailure>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    fn record<S: Scalar>(
        &mut self,
        axiom: Axiom,
        space: &GradedSpace,
        basis: &[usize],
        residual: &SparseVec<S>,
        target: &GradedSpace,
    ) {
        if residual.is_empty() {
            return;
        }
        self.failures.push(AxiomFailure {
            axiom,
            basis: basis.iter().map(|&i| space.name(i).to_string()).collect(),
            residual: target.format_vector(residual),
        });
    }

    pub fn fails(&self, axiom: Axiom) -> bool {
        self.failures.iter().any(|f| f.axiom == axiom)
    }
}

/// Checks d² = 0, antisymmetry, Jacobi and Leibniz on basis tuples.
pub fn validate_dgla<S: Scalar>(l: &DglaPresentation<S>) -> ValidityReport {
    let mut report = ValidityReport::default();
    let sp = l.space();
    let n = l.dim();
    let unit = |i: usize| crate::sparse::unit::<S>(i);
    for i in 0..n {
        let dd = l.d(&l.d(&unit(i)));
        report.record(Axiom::DifferentialSquare, sp, &[i], &dd, sp);
    }
    for i in 0..n {
        for j in i..n {
            let s = -parity_sign((l.degree(i) * l.degree(j)) as i64);
            let res = difference(
                l.bracket_basis(i, j),
                &scaled(&sign::<S>(s), l.bracket_basis(j, i)),
            );
            report.record(Axiom::Antisymmetry, sp, &[i, j], &res, sp);
        }
    }
    // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
    for i in 0..n {
        for j in 0..n {
            let xy = l.bracket_basis(i, j).clone();
            for k in 0..n {
                let lhs = l.bracket(&unit(i), l.bracket_basis(j, k));
                let mut rhs = l.bracket(&xy, &unit(k));
                let s = sign::<S>(parity_sign((l.degree(i) * l.degree(j)) as i64));
                axpy(&mut rhs, &s, &l.bracket(&unit(j), l.bracket_basis(i, k)));
                report.record(Axiom::Jacobi, sp, &[i, j, k], &difference(&lhs, &rhs), sp);
            }
        }
    }
    // d[x,y] = [dx,y] + (-1)^{|x|} [x,dy]
    for i in 0..n {
        let dx = l.d(&unit(i));
        for j in 0..n {
            let lhs = l.d(l.bracket_basis(i, j));
            let mut rhs = l.bracket(&dx, &unit(j));
            let s = sign::<S>(parity_sign(l.degree(i) as i64));
            axpy(&mut rhs, &s, &l.bracket(&unit(i), &l.d(&unit(j))));
            report.record(Axiom::Leibniz, sp, &[i, j], &difference(&lhs, &rhs), sp);
        }
    }
    report
}

/// Checks that `f` commutes with differentials and brackets.
pub fn validate_morphism<S: Scalar>(f: &DglaMorphism<S>) -> ValidityReport {
    let mut report = ValidityReport::default();
    let (src, tgt) = (&f.source, &f.target);
    let n = src.dim();
    for i in 0..n {
        let e = crate::sparse::unit::<S>(i);
        let res = difference(&f.map.apply(&src.d(&e)), &tgt.d(&f.map.apply(&e)));
        report.record(Axiom::ChainMap, src.space(), &[i], &res, tgt.space());
    }
    for i in 0..n {
        let fi = f.map.column(i);
        for j in i..n {
            let lhs = f.map.apply(src.bracket_basis(i, j));
            let rhs = tgt.bracket(fi, f.map.column(j));
            report.record(
                Axiom::BracketPreservation,
                src.space(),
                &[i, j],
                &difference(&lhs, &rhs),
                tgt.space(),
            );
        }
    }
    report
}

/// Direct product `L1 × L2`. Basis names are kept when disjoint and suffixed
/// with `_1` / `_2` otherwise.
pub fn product_dgla<S: Scalar>(
    l1: &DglaPresentation<S>,
    l2: &DglaPresentation<S>,
) -> DglaPresentation<S> {
    let clash = l1
        .space()
        .basis()
        .iter()
        .any(|b| l2.space().index_of(&b.name).is_some());
    let rename = |name: &str, k: usize| {
        if clash {
            format!("{name}_{k}")
        } else {
            name.to_string()
        }
    };
    let n1 = l1.dim();
    let space = GradedSpace::new(
        l1.space()
            .basis()
            .iter()
            .map(|b| (rename(&b.name, 1), b.degree))
            .chain(
                l2.space()
                    .basis()
                    .iter()
                    .map(|b| (rename(&b.name, 2), b.degree)),
            ),
    )
    .expect("renamed basis is unique");
    let mut d = GradedMap::zero(&space, &space, 1);
    for (t, s, c) in l1.differential().entries() {
        d.add_entry(t, s, c.clone()).expect("degrees preserved");
    }
    for (t, s, c) in l2.differential().entries() {
        d.add_entry(t + n1, s + n1, c.clone())
            .expect("degrees preserved");
    }
    let shift_vec = |v: &SparseVec<S>| -> SparseVec<S> {
        let mut out = SparseVec::new();
        for (k, c) in v {
            add_term(&mut out, k + n1, c.clone());
        }
        out
    };
    let brackets = l1
        .brackets()
        .iter()
        .map(|(k, v)| (*k, v.clone()))
        .chain(
            l2.brackets()
                .iter()
                .map(|(&(i, j), v)| ((i + n1, j + n1), shift_vec(v))),
        )
        .collect::<Vec<_>>();
    DglaPresentation::new(space, d, brackets).expect("product of valid presentations")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn single(i: usize, c: Q) -> SparseVec<Q> {
        let mut v = SparseVec::new();
        v.insert(i, c);
        v
    }

    pub(crate) fn gl2() -> DglaPresentation<Q> {
        // E11, E12, E21, E22 with [Eij, Ekl] = δjk Eil − δli Ekj
        let names = ["E11", "E12", "E21", "E22"];
        let space = GradedSpace::new(names.iter().map(|n| (*n, 0))).unwrap();
        let idx = |i: usize, j: usize| 2 * i + j;
        let mut brackets = Vec::new();
        for a in 0..4 {
            for b in a..4 {
                let (i, j) = (a / 2, a % 2);
                let (k, l) = (b / 2, b % 2);
                let mut v = SparseVec::new();
                if j == k {
                    add_term(&mut v, idx(i, l), q(1));
                }
                if l == i {
                    add_term(&mut v, idx(k, j), q(-1));
                }
                brackets.push(((a, b), v));
            }
        }
        DglaPresentation::new(space.clone(), GradedMap::zero(&space, &space, 1), brackets).unwrap()
    }

    #[test]
    fn abelian_is_valid() {
        let sp = GradedSpace::new([("a", 0), ("b", 1)]).unwrap();
        assert!(validate_dgla(&DglaPresentation::<Q>::abelian(sp)).is_valid());
    }

    #[test]
    fn gl2_is_valid() {
        assert!(validate_dgla(&gl2()).is_valid());
    }

    #[test]
    fn d_squared_failure_names_element() {
        let sp = GradedSpace::new([("a", 0), ("b", 1), ("c", 2)]).unwrap();
        let d = GradedMap::from_entries(&sp, &sp, 1, [(1, 0, q(1)), (2, 1, q(1))]).unwrap();
        let l = DglaPresentation::new(sp, d, []).unwrap();
        let rep = validate_dgla(&l);
        assert!(rep.fails(Axiom::DifferentialSquare));
        assert_eq!(rep.failures[0].basis, vec!["a".to_string()]);
    }

    #[test]
    fn bracket_degree_error_names_entry() {
        let sp = GradedSpace::new([("a", 0), ("b", 1)]).unwrap();
        let d = GradedMap::zero(&sp, &sp, 1);
        let err = DglaPresentation::<Q>::new(sp, d, [((0, 0), single(1, q(1)))]).unwrap_err();
        assert!(err.to_string().contains("[a,a]"));
    }

    #[test]
    fn morphism_checks() {
        let g = gl2();
        assert!(validate_morphism(&DglaMorphism::identity(&g)).is_valid());
        assert!(validate_morphism(&DglaMorphism::zero(&g, &g)).is_valid());
        let doubled = DglaMorphism::new(
            g.clone(),
            g.clone(),
            GradedMap::identity(g.space()).scale(&q(2)),
        )
        .unwrap();
        let rep = validate_morphism(&doubled);
        assert!(rep.fails(Axiom::BracketPreservation));
        assert!(!rep.fails(Axiom::ChainMap));
    }

    #[test]
    fn lower_half_entries_are_reoriented() {
        let sp = GradedSpace::new([("x", 1), ("y", 1), ("z", 2)]).unwrap();
        let d = GradedMap::zero(&sp, &sp, 1);
        let l = DglaPresentation::<Q>::new(sp, d, [((1, 0), single(2, q(3)))]).unwrap();
        // odd-odd: [y,x] = [x,y]
        assert_eq!(l.bracket_basis(0, 1), &single(2, q(3)));
        assert_eq!(l.bracket_basis(1, 0), &single(2, q(3)));
        assert!(validate_dgla(&l).is_valid());
    }

    #[test]
    fn product_properties() {
        let g = gl2();
        let p = product_dgla(&g, &DglaPresentation::zero());
        assert_eq!(p, g);
        let a = DglaPresentation::<Q>::abelian(GradedSpace::new([("a", 1)]).unwrap());
        let pa = product_dgla(&a, &a);
        assert!(pa.is_abelian());
        assert_eq!(pa.space().name(1), "a_2");
        let pg = product_dgla(&g, &a);
        assert!(validate_dgla(&pg).is_valid());
    }
}
