use thiserror::Error;

use crate::graded::{GradedMap, GradedSpace};
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;
use crate::sparse::{from_dense, to_dense, SparseVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("differential is not a degree 1 endomorphism")]
    BadDifferential,
    #[error("d^2 != 0 on basis element `{0}`")]
    NotAComplex(String),
}

/// A finite cochain complex.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex<S> {
    space: GradedSpace,
    d: GradedMap<S>,
}

impl<S: Scalar> Complex<S> {
    pub fn new(d: GradedMap<S>) -> Result<Self, ComplexError> {
        if d.source() != d.target() || d.degree() != 1 {
            return Err(ComplexError::BadDifferential);
        }
        let dd = d.compose(&d).expect("endomorphism");
        if let Some(i) = (0..dd.source().dim()).find(|&i| !dd.column(i).is_empty()) {
            return Err(ComplexError::NotAComplex(dd.source().name(i).to_string()));
        }
        Ok(Complex {
            space: d.source().clone(),
            d,
        })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn differential(&self) -> &GradedMap<S> {
        &self.d
    }

    /// Matrix of `d : C^i -> C^{i+1}` in the degree-wise bases.
    pub fn d_block(&self, i: i32) -> Matrix<S> {
        self.d
            .block(&self.space.in_degree(i + 1), &self.space.in_degree(i))
    }

    /// Degrees where something can be nonzero, padded by one on each side.
    pub fn degree_range(&self) -> std::ops::RangeInclusive<i32> {
        let degs = self.space.degrees();
        match (degs.first(), degs.last()) {
            (Some(lo), Some(hi)) => (lo - 1)..=(hi + 1),
            _ => 0..=0,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.space
            .basis()
            .iter()
            .map(|b| if b.degree.rem_euclid(2) == 0 { 1 } else { -1 })
            .sum()
    }
}

/// `H^i` with chosen representatives and the data needed to read off
/// coordinates of classes.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyGroup<S> {
    pub degree: i32,
    pub dimension: usize,
    /// Cocycles (as vectors on the whole space) spanning a complement of the coboundaries.
    pub representatives: Vec<SparseVec<S>>,
    coords: Vec<usize>,
    boundary_rows: Matrix<S>,
    boundary_pivots: Vec<usize>,
    cocycle_check: Matrix<S>,
    rep_dense: Vec<Vec<S>>,
}

impl<S: Scalar> CohomologyGroup<S> {
    pub fn is_cocycle(&self, z: &SparseVec<S>) -> bool {
        let v = to_dense(z, &self.coords);
        linalg::mat_vec(&self.cocycle_check, &v)
            .iter()
            .all(|x| x.is_zero())
    }

    /// Canonical form of `z` modulo coboundaries (reduction against the fixed
    /// echelon basis of `B^i`).
    pub fn reduce(&self, z: &SparseVec<S>) -> SparseVec<S> {
        let v = to_dense(z, &self.coords);
        from_dense(
            &linalg::reduce(&self.boundary_rows, &self.boundary_pivots, &v),
            &self.coords,
        )
    }

    pub fn is_coboundary(&self, z: &SparseVec<S>) -> bool {
        self.reduce(z).is_empty()
    }

    /// Coordinates of the class of a cocycle in the representative basis.
    pub fn class_of(&self, z: &SparseVec<S>) -> Option<Vec<S>> {
        if !self.is_cocycle(z) {
            return None;
        }
        let r = linalg::reduce(
            &self.boundary_rows,
            &self.boundary_pivots,
            &to_dense(z, &self.coords),
        );
        let cols: Vec<Vec<S>> = self.rep_dense.clone();
        let a = linalg::columns_to_rows(&cols, self.coords.len());
        linalg::solve(&a, &r, cols.len())
    }
}

fn degree_group<S: Scalar>(c: &Complex<S>, i: i32) -> CohomologyGroup<S> {
    let coords = c.space.in_degree(i);
    let n = coords.len();
    let d_out = c.d_block(i);
    let d_in = c.d_block(i - 1);
    // coboundaries: columns of d_in
    let prev = c.space.in_degree(i - 1);
    let b_rows: Matrix<S> = (0..prev.len())
        .map(|j| d_in.iter().map(|row| row[j].clone()).collect())
        .collect();
    let (boundary_rows, boundary_pivots) = linalg::rref(b_rows);
    let kernel = linalg::nullspace(&d_out, n);
    let reduced: Matrix<S> = kernel
        .iter()
        .map(|z| linalg::reduce(&boundary_rows, &boundary_pivots, z))
        .collect();
    let (reps, _) = linalg::rref(reduced);
    let representatives = reps.iter().map(|r| from_dense(r, &coords)).collect();
    CohomologyGroup {
        degree: i,
        dimension: reps.len(),
        representatives,
        coords,
        boundary_rows,
        boundary_pivots,
        cocycle_check: d_out,
        rep_dense: reps,
    }
}

/// `H^i(C)`. Degrees with empty graded pieces give the zero group.
pub fn cohomology<S: Scalar>(c: &Complex<S>, i: i32) -> CohomologyGroup<S> {
    degree_group(c, i)
}

/// Cohomology in every degree where it can be nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyTable<S> {
    pub groups: Vec<CohomologyGroup<S>>,
}

impl<S: Scalar> CohomologyTable<S> {
    pub fn new(c: &Complex<S>) -> Self {
        CohomologyTable {
            groups: c.degree_range().map(|i| degree_group(c, i)).collect(),
        }
    }

    pub fn group(&self, i: i32) -> Option<&CohomologyGroup<S>> {
        self.groups.iter().find(|g| g.degree == i)
    }

    pub fn dim(&self, i: i32) -> usize {
        self.group(i).map_or(0, |g| g.dimension)
    }

    /// Nonzero dimensions as `(degree, dim)`.
    pub fn dims(&self) -> Vec<(i32, usize)> {
        self.groups
            .iter()
            .filter(|g| g.dimension > 0)
            .map(|g| (g.degree, g.dimension))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;
    use proptest::prelude::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn two_term(c: i64) -> Complex<Q> {
        let sp = GradedSpace::new([("a", 0), ("b", 1)]).unwrap();
        Complex::new(GradedMap::from_entries(&sp, &sp, 1, [(1, 0, q(c))]).unwrap()).unwrap()
    }

    #[test]
    fn small_complexes() {
        let z = Complex::<Q>::new(GradedMap::zero(
            &GradedSpace::zero(),
            &GradedSpace::zero(),
            1,
        ))
        .unwrap();
        assert_eq!(cohomology(&z, 0).dimension, 0);
        let acyclic = two_term(1);
        assert_eq!(cohomology(&acyclic, 0).dimension, 0);
        assert_eq!(cohomology(&acyclic, 1).dimension, 0);
        let split = two_term(0);
        assert_eq!(cohomology(&split, 0).dimension, 1);
        assert_eq!(cohomology(&split, 1).dimension, 1);
        assert_eq!(cohomology(&split, 7).dimension, 0);
    }

    #[test]
    fn non_complex_rejected() {
        let sp = GradedSpace::new([("a", 0), ("b", 1), ("c", 2)]).unwrap();
        let d = GradedMap::<Q>::from_entries(&sp, &sp, 1, [(1, 0, q(1)), (2, 1, q(1))]).unwrap();
        assert_eq!(
            Complex::new(d).unwrap_err(),
            ComplexError::NotAComplex("a".into())
        );
    }

    #[test]
    fn class_coordinates() {
        // a -> b, c isolated in degree 1
        let sp = GradedSpace::new([("a", 0), ("b", 1), ("c", 1)]).unwrap();
        let c = Complex::new(GradedMap::<Q>::from_entries(&sp, &sp, 1, [(1, 0, q(2))]).unwrap())
            .unwrap();
        let h1 = cohomology(&c, 1);
        assert_eq!(h1.dimension, 1);
        let mut z = SparseVec::new();
        z.insert(1, q(5));
        z.insert(2, q(3));
        assert_eq!(h1.class_of(&z), Some(vec![q(3)]));
        assert!(h1.is_coboundary(&crate::sparse::unit(1)));
    }

    fn random_complex() -> impl Strategy<Value = Complex<Q>> {
        // d = B ∘ A with A: C^0 -> C^1 and then a map C^1 -> C^2 vanishing on im A
        (
            1usize..4,
            1usize..5,
            1usize..4,
            proptest::collection::vec(-2i64..3, 40),
        )
            .prop_map(|(n0, n1, n2, vals)| {
                let mut basis = Vec::new();
                for k in 0..n0 {
                    basis.push((format!("x{k}"), 0));
                }
                for k in 0..n1 {
                    basis.push((format!("y{k}"), 1));
                }
                for k in 0..n2 {
                    basis.push((format!("z{k}"), 2));
                }
                let sp = GradedSpace::new(basis).unwrap();
                // choose A arbitrary of rank r; build B from functionals vanishing on im A
                let a: Matrix<Q> = (0..n1)
                    .map(|i| (0..n0).map(|j| q(vals[i * n0 + j])).collect())
                    .collect();
                let a_cols: Matrix<Q> = (0..n0)
                    .map(|j| a.iter().map(|r| r[j].clone()).collect())
                    .collect();
                let ann = linalg::nullspace(&a_cols, n1);
                let mut entries = Vec::new();
                for i in 0..n1 {
                    for j in 0..n0 {
                        entries.push((n0 + i, j, a[i][j].clone()));
                    }
                }
                for k in 0..n2 {
                    if let Some(f) = ann.get(k % ann.len().max(1)) {
                        for i in 0..n1 {
                            let scale = q(vals[30 + k] + 1);
                            entries.push((n0 + n1 + k, n0 + i, f[i].clone() * scale));
                        }
                    }
                }
                Complex::new(GradedMap::from_entries(&sp, &sp, 1, entries).unwrap()).unwrap()
            })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_euler(c in random_complex()) {
            let table = CohomologyTable::new(&c);
            let mut alt = 0i64;
            for i in c.degree_range() {
                let dim_ci = c.space().dim_in_degree(i);
                let d = c.d_block(i);
                let rank = linalg::rank(&d);
                let ker = linalg::nullspace(&d, dim_ci).len();
                prop_assert_eq!(ker + rank, dim_ci);
                let h = table.dim(i) as i64;
                alt += if i.rem_euclid(2) == 0 { h } else { -h };
                let grp = table.group(i).unwrap();
                for r in &grp.representatives {
                    prop_assert!(grp.is_cocycle(r));
                    prop_assert!(!grp.is_coboundary(r));
                }
            }
            prop_assert_eq!(alt, c.euler_characteristic());
        }
    }
}
