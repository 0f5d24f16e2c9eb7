//! Graded vector spaces with named bases, graded linear maps, permutations
//! and Koszul signs.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;
use crate::sparse::{add_term, axpy, SparseVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("duplicate basis name `{0}`")]
    DuplicateName(String),
    #[error("unknown basis name `{0}`")]
    UnknownName(String),
    #[error("entry {target} <- {from} does not have degree {degree}")]
    DegreeMismatch {
        target: String,
        from: String,
        degree: i32,
    },
    #[error("length mismatch: permutation of size {perm} with {degrees} degrees")]
    LengthMismatch { perm: usize, degrees: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("cannot compose maps with mismatched spaces")]
    SpaceMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub name: String,
    pub degree: i32,
}

#[derive(Clone, Debug, Default)]
pub struct GradedSpace {
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
}

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for GradedSpace {}

impl GradedSpace {
    pub fn new<I, N>(basis: I) -> Result<Self, GradedError>
    where
        I: IntoIterator<Item = (N, i32)>,
        N: Into<String>,
    {
        let mut space = GradedSpace::default();
        for (name, degree) in basis {
            let name = name.into();
            if space.index.contains_key(&name) {
                return Err(GradedError::DuplicateName(name));
            }
            space.index.insert(name.clone(), space.basis.len());
            space.basis.push(BasisElement { name, degree });
        }
        Ok(space)
    }

    pub fn zero() -> Self {
        GradedSpace::default()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<usize, GradedError> {
        self.index_of(name)
            .ok_or_else(|| GradedError::UnknownName(name.to_string()))
    }

    /// Indices of the basis elements of degree `k`, in basis order.
    pub fn in_degree(&self, k: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == k).collect()
    }

    pub fn degrees(&self) -> BTreeSet<i32> {
        self.basis.iter().map(|b| b.degree).collect()
    }

    pub fn dim_in_degree(&self, k: i32) -> usize {
        self.basis.iter().filter(|b| b.degree == k).count()
    }

    /// Formats a coordinate vector with basis names.
    pub fn format_vector<S: Scalar>(&self, v: &SparseVec<S>) -> String {
        format_terms(v.iter().map(|(i, c)| (self.name(*i).to_string(), c)))
    }
}

/// Degree shift `V[k]`: same names, every degree lowered by `k`.
pub fn shift(v: &GradedSpace, k: i32) -> GradedSpace {
    GradedSpace::new(v.basis.iter().map(|b| (b.name.clone(), b.degree - k)))
        .expect("names stay unique")
}

/// Renders `c1 a + c2 b` style sums; `0` for the empty sum.
pub fn format_terms<'a, S: Scalar>(terms: impl Iterator<Item = (String, &'a S)>) -> String {
    let mut out = String::new();
    for (name, c) in terms {
        let c = c.to_string();
        if out.is_empty() {
            out.push_str(&format!("{c} {name}"));
        } else if let Some(rest) = c.strip_prefix('-') {
            out.push_str(&format!(" - {rest} {name}"));
        } else {
            out.push_str(&format!(" + {c} {name}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A linear map of fixed degree between graded spaces, stored column-wise.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap<S> {
    source: GradedSpace,
    target: GradedSpace,
    degree: i32,
    columns: Vec<SparseVec<S>>,
}

impl<S: Scalar> GradedMap<S> {
    pub fn zero(source: &GradedSpace, target: &GradedSpace, degree: i32) -> Self {
        GradedMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            columns: vec![SparseVec::new(); source.dim()],
        }
    }

    pub fn identity(space: &GradedSpace) -> Self {
        let mut m = Self::zero(space, space, 0);
        for i in 0..space.dim() {
            m.columns[i].insert(i, S::one());
        }
        m
    }

    /// Builds a map from `(target, source, value)` index triples.
    pub fn from_entries(
        source: &GradedSpace,
        target: &GradedSpace,
        degree: i32,
        entries: impl IntoIterator<Item = (usize, usize, S)>,
    ) -> Result<Self, GradedError> {
        let mut m = Self::zero(source, target, degree);
        for (t, s, c) in entries {
            m.add_entry(t, s, c)?;
        }
        Ok(m)
    }

    pub fn add_entry(&mut self, t: usize, s: usize, c: S) -> Result<(), GradedError> {
        if c.is_zero() {
            return Ok(());
        }
        if self.target.degree(t) != self.source.degree(s) + self.degree {
            return Err(GradedError::DegreeMismatch {
                target: self.target.name(t).to_string(),
                from: self.source.name(s).to_string(),
                degree: self.degree,
            });
        }
        add_term(&mut self.columns[s], t, c);
        Ok(())
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn column(&self, s: usize) -> &SparseVec<S> {
        &self.columns[s]
    }

    pub fn entry(&self, t: usize, s: usize) -> S {
        self.columns[s].get(&t).cloned().unwrap_or_else(S::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(s, col)| col.iter().map(move |(t, c)| (*t, s, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn apply(&self, v: &SparseVec<S>) -> SparseVec<S> {
        let mut out = SparseVec::new();
        for (s, c) in v {
            axpy(&mut out, c, &self.columns[*s]);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap<S>) -> Result<GradedMap<S>, GradedError> {
        if other.target != self.source {
            return Err(GradedError::SpaceMismatch);
        }
        let mut out = GradedMap::zero(&other.source, &self.target, self.degree + other.degree);
        for s in 0..other.source.dim() {
            out.columns[s] = self.apply(&other.columns[s]);
        }
        Ok(out)
    }

    pub fn scale(&self, a: &S) -> GradedMap<S> {
        let mut out = self.clone();
        for col in out.columns.iter_mut() {
            *col = crate::sparse::scaled(a, col);
        }
        out
    }

    pub fn add(&self, other: &GradedMap<S>) -> Result<GradedMap<S>, GradedError> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree
        {
            return Err(GradedError::SpaceMismatch);
        }
        let mut out = self.clone();
        for (col, o) in out.columns.iter_mut().zip(&other.columns) {
            axpy(col, &S::one(), o);
        }
        Ok(out)
    }

    /// Dense block with rows `rows` of the target and columns `cols` of the source.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<S>> {
        rows.iter()
            .map(|&r| cols.iter().map(|&c| self.entry(r, c)).collect())
            .collect()
    }

    /// True when the map is injective as a linear map.
    pub fn is_injective(&self) -> bool {
        let rows: Vec<usize> = (0..self.target.dim()).collect();
        let cols: Vec<usize> = (0..self.source.dim()).collect();
        crate::linalg::rank(&self.block(&rows, &cols)) == self.source.dim()
    }
}

/// A permutation of `{0, .., n-1}` stored by its images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// From 0-based images.
    pub fn new(images: Vec<usize>) -> Result<Self, GradedError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(GradedError::NotAPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// From the 1-based images `σ(1), .., σ(n)`.
    pub fn from_one_based(images: &[usize]) -> Result<Self, GradedError> {
        if images.contains(&0) {
            return Err(GradedError::NotAPermutation(images.to_vec()));
        }
        Self::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// The reordered sequence `(v_σ(1), .., v_σ(n))`.
    pub fn permute<T: Clone>(&self, v: &[T]) -> Vec<T> {
        self.0.iter().map(|&i| v[i].clone()).collect()
    }

    /// All permutations of `n` letters in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation(cur.clone()));
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", imgs.join(" "))
    }
}

/// Koszul sign of reordering `v_1 .. v_n` into `v_σ(1) .. v_σ(n)`, as ±1.
pub fn koszul_sign(sigma: &Permutation, degrees: &[i32]) -> Result<i32, GradedError> {
    if sigma.len() != degrees.len() {
        return Err(GradedError::LengthMismatch {
            perm: sigma.len(),
            degrees: degrees.len(),
        });
    }
    Ok(koszul_sign_unchecked(sigma.images(), degrees))
}

pub(crate) fn koszul_sign_unchecked(images: &[usize], degrees: &[i32]) -> i32 {
    let mut odd_swaps = 0usize;
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            // position a holds v_images[a], which comes before v_images[b]
            let (i, j) = (images[a], images[b]);
            if i > j && degrees[i].rem_euclid(2) == 1 && degrees[j].rem_euclid(2) == 1 {
                odd_swaps += 1;
            }
        }
    }
    if odd_swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The `(p, q)` unshuffles in lexicographic order of their images.
pub fn unshuffles(p: usize, q: usize) -> Vec<Permutation> {
    let n = p + q;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(p);
    fn rec(start: usize, n: usize, p: usize, chosen: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if chosen.len() == p {
            let mut images = chosen.clone();
            images.extend((0..n).filter(|i| !chosen.contains(i)));
            out.push(Permutation(images));
            return;
        }
        for i in start..n {
            chosen.push(i);
            rec(i + 1, n, p, chosen, out);
            chosen.pop();
        }
    }
    rec(0, n, p, &mut chosen, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;
    use proptest::prelude::*;

    #[test]
    fn koszul_examples() {
        let id = Permutation::identity(3);
        assert_eq!(koszul_sign(&id, &[1, 3, 5]).unwrap(), 1);
        let swap = Permutation::from_one_based(&[2, 1]).unwrap();
        assert_eq!(koszul_sign(&swap, &[1, 1]).unwrap(), -1);
        assert_eq!(koszul_sign(&swap, &[1, 2]).unwrap(), 1);
        assert!(koszul_sign(&swap, &[1]).is_err());
    }

    #[test]
    fn unshuffle_examples() {
        let u = unshuffles(1, 1);
        assert_eq!(
            u,
            vec![
                Permutation::identity(2),
                Permutation::from_one_based(&[2, 1]).unwrap()
            ]
        );
        assert_eq!(unshuffles(2, 1).len(), 3);
        assert_eq!(unshuffles(0, 4), vec![Permutation::identity(4)]);
        assert_eq!(unshuffles(0, 0), vec![Permutation::identity(0)]);
    }

    #[test]
    fn shift_examples() {
        let v = GradedSpace::new([("a", 0), ("b", 1)]).unwrap();
        let w = shift(&v, 1);
        assert_eq!(w.degree(0), -1);
        assert_eq!(w.degree(1), 0);
        assert_eq!(shift(&w, -1), v);
        assert_eq!(shift(&v, 0), v);
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(GradedSpace::new([("a", 0), ("a", 1)]).is_err());
    }

    #[test]
    fn map_degree_checked() {
        let v = GradedSpace::new([("a", 0), ("b", 1)]).unwrap();
        let mut d = GradedMap::<Q>::zero(&v, &v, 1);
        assert!(d.add_entry(1, 0, Q::from_integer(2.into())).is_ok());
        assert!(d.add_entry(0, 0, Q::from_integer(1.into())).is_err());
    }

    #[test]
    fn composition_with_identity() {
        let v = GradedSpace::new([("a", 0), ("b", 1), ("c", 1)]).unwrap();
        let d = GradedMap::<Q>::from_entries(
            &v,
            &v,
            1,
            [
                (1, 0, Q::from_integer(3.into())),
                (2, 0, Q::from_integer((-1).into())),
            ],
        )
        .unwrap();
        let id = GradedMap::identity(&v);
        assert_eq!(d.compose(&id).unwrap(), d);
        assert_eq!(id.compose(&d).unwrap(), d);
        assert_eq!(d.compose(&d).unwrap().degree(), 2);
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn koszul_is_multiplicative(
            (sigma, tau, degrees) in (1usize..7).prop_flat_map(|n| (
                perm_strategy(n),
                perm_strategy(n),
                proptest::collection::vec(-3i32..4, n),
            ))
        ) {
            let st = sigma.compose(&tau);
            let lhs = koszul_sign(&st, &degrees).unwrap();
            let permuted = sigma.permute(&degrees);
            let rhs = koszul_sign(&sigma, &degrees).unwrap() * koszul_sign(&tau, &permuted).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn unshuffles_are_distinct_and_monotone(p in 0usize..5, q in 0usize..5) {
            let list = unshuffles(p, q);
            let expected = crate::scalar::binomial(p + q, p);
            prop_assert_eq!(Q::from_integer(list.len().into()), expected);
            let mut blocks = std::collections::BTreeSet::new();
            for s in &list {
                let im = s.images();
                prop_assert!(im[..p].windows(2).all(|w| w[0] < w[1]));
                prop_assert!(im[p..].windows(2).all(|w| w[0] < w[1]));
                prop_assert!(blocks.insert(im[..p].to_vec()));
            }
            let mut sorted = list.clone();
            sorted.sort();
            prop_assert_eq!(sorted, list);
        }

        #[test]
        fn inverse_composes_to_identity(sigma in (0usize..7).prop_flat_map(perm_strategy)) {
            prop_assert_eq!(sigma.compose(&sigma.inverse()), Permutation::identity(sigma.len()));
        }
    }
}
