//! Sparse coordinate vectors keyed by basis index.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

pub type SparseVec<S> = BTreeMap<usize, S>;

/// `v[k] += c`, dropping the entry if it cancels.
pub fn add_term<K: Ord, S: Scalar>(v: &mut BTreeMap<K, S>, k: K, c: S) {
    if c.is_zero() {
        return;
    }
    match v.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().clone() + c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// `y += a * x`
pub fn axpy<K: Ord + Clone, S: Scalar>(y: &mut BTreeMap<K, S>, a: &S, x: &BTreeMap<K, S>) {
    if a.is_zero() {
        return;
    }
    for (k, c) in x {
        add_term(y, k.clone(), a.clone() * c.clone());
    }
}

pub fn scaled<K: Ord + Clone, S: Scalar>(a: &S, x: &BTreeMap<K, S>) -> BTreeMap<K, S> {
    let mut out = BTreeMap::new();
    axpy(&mut out, a, x);
    out
}

pub fn sum<K: Ord + Clone, S: Scalar>(x: &BTreeMap<K, S>, y: &BTreeMap<K, S>) -> BTreeMap<K, S> {
    let mut out = x.clone();
    axpy(&mut out, &S::one(), y);
    out
}

pub fn difference<K: Ord + Clone, S: Scalar>(
    x: &BTreeMap<K, S>,
    y: &BTreeMap<K, S>,
) -> BTreeMap<K, S> {
    let mut out = x.clone();
    axpy(&mut out, &(-S::one()), y);
    out
}

pub fn unit<S: Scalar>(i: usize) -> SparseVec<S> {
    let mut v = SparseVec::new();
    v.insert(i, S::one());
    v
}

pub fn to_dense<S: Scalar>(v: &SparseVec<S>, coords: &[usize]) -> Vec<S> {
    coords
        .iter()
        .map(|i| v.get(i).cloned().unwrap_or_else(S::zero))
        .collect()
}

pub fn from_dense<S: Scalar>(values: &[S], coords: &[usize]) -> SparseVec<S> {
    let mut v = SparseVec::new();
    for (c, i) in values.iter().zip(coords) {
        add_term(&mut v, *i, c.clone());
    }
    v
}
