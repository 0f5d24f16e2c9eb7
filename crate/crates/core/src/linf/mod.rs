//! L∞ structures on finite graded spaces and the relation checker.
//!
//! Brackets `q_k` live on the suspension `V[1]`: a basis vector of degree
//! `i` in `V` has shifted degree `i - 1`, and every `q_k` raises the
//! shifted degree by one.

pub mod bernoulli;
pub mod homotopy;
pub mod transfer;

use std::collections::HashMap;
use std::sync::RwLock;

use rayon::prelude::*;

use crate::artin::ArtinAlgebra;
use crate::cone::{build_cone, ConeComplex, PairDiagram, TensorPair};
use crate::dgla::DglaPresentation;
use crate::graded::{koszul_sign_unchecked, unshuffles, GradedSpace};
use crate::scalar::{parity_sign, sign, Scalar};
use crate::sparse::{axpy, scaled, unit, SparseVec};

pub use bernoulli::{
    bernoulli, bernoulli_table, i_bar_coefficient, i_coefficient, phi_bar_sequence, phi_sequence,
    Poly,
};
pub use homotopy::{
    gauge_to_homotopy, homotopy_to_gauge, homotopy_verify, HomotopyError, HomotopyPath, PathPair,
};
pub use transfer::{
    closed_bracket, mc_infinity_residual, mc_infinity_residual_literal, mc_infinity_verify,
    shifted_degree, tree_bracket,
};

pub const DEFAULT_ARITY_CAP: usize = 5;

/// Symmetric multibrackets `q_1, ..., q_cap` on `V[1]`, given on basis tuples.
pub trait LInfinityStructure<S: Scalar>: Sync {
    /// `V` with its unshifted grading.
    fn space(&self) -> &GradedSpace;
    fn arity_cap(&self) -> usize;
    /// `q_k(e_{i_1} ⊙ ... ⊙ e_{i_k})`; callers pass nondecreasing indices.
    fn bracket(&self, inputs: &[usize]) -> SparseVec<S>;
}

/// `q_1 = -d`, `q_2(v ⊙ w) = (-1)^{|v|}[v, w]`, nothing above.
#[derive(Clone, Debug)]
pub struct DglaLinf<S> {
    pub dgla: DglaPresentation<S>,
}

pub fn dgla_to_linf<S: Scalar>(l: &DglaPresentation<S>) -> DglaLinf<S> {
    DglaLinf { dgla: l.clone() }
}

impl<S: Scalar> LInfinityStructure<S> for DglaLinf<S> {
    fn space(&self) -> &GradedSpace {
        self.dgla.space()
    }

    fn arity_cap(&self) -> usize {
        DEFAULT_ARITY_CAP
    }

    fn bracket(&self, inputs: &[usize]) -> SparseVec<S> {
        match inputs {
            [v] => scaled(&-S::one(), &self.dgla.d(&unit(*v))),
            [v, w] => {
                let s = sign::<S>(parity_sign(self.dgla.degree(*v) as i64));
                scaled(&s, self.dgla.bracket_basis(*v, *w))
            }
            _ => SparseVec::new(),
        }
    }
}

/// Which evaluation of the transferred brackets to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransferMode {
    Tree,
    Closed,
}

/// The L∞ structure transferred to the cone of a pair.
#[derive(Clone, Debug)]
pub struct TransferredLinf<S> {
    pub diagram: PairDiagram<S>,
    pub cone: ConeComplex<S>,
    pub arity_cap: usize,
    pub mode: TransferMode,
    ground: ArtinAlgebra<S>,
}

impl<S: Scalar> TransferredLinf<S> {
    pub fn new(p: &PairDiagram<S>, arity_cap: usize, mode: TransferMode) -> Self {
        let cone = build_cone(p).expect("cone differential squares to zero");
        TransferredLinf {
            diagram: p.clone(),
            cone,
            arity_cap,
            mode,
            ground: ArtinAlgebra::ground(),
        }
    }

    /// Brackets of cone vectors over the ground field.
    pub fn bracket_vectors(&self, inputs: &[SparseVec<S>], degrees: &[i32]) -> SparseVec<S> {
        let pair = TensorPair::new(&self.diagram, &self.ground);
        let elems: Vec<_> = inputs
            .iter()
            .zip(degrees)
            .map(|(v, d)| self.cone.to_elem(v, *d))
            .collect();
        let out = match self.mode {
            TransferMode::Tree => tree_bracket(&pair, &elems),
            TransferMode::Closed => closed_bracket(&pair, &elems),
        };
        self.cone.from_elem(&out)
    }
}

impl<S: Scalar> LInfinityStructure<S> for TransferredLinf<S> {
    fn space(&self) -> &GradedSpace {
        self.cone.space()
    }

    fn arity_cap(&self) -> usize {
        self.arity_cap
    }

    fn bracket(&self, inputs: &[usize]) -> SparseVec<S> {
        let space = self.cone.space();
        let vecs: Vec<SparseVec<S>> = inputs.iter().map(|i| unit(*i)).collect();
        let degrees: Vec<i32> = inputs.iter().map(|i| space.degree(*i)).collect();
        self.bracket_vectors(&vecs, &degrees)
    }
}

/// A nonvanishing coefficient of `Q∘Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinfFailure {
    pub weight: usize,
    pub basis: Vec<String>,
    pub residual: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinfReport {
    pub weight: usize,
    pub tuples_checked: usize,
    pub failures: Vec<LinfFailure>,
}

impl LinfReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Memoized brackets on sorted tuples, with degree pruning.
struct BracketCache<'t, S, T: ?Sized> {
    t: &'t T,
    shifted: Vec<i32>,
    degrees_present: Vec<i32>,
    memo: RwLock<HashMap<Vec<usize>, SparseVec<S>>>,
}

impl<'t, S: Scalar, T: LInfinityStructure<S> + ?Sized> BracketCache<'t, S, T> {
    fn new(t: &'t T) -> Self {
        let space = t.space();
        let shifted = (0..space.dim()).map(|i| space.degree(i) - 1).collect();
        let degrees_present = space.degrees().into_iter().collect();
        BracketCache {
            t,
            shifted,
            degrees_present,
            memo: RwLock::new(HashMap::new()),
        }
    }

    fn has_degree(&self, unshifted: i32) -> bool {
        self.degrees_present.binary_search(&unshifted).is_ok()
    }

    /// `q_k` on an arbitrary tuple: sorts it with the Koszul sign first.
    fn q(&self, tuple: &[usize]) -> SparseVec<S> {
        let total: i32 = tuple.iter().map(|i| self.shifted[*i]).sum();
        if tuple.len() > self.t.arity_cap() || !self.has_degree(total + 2) {
            return SparseVec::new();
        }
        let mut order: Vec<usize> = (0..tuple.len()).collect();
        order.sort_by_key(|&k| tuple[k]);
        let degrees: Vec<i32> = tuple.iter().map(|i| self.shifted[*i]).collect();
        let s = koszul_sign_unchecked(&order, &degrees);
        let sorted: Vec<usize> = order.iter().map(|&k| tuple[k]).collect();
        // repeated odd entries make the symmetric product vanish
        if sorted
            .windows(2)
            .any(|w| w[0] == w[1] && self.shifted[w[0]].rem_euclid(2) == 1)
        {
            return SparseVec::new();
        }
        let cached = self.memo.read().expect("cache lock").get(&sorted).cloned();
        let v = match cached {
            Some(v) => v,
            None => {
                let v = self.t.bracket(&sorted);
                self.memo
                    .write()
                    .expect("cache lock")
                    .insert(sorted, v.clone());
                v
            }
        };
        if s == 1 {
            v
        } else {
            scaled(&-S::one(), &v)
        }
    }

    /// `Σ_k Σ_{σ ∈ S(k, n-k)} ε(σ) q_{n-k+1}(q_k(v_σ(1..k)) ⊙ v_σ(k+1..n))`
    fn relation(&self, tuple: &[usize]) -> SparseVec<S> {
        let n = tuple.len();
        let degrees: Vec<i32> = tuple.iter().map(|i| self.shifted[*i]).collect();
        let mut out = SparseVec::new();
        for k in 1..=n {
            for sigma in unshuffles(k, n - k) {
                let idx = sigma.images();
                let eps = koszul_sign_unchecked(idx, &degrees);
                let head: Vec<usize> = idx[..k].iter().map(|&a| tuple[a]).collect();
                let inner = self.q(&head);
                if inner.is_empty() {
                    continue;
                }
                let mut outer_tuple = Vec::with_capacity(n - k + 1);
                outer_tuple.push(0);
                outer_tuple.extend(idx[k..].iter().map(|&a| tuple[a]));
                for (b, c) in &inner {
                    outer_tuple[0] = *b;
                    let v = self.q(&outer_tuple);
                    if !v.is_empty() {
                        axpy(&mut out, &(sign::<S>(eps) * c.clone()), &v);
                    }
                }
            }
        }
        out
    }
}

fn multisets(dim: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, dim: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(i, dim, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, dim, n, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Checks that every coefficient of `Q∘Q` on `⊙^n V[1]`, `n ≤ weight`,
/// vanishes on basis tuples. Tuples run in parallel; the report lists
/// failures in the order of the tuples.
pub fn validate_linf<S: Scalar, T: LInfinityStructure<S> + ?Sized>(
    t: &T,
    weight: usize,
) -> LinfReport {
    let cache = BracketCache::new(t);
    let space = t.space();
    let mut report = LinfReport {
        weight,
        ..Default::default()
    };
    for n in 1..=weight {
        let tuples: Vec<Vec<usize>> = multisets(space.dim(), n)
            .into_iter()
            .filter(|tu| {
                let total: i32 = tu.iter().map(|i| cache.shifted[*i]).sum();
                cache.has_degree(total + 3)
                    && !tu
                        .windows(2)
                        .any(|w| w[0] == w[1] && cache.shifted[w[0]].rem_euclid(2) == 1)
            })
            .collect();
        report.tuples_checked += tuples.len();
        let failures: Vec<LinfFailure> = tuples
            .par_iter()
            .filter_map(|tu| {
                let r = cache.relation(tu);
                if r.is_empty() {
                    None
                } else {
                    Some(LinfFailure {
                        weight: n,
                        basis: tu.iter().map(|i| space.name(*i).to_string()).collect(),
                        residual: space.format_vector(&r),
                    })
                }
            })
            .collect();
        report.failures.extend(failures);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{entry, gl2};
    use crate::dgla::DglaPresentation;
    use crate::Q;

    #[test]
    fn dgla_structure_satisfies_relations() {
        let g = gl2::<Q>();
        let l = crate::catalog::make_tensor_dgla(&g, &[("eta", 1)], &[]).unwrap();
        let r = validate_linf(&dgla_to_linf(&l), 4);
        assert!(r.passed(), "{:?}", r.failures.first());
        assert!(r.tuples_checked > 0);
    }

    #[test]
    fn zero_structure_passes() {
        let space = GradedSpace::new([("a", 0), ("b", 1)]).unwrap();
        let l = DglaPresentation::<Q>::abelian(space);
        let t = dgla_to_linf(&l);
        assert!(t.bracket(&[0, 1]).is_empty());
        assert!(validate_linf(&t, 3).passed());
    }

    #[test]
    fn broken_jacobi_fails_at_weight_three() {
        let e = entry::<Q>("gl2-wedge").unwrap();
        let l = &e.diagram.m;
        let mut found = false;
        for key in l.brackets().keys() {
            let mut table = l.brackets().clone();
            let doubled = scaled(&Q::from_integer(2.into()), &table[key]);
            table.insert(*key, doubled);
            let broken = l.with_brackets(table).unwrap();
            if crate::dgla::validate_dgla(&broken).is_valid() {
                continue;
            }
            found = true;
            let r = validate_linf(&dgla_to_linf(&broken), 3);
            assert!(!r.passed());
            assert!(r.failures.iter().any(|f| f.weight == 3 || f.weight == 2));
            break;
        }
        assert!(found);
    }

    #[test]
    fn transferred_structure_on_small_entries() {
        for name in ["abelian-line", "obstructed-pair"] {
            let e = entry::<Q>(name).unwrap();
            let t = TransferredLinf::new(&e.diagram, 4, TransferMode::Closed);
            let r = validate_linf(&t, 4);
            assert!(r.passed(), "{name}: {:?}", r.failures.first());
        }
    }
}
