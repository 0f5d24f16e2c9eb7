//! Local Artinian coefficient rings `A = Q[x_1..x_k]/I`, their morphisms,
//! small extensions and fiber products.
//!
//! Rings are stored through a basis of the maximal ideal `m_A` adapted to the
//! `m_A`-adic filtration: every basis element carries an order `k` and the
//! product of elements of orders `i` and `j` only involves basis elements of
//! order at least `i + j`. The ground field itself is available as
//! [`ArtinAlgebra::ground`], whose single basis element is the unit; it is
//! used to run tensor computations at the level of plain vector spaces.

mod nil;

pub use nil::{NilElement, TensorDgla};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;
use crate::sparse::{add_term, axpy, from_dense, to_dense, unit, SparseVec};

/// Polynomial as a list of `(exponent vector, coefficient)`.
pub type Polynomial<S> = Vec<(Vec<u32>, S)>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArtinError {
    #[error("truncation order must be at least 1")]
    BadTruncation,
    #[error("relation {0} has a nonzero constant term, the ring would not be local")]
    NonLocal(usize),
    #[error("relation {0} has {1} exponents, expected {2}")]
    Arity(usize, usize, usize),
    #[error("ideal is not small: J * m != 0")]
    NotSmall,
    #[error("morphism does not respect multiplication on ({0}, {1})")]
    NotMultiplicative(String, String),
    #[error("morphism dimensions do not match the rings")]
    Shape,
    #[error("no element of the fiber product restricts to the given pair")]
    NotCompatible,
    #[error("unknown monomial `{0}`")]
    UnknownMonomial(String),
}

/// Defining data `Q[generators] / ((generators)^order + relations)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation<S> {
    pub generators: Vec<String>,
    pub truncation_order: usize,
    pub relations: Vec<Polynomial<S>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ArtinAlgebra<S> {
    labels: Vec<String>,
    orders: Vec<usize>,
    table: Vec<Vec<SparseVec<S>>>,
    ground: bool,
    generators: Vec<String>,
    /// Normal forms of monomials, used to read coefficients written in the
    /// generators. Missing monomials of positive degree are zero.
    monomials: BTreeMap<Vec<u32>, SparseVec<S>>,
    presentation: Option<Presentation<S>>,
}

pub fn monomial_label(generators: &[String], exps: &[u32]) -> String {
    let parts: Vec<String> = generators
        .iter()
        .zip(exps)
        .filter(|(_, e)| **e > 0)
        .map(|(g, e)| {
            if *e == 1 {
                g.clone()
            } else {
                format!("{g}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn monomials_up_to(nvars: usize, max_degree: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for deg in 1..=max_degree {
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(cur.clone());
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
        }
        if nvars > 0 {
            rec(0, deg as u32, &mut cur, &mut out);
        }
    }
    out
}

fn total_degree(e: &[u32]) -> usize {
    e.iter().map(|x| *x as usize).sum()
}

impl<S: Scalar> ArtinAlgebra<S> {
    /// The ground field, with the unit as its only basis element.
    pub fn ground() -> Self {
        let mut table = vec![vec![SparseVec::new()]];
        table[0][0].insert(0, S::one());
        ArtinAlgebra {
            labels: vec!["1".into()],
            orders: vec![0],
            table,
            ground: true,
            generators: vec![],
            monomials: BTreeMap::new(),
            presentation: None,
        }
    }

    pub fn is_ground(&self) -> bool {
        self.ground
    }

    /// Dimension of the basis (of `m_A`, or 1 for the ground field).
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn order(&self, i: usize) -> usize {
        self.orders[i]
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn presentation(&self) -> Option<&Presentation<S>> {
        self.presentation.as_ref()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec<S> {
        &self.table[i][j]
    }

    pub fn mul(&self, x: &SparseVec<S>, y: &SparseVec<S>) -> SparseVec<S> {
        let mut out = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                axpy(&mut out, &(a.clone() * b.clone()), &self.table[*i][*j]);
            }
        }
        out
    }

    /// Smallest `N` with `m_A^N = 0`; `None` for the ground field.
    pub fn nilpotency_order(&self) -> Option<usize> {
        if self.ground {
            None
        } else {
            Some(self.orders.iter().max().map_or(1, |m| m + 1))
        }
    }

    pub fn max_order(&self) -> usize {
        self.orders.iter().copied().max().unwrap_or(0)
    }

    /// Basis indices of the given order.
    pub fn of_order(&self, k: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.orders[i] == k).collect()
    }

    /// Normal form of a monomial in the generators.
    pub fn monomial(&self, exps: &[u32]) -> Result<SparseVec<S>, ArtinError> {
        if exps.len() != self.generators.len() {
            return Err(ArtinError::UnknownMonomial(format!("{exps:?}")));
        }
        if total_degree(exps) == 0 {
            if self.ground {
                return Ok(unit(0));
            }
            return Err(ArtinError::UnknownMonomial("1".into()));
        }
        Ok(self.monomials.get(exps).cloned().unwrap_or_default())
    }

    /// Checks commutativity and associativity on the basis and the
    /// nilpotency bound by exhausting products.
    pub fn check_axioms(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if self.table[i][j] != self.table[j][i] {
                    return false;
                }
                for k in 0..n {
                    let left = self.mul(&self.table[i][j], &unit(k));
                    let right = self.mul(&unit(i), &self.table[j][k]);
                    if left != right {
                        return false;
                    }
                }
                if !self.ground {
                    let lo = self.orders[i] + self.orders[j];
                    if self.table[i][j].keys().any(|&k| self.orders[k] < lo) {
                        return false;
                    }
                }
            }
        }
        if let Some(nil) = self.nilpotency_order() {
            // products of nil many basis elements vanish
            let mut layer: Vec<SparseVec<S>> = (0..n).map(unit).collect();
            for _ in 1..nil {
                let mut next = Vec::new();
                for v in &layer {
                    for k in 0..n {
                        let p = self.mul(v, &unit(k));
                        if !p.is_empty() {
                            next.push(p);
                        }
                    }
                }
                layer = next;
            }
            if !layer.is_empty() {
                return false;
            }
        }
        true
    }
}

/// `Q[generators] / ((generators)^truncation_order + extra relations)`.
pub fn make_artin<S: Scalar>(
    generators: &[&str],
    truncation_order: usize,
    relations: &[Polynomial<S>],
) -> Result<ArtinAlgebra<S>, ArtinError> {
    if truncation_order == 0 {
        return Err(ArtinError::BadTruncation);
    }
    let k = generators.len();
    for (r, rel) in relations.iter().enumerate() {
        for (e, c) in rel {
            if e.len() != k {
                return Err(ArtinError::Arity(r, e.len(), k));
            }
            if total_degree(e) == 0 && !c.is_zero() {
                return Err(ArtinError::NonLocal(r));
            }
        }
    }
    let monos = monomials_up_to(k, truncation_order - 1);
    let col: BTreeMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: Matrix<S> = Vec::new();
    let mut multipliers = vec![vec![0u32; k]];
    multipliers.extend(monos.iter().cloned());
    for rel in relations {
        for u in &multipliers {
            let mut row = vec![S::zero(); monos.len()];
            let mut nonzero = false;
            for (e, c) in rel {
                let prod: Vec<u32> = e.iter().zip(u).map(|(a, b)| a + b).collect();
                if let Some(&i) = col.get(&prod) {
                    row[i] = row[i].clone() + c.clone();
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    let (ideal, pivots) = linalg::rref(rows);
    let standard: Vec<usize> = (0..monos.len()).filter(|c| !pivots.contains(c)).collect();
    let new_index: BTreeMap<usize, usize> =
        standard.iter().enumerate().map(|(n, &c)| (c, n)).collect();
    let mut normal: BTreeMap<Vec<u32>, SparseVec<S>> = BTreeMap::new();
    for (c, m) in monos.iter().enumerate() {
        let v = if let Some(&n) = new_index.get(&c) {
            unit(n)
        } else {
            let r = pivots.iter().position(|&p| p == c).expect("pivot row");
            let mut v = SparseVec::new();
            for (&f, &n) in &new_index {
                add_term(&mut v, n, -ideal[r][f].clone());
            }
            v
        };
        normal.insert(m.clone(), v);
    }
    let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
    let labels: Vec<String> = standard
        .iter()
        .map(|&c| monomial_label(&gens, &monos[c]))
        .collect();
    let orders: Vec<usize> = standard.iter().map(|&c| total_degree(&monos[c])).collect();
    let table = standard
        .iter()
        .map(|&a| {
            standard
                .iter()
                .map(|&b| {
                    let prod: Vec<u32> =
                        monos[a].iter().zip(&monos[b]).map(|(x, y)| x + y).collect();
                    normal.get(&prod).cloned().unwrap_or_default()
                })
                .collect()
        })
        .collect();
    Ok(ArtinAlgebra {
        labels,
        orders,
        table,
        ground: false,
        generators: gens.clone(),
        monomials: normal,
        presentation: Some(Presentation {
            generators: gens,
            truncation_order,
            relations: relations.to_vec(),
        }),
    })
}

/// A local ring map given on the bases of the maximal ideals.
#[derive(Clone, Debug, PartialEq)]
pub struct ArtinMorphism<S> {
    pub images: Vec<SparseVec<S>>,
}

impl<S: Scalar> ArtinMorphism<S> {
    pub fn new(
        source: &ArtinAlgebra<S>,
        target: &ArtinAlgebra<S>,
        images: Vec<SparseVec<S>>,
    ) -> Result<Self, ArtinError> {
        if images.len() != source.dim()
            || images.iter().any(|v| v.keys().any(|&k| k >= target.dim()))
        {
            return Err(ArtinError::Shape);
        }
        let f = ArtinMorphism { images };
        for i in 0..source.dim() {
            for j in i..source.dim() {
                let lhs = f.apply(source.mul_basis(i, j));
                let rhs = target.mul(&f.images[i], &f.images[j]);
                if lhs != rhs {
                    return Err(ArtinError::NotMultiplicative(
                        source.label(i).into(),
                        source.label(j).into(),
                    ));
                }
            }
        }
        Ok(f)
    }

    /// Map sending each generator to a polynomial in the target generators.
    pub fn from_generators(
        source: &ArtinAlgebra<S>,
        target: &ArtinAlgebra<S>,
        generator_images: &[SparseVec<S>],
    ) -> Result<Self, ArtinError> {
        let pres = source.presentation().ok_or(ArtinError::Shape)?;
        if generator_images.len() != pres.generators.len() {
            return Err(ArtinError::Shape);
        }
        // a standard monomial maps to the product of generator images
        let mut images = Vec::new();
        for i in 0..source.dim() {
            let exps = source
                .monomials
                .iter()
                .find(|(_, v)| **v == unit(i))
                .map(|(e, _)| e.clone())
                .ok_or(ArtinError::Shape)?;
            let mut acc: Option<SparseVec<S>> = None;
            for (g, e) in exps.iter().enumerate() {
                for _ in 0..*e {
                    acc = Some(match acc {
                        None => generator_images[g].clone(),
                        Some(a) => target.mul(&a, &generator_images[g]),
                    });
                }
            }
            images.push(acc.unwrap_or_default());
        }
        Self::new(source, target, images)
    }

    pub fn apply(&self, v: &SparseVec<S>) -> SparseVec<S> {
        let mut out = SparseVec::new();
        for (i, c) in v {
            axpy(&mut out, c, &self.images[*i]);
        }
        out
    }
}

/// `0 -> J -> total -> quotient -> 0` with `J * m_total = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SmallExtension<S> {
    pub total: ArtinAlgebra<S>,
    pub quotient: ArtinAlgebra<S>,
    /// Basis of `J` in reduced echelon form (vectors on the total basis).
    pub ideal: Vec<SparseVec<S>>,
    pub projection: ArtinMorphism<S>,
    /// Quotient basis index `i` corresponds to total basis index `section[i]`.
    pub section: Vec<usize>,
}

pub fn make_small_extension<S: Scalar>(
    total: &ArtinAlgebra<S>,
    ideal_generators: &[SparseVec<S>],
) -> Result<SmallExtension<S>, ArtinError> {
    let n = total.dim();
    let coords: Vec<usize> = (0..n).collect();
    let mut span: Vec<SparseVec<S>> = ideal_generators.to_vec();
    for g in ideal_generators {
        for k in 0..n {
            span.push(total.mul(g, &unit(k)));
        }
    }
    let (rows, pivots) = linalg::rref(span.iter().map(|v| to_dense(v, &coords)).collect());
    let ideal: Vec<SparseVec<S>> = rows.iter().map(|r| from_dense(r, &coords)).collect();
    if !total.is_ground() {
        for v in &ideal {
            for k in 0..n {
                if !total.mul(v, &unit(k)).is_empty() {
                    return Err(ArtinError::NotSmall);
                }
            }
        }
    }
    let section: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let new_index: BTreeMap<usize, usize> =
        section.iter().enumerate().map(|(a, &b)| (b, a)).collect();
    let reduce = |v: &SparseVec<S>| -> SparseVec<S> {
        let r = linalg::reduce(&rows, &pivots, &to_dense(v, &coords));
        let mut out = SparseVec::new();
        for (c, x) in r.into_iter().enumerate() {
            if let Some(&k) = new_index.get(&c) {
                add_term(&mut out, k, x);
            }
        }
        out
    };
    let table = section
        .iter()
        .map(|&a| {
            section
                .iter()
                .map(|&b| reduce(total.mul_basis(a, b)))
                .collect()
        })
        .collect();
    let monomials = total
        .monomials
        .iter()
        .map(|(e, v)| (e.clone(), reduce(v)))
        .collect();
    let presentation = total.presentation.as_ref().map(|p| {
        let mut relations = p.relations.clone();
        for g in ideal_generators {
            // express the generator through monomial labels of the total ring
            let mut poly = Vec::new();
            for (i, c) in g {
                if let Some((e, _)) = total.monomials.iter().find(|(_, v)| **v == unit(*i)) {
                    poly.push((e.clone(), c.clone()));
                }
            }
            relations.push(poly);
        }
        Presentation {
            generators: p.generators.clone(),
            truncation_order: p.truncation_order,
            relations,
        }
    });
    let quotient = ArtinAlgebra {
        labels: section.iter().map(|&i| total.labels[i].clone()).collect(),
        orders: section.iter().map(|&i| total.orders[i]).collect(),
        table,
        ground: total.ground,
        generators: total.generators.clone(),
        monomials,
        presentation,
    };
    let projection = ArtinMorphism {
        images: (0..n).map(|i| reduce(&unit(i))).collect(),
    };
    Ok(SmallExtension {
        total: total.clone(),
        quotient,
        ideal,
        projection,
        section,
    })
}

impl<S: Scalar> SmallExtension<S> {
    /// Lifts a coefficient vector of the quotient along the section.
    pub fn lift(&self, v: &SparseVec<S>) -> SparseVec<S> {
        v.iter()
            .map(|(i, c)| (self.section[*i], c.clone()))
            .collect()
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal.len()
    }
}

/// `B ×_A C` together with its two projections.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberProduct<S> {
    pub algebra: ArtinAlgebra<S>,
    pub to_left: ArtinMorphism<S>,
    pub to_right: ArtinMorphism<S>,
    /// Basis vectors as pairs in `m_B ⊕ m_C` coordinates.
    pairs: Vec<Vec<S>>,
    left_dim: usize,
}

pub fn fiber_product<S: Scalar>(
    b: &ArtinAlgebra<S>,
    c: &ArtinAlgebra<S>,
    a: &ArtinAlgebra<S>,
    beta: &ArtinMorphism<S>,
    gamma: &ArtinMorphism<S>,
) -> FiberProduct<S> {
    let (nb, nc, na) = (b.dim(), c.dim(), a.dim());
    let n = nb + nc;
    // kernel of (u, v) |-> beta(u) - gamma(v)
    let mut cols: Vec<Vec<S>> = Vec::new();
    for i in 0..nb {
        cols.push(to_dense(&beta.images[i], &(0..na).collect::<Vec<_>>()));
    }
    for i in 0..nc {
        cols.push(
            to_dense(&gamma.images[i], &(0..na).collect::<Vec<_>>())
                .into_iter()
                .map(|x| -x)
                .collect(),
        );
    }
    let m = linalg::columns_to_rows(&cols, na);
    let base = linalg::nullspace(&m, n);
    let mul = |x: &[S], y: &[S]| -> Vec<S> {
        let xb = from_dense(&x[..nb], &(0..nb).collect::<Vec<_>>());
        let yb = from_dense(&y[..nb], &(0..nb).collect::<Vec<_>>());
        let xc = from_dense(&x[nb..], &(0..nc).collect::<Vec<_>>());
        let yc = from_dense(&y[nb..], &(0..nc).collect::<Vec<_>>());
        let mut out = to_dense(&b.mul(&xb, &yb), &(0..nb).collect::<Vec<_>>());
        out.extend(to_dense(&c.mul(&xc, &yc), &(0..nc).collect::<Vec<_>>()));
        out
    };
    let mut powers: Vec<Matrix<S>> = vec![linalg::rref(base.clone()).0];
    loop {
        let last = powers.last().expect("nonempty");
        let mut prods = Vec::new();
        for x in last {
            for y in &powers[0] {
                prods.push(mul(x, y));
            }
        }
        let (r, _) = linalg::rref(prods);
        if r.is_empty() {
            break;
        }
        powers.push(r);
    }
    // adapted basis: deepest power first, then extend
    let mut chosen: Vec<(Vec<S>, usize)> = Vec::new();
    for (k, p) in powers.iter().enumerate().rev() {
        for v in p {
            let mut trial: Matrix<S> = chosen.iter().map(|(w, _)| w.clone()).collect();
            let before = linalg::rank(&trial);
            trial.push(v.clone());
            if linalg::rank(&trial) > before {
                chosen.push((v.clone(), k + 1));
            }
        }
    }
    chosen.sort_by_key(|(_, o)| *o);
    let pairs: Vec<Vec<S>> = chosen.iter().map(|(v, _)| v.clone()).collect();
    let basis_rows = linalg::columns_to_rows(&pairs, n);
    let express = |v: &[S]| -> SparseVec<S> {
        let x = linalg::solve(&basis_rows, v, pairs.len()).expect("closed under products");
        from_dense(&x, &(0..pairs.len()).collect::<Vec<_>>())
    };
    let table = pairs
        .iter()
        .map(|x| pairs.iter().map(|y| express(&mul(x, y))).collect())
        .collect();
    let algebra = ArtinAlgebra {
        labels: (1..=pairs.len()).map(|i| format!("f{i}")).collect(),
        orders: chosen.iter().map(|(_, o)| *o).collect(),
        table,
        ground: false,
        generators: vec![],
        monomials: BTreeMap::new(),
        presentation: None,
    };
    let to_left = ArtinMorphism {
        images: pairs
            .iter()
            .map(|v| from_dense(&v[..nb], &(0..nb).collect::<Vec<_>>()))
            .collect(),
    };
    let to_right = ArtinMorphism {
        images: pairs
            .iter()
            .map(|v| from_dense(&v[nb..], &(0..nc).collect::<Vec<_>>()))
            .collect(),
    };
    FiberProduct {
        algebra,
        to_left,
        to_right,
        pairs,
        left_dim: nb,
    }
}

impl<S: Scalar> FiberProduct<S> {
    /// The unique element restricting to `u` on the left and `v` on the right.
    pub fn glue(&self, u: &SparseVec<S>, v: &SparseVec<S>) -> Result<SparseVec<S>, ArtinError> {
        let n = self.pairs.first().map_or(self.left_dim, |p| p.len());
        let nb = self.left_dim;
        let mut target = to_dense(u, &(0..nb).collect::<Vec<_>>());
        target.extend(to_dense(v, &(0..n - nb).collect::<Vec<_>>()));
        let rows = linalg::columns_to_rows(&self.pairs, n);
        let x = linalg::solve(&rows, &target, self.pairs.len()).ok_or(ArtinError::NotCompatible)?;
        Ok(from_dense(&x, &(0..self.pairs.len()).collect::<Vec<_>>()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn dual_numbers() {
        let a = make_artin::<Q>(&["eps"], 2, &[]).unwrap();
        assert_eq!(a.labels(), &["eps".to_string()]);
        assert_eq!(a.nilpotency_order(), Some(2));
        assert!(a.mul_basis(0, 0).is_empty());
        assert!(a.check_axioms());
    }

    #[test]
    fn truncations() {
        let a = make_artin::<Q>(&["eps"], 3, &[]).unwrap();
        assert_eq!(a.labels(), &["eps".to_string(), "eps^2".to_string()]);
        assert_eq!(a.nilpotency_order(), Some(3));
        assert_eq!(a.mul_basis(0, 0), &unit(1));
        let st = make_artin::<Q>(&["s", "t"], 2, &[]).unwrap();
        assert_eq!(st.labels(), &["s".to_string(), "t".to_string()]);
        assert!((0..2).all(|i| (0..2).all(|j| st.mul_basis(i, j).is_empty())));
        assert_eq!(make_artin::<Q>(&["x"], 1, &[]).unwrap().dim(), 0);
        assert!(make_artin::<Q>(&["x"], 0, &[]).is_err());
    }

    #[test]
    fn relations_reduce_basis() {
        // Q[s,t]/((s,t)^3, s^2 - t^2, st)
        let rels = vec![
            vec![(vec![2, 0], q(1)), (vec![0, 2], q(-1))],
            vec![(vec![1, 1], q(1))],
        ];
        let a = make_artin::<Q>(&["s", "t"], 3, &rels).unwrap();
        assert_eq!(a.dim(), 3);
        assert!(a.check_axioms());
        assert_eq!(a.monomial(&[2, 0]).unwrap(), a.monomial(&[0, 2]).unwrap());
        assert!(a.monomial(&[1, 1]).unwrap().is_empty());
        let bad = vec![vec![(vec![0, 0], q(1)), (vec![1, 0], q(1))]];
        assert_eq!(
            make_artin::<Q>(&["s", "t"], 3, &bad).unwrap_err(),
            ArtinError::NonLocal(0)
        );
    }

    #[test]
    fn small_extensions() {
        let a3 = make_artin::<Q>(&["eps"], 3, &[]).unwrap();
        let se = make_small_extension(&a3, &[unit(1)]).unwrap();
        assert_eq!(se.quotient.labels(), &["eps".to_string()]);
        assert!(se.quotient.mul_basis(0, 0).is_empty());
        let a2 = make_artin::<Q>(&["eps"], 2, &[]).unwrap();
        let se2 = make_small_extension(&a2, &[unit(0)]).unwrap();
        assert_eq!(se2.quotient.dim(), 0);
        let st = make_artin::<Q>(&["s", "t"], 2, &[]).unwrap();
        let se3 = make_small_extension(&st, &[unit(1)]).unwrap();
        assert_eq!(se3.quotient.labels(), &["s".to_string()]);
        assert!(make_small_extension(&a3, &[unit(0)]).is_err());
    }

    #[test]
    fn fiber_product_of_truncations() {
        let b = make_artin::<Q>(&["s"], 3, &[]).unwrap();
        let c = make_artin::<Q>(&["t"], 3, &[]).unwrap();
        let a = make_artin::<Q>(&["u"], 2, &[]).unwrap();
        let beta = ArtinMorphism::from_generators(&b, &a, &[unit(0)]).unwrap();
        let gamma = ArtinMorphism::from_generators(&c, &a, &[unit(0)]).unwrap();
        let fp = fiber_product(&b, &c, &a, &beta, &gamma);
        // (s,t), (s^2,0), (0,t^2)
        assert_eq!(fp.algebra.dim(), 3);
        assert!(fp.algebra.check_axioms());
        assert_eq!(fp.algebra.nilpotency_order(), Some(3));
        ArtinMorphism::new(&fp.algebra, &b, fp.to_left.images.clone()).unwrap();
        ArtinMorphism::new(&fp.algebra, &c, fp.to_right.images.clone()).unwrap();
        let mut u = unit::<Q>(0);
        u.insert(1, q(2));
        let mut v = unit::<Q>(0);
        v.insert(1, q(-1));
        let w = fp.glue(&u, &v).unwrap();
        assert_eq!(fp.to_left.apply(&w), u);
        assert_eq!(fp.to_right.apply(&w), v);
        assert!(fp
            .glue(&unit(0), &crate::sparse::scaled(&q(2), &unit(0)))
            .is_err());
    }
}
