//! Brute-force reference computations used to check the main algorithms.
//!
//! Everything here works on dense matrices with its own elimination and
//! never calls into the cohomology, cone or obstruction code, so
//! agreement with those is meaningful.

use crate::artin::{ArtinAlgebra, NilElement, SmallExtension};
use crate::cone::{mc_pair_residuals, PairDiagram, PairMCWitness};
use crate::dgla::DglaPresentation;
use crate::graded::{GradedMap, GradedSpace};
use crate::lie::GradedElement;
use crate::scalar::{parity_sign, sign, Scalar};
use crate::sparse::SparseVec;

/// Rank by plain Gaussian elimination with the first nonzero pivot.
pub fn rank<S: Scalar>(mut m: Vec<Vec<S>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() / m[r][c].clone();
            for k in c..cols {
                let v = m[r][k].clone() * f.clone();
                m[i][k] = m[i][k].clone() - v;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Whether `m x = b` has a solution, by comparing ranks.
pub fn consistent<S: Scalar>(m: &[Vec<S>], b: &[S]) -> bool {
    let aug: Vec<Vec<S>> = m
        .iter()
        .zip(b)
        .map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect())
        .collect();
    rank(m.to_vec()) == rank(aug)
}

/// Dense block of a graded map between the degree `i` and `i + deg` parts.
fn block<S: Scalar>(f: &GradedMap<S>, i: i32) -> (Vec<usize>, Vec<usize>, Vec<Vec<S>>) {
    let src = f.source().in_degree(i);
    let tgt = f.target().in_degree(i + f.degree());
    let m = tgt
        .iter()
        .map(|&t| src.iter().map(|&s| f.entry(t, s)).collect())
        .collect();
    (src, tgt, m)
}

/// `dim ker d_i - rank d_{i-1}` for every degree present.
pub fn cohomology_dims<S: Scalar>(d: &GradedMap<S>) -> Vec<(i32, usize)> {
    let space = d.source();
    let mut out = Vec::new();
    for i in space.degrees() {
        let (src, _, di) = block(d, i);
        let (_, _, dprev) = block(d, i - 1);
        let dim = src.len();
        let z = dim - rank(di);
        let b = rank(dprev);
        if z > b {
            out.push((i, z - b));
        }
    }
    out
}

/// The cone differential written out directly from `d`, `h`, `g`:
/// `(l, n, m) ↦ (dl, dn, -dm - g n + h l)`.
pub fn cone_differential<S: Scalar>(p: &PairDiagram<S>) -> GradedMap<S> {
    let names =
        p.l.space()
            .basis()
            .iter()
            .map(|b| (format!("L:{}", b.name), b.degree))
            .chain(
                p.n.space()
                    .basis()
                    .iter()
                    .map(|b| (format!("N:{}", b.name), b.degree)),
            )
            .chain(
                p.m.space()
                    .basis()
                    .iter()
                    .map(|b| (format!("M:{}", b.name), b.degree + 1)),
            );
    let space = GradedSpace::new(names).expect("unique names");
    let (nl, nn) = (p.l.dim(), p.n.dim());
    let mut d = GradedMap::zero(&space, &space, 1);
    let mut put = |t: usize, s: usize, c: S| d.add_entry(t, s, c).expect("degree");
    for s in 0..nl {
        for (t, c) in p.l.differential().column(s) {
            put(*t, s, c.clone());
        }
        for (t, c) in p.h.column(s) {
            put(nl + nn + t, s, c.clone());
        }
    }
    for s in 0..nn {
        for (t, c) in p.n.differential().column(s) {
            put(nl + t, nl + s, c.clone());
        }
        for (t, c) in p.g.column(s) {
            put(nl + nn + t, nl + s, -c.clone());
        }
    }
    for s in 0..p.m.dim() {
        for (t, c) in p.m.differential().column(s) {
            put(nl + nn + t, nl + nn + s, -c.clone());
        }
    }
    d
}

/// Dense copy of a DGLA, with a full bracket table.
#[derive(Clone, Debug, PartialEq)]
pub struct RawDgla<S> {
    pub degrees: Vec<i32>,
    /// `d[t][s]`
    pub d: Vec<Vec<S>>,
    /// `bracket[i][j][k]`: coefficient of `e_k` in `[e_i, e_j]`
    pub bracket: Vec<Vec<Vec<S>>>,
}

impl<S: Scalar> RawDgla<S> {
    pub fn from_presentation(l: &DglaPresentation<S>) -> Self {
        let n = l.dim();
        let degrees = (0..n).map(|i| l.degree(i)).collect();
        let d = (0..n)
            .map(|t| (0..n).map(|s| l.differential().entry(t, s)).collect())
            .collect();
        let dense = |v: &SparseVec<S>| {
            (0..n)
                .map(|k| v.get(&k).cloned().unwrap_or_else(S::zero))
                .collect()
        };
        let bracket = (0..n)
            .map(|i| (0..n).map(|j| dense(l.bracket_basis(i, j))).collect())
            .collect();
        RawDgla {
            degrees,
            d,
            bracket,
        }
    }

    fn dim(&self) -> usize {
        self.degrees.len()
    }

    fn apply_d(&self, v: &[S]) -> Vec<S> {
        (0..self.dim())
            .map(|t| {
                v.iter().enumerate().fold(S::zero(), |acc, (s, x)| {
                    acc + self.d[t][s].clone() * x.clone()
                })
            })
            .collect()
    }

    fn br(&self, x: &[S], y: &[S]) -> Vec<S> {
        let n = self.dim();
        let mut out = vec![S::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let c = x[i].clone() * y[j].clone();
                for k in 0..n {
                    out[k] = out[k].clone() + c.clone() * self.bracket[i][j][k].clone();
                }
            }
        }
        out
    }

    fn e(&self, i: usize) -> Vec<S> {
        (0..self.dim())
            .map(|k| if k == i { S::one() } else { S::zero() })
            .collect()
    }

    /// Names of the violated axioms, each listed once.
    pub fn violated_axioms(&self) -> Vec<&'static str> {
        let n = self.dim();
        let nz = |v: &[S]| v.iter().any(|x| !x.is_zero());
        let sub = |a: &[S], b: &[S]| {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.clone() - y.clone())
                .collect::<Vec<S>>()
        };
        let add = |a: &[S], b: &[S], c: S| {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.clone() + c.clone() * y.clone())
                .collect::<Vec<S>>()
        };
        let mut out = Vec::new();
        if (0..n).any(|i| nz(&self.apply_d(&self.apply_d(&self.e(i))))) {
            out.push("d^2 = 0");
        }
        let anti = (0..n).any(|i| {
            (0..n).any(|j| {
                let s = sign::<S>(-parity_sign((self.degrees[i] * self.degrees[j]) as i64));
                nz(&add(&self.bracket[i][j], &self.bracket[j][i], -s))
            })
        });
        if anti {
            out.push("antisymmetry");
        }
        let jacobi = (0..n).any(|i| {
            (0..n).any(|j| {
                (0..n).any(|k| {
                    let (x, y, z) = (self.e(i), self.e(j), self.e(k));
                    let lhs = self.br(&x, &self.br(&y, &z));
                    let s = sign::<S>(parity_sign((self.degrees[i] * self.degrees[j]) as i64));
                    let rhs = add(
                        &self.br(&self.br(&x, &y), &z),
                        &self.br(&y, &self.br(&x, &z)),
                        s,
                    );
                    nz(&sub(&lhs, &rhs))
                })
            })
        });
        if jacobi {
            out.push("Jacobi");
        }
        let leibniz = (0..n).any(|i| {
            (0..n).any(|j| {
                let (x, y) = (self.e(i), self.e(j));
                let lhs = self.apply_d(&self.br(&x, &y));
                let s = sign::<S>(parity_sign(self.degrees[i] as i64));
                let rhs = add(
                    &self.br(&self.apply_d(&x), &y),
                    &self.br(&x, &self.apply_d(&y)),
                    s,
                );
                nz(&sub(&lhs, &rhs))
            })
        });
        if leibniz {
            out.push("Leibniz");
        }
        out
    }
}

/// A DGLA with one structure constant changed.
#[derive(Clone, Debug)]
pub struct Perturbation<S> {
    pub label: String,
    pub dgla: DglaPresentation<S>,
}

/// Single-constant perturbations of a DGLA that the brute-force check
/// rejects: every nonzero constant `[e_i, e_j] ∋ e_k` bumped by one on
/// both halves of the table, and on one half only when `i != j`.
pub fn perturbations<S: Scalar>(l: &DglaPresentation<S>) -> Vec<Perturbation<S>> {
    let mut out = Vec::new();
    let name = |i: usize| l.space().name(i).to_string();
    for (&(i, j), v) in l.brackets() {
        for k in v.keys() {
            let mut cases = vec![(false, "both")];
            if i != j {
                cases.push((true, "one-sided"));
            }
            for (one_sided, tag) in cases {
                let dgla = l.perturbed(i, j, *k, S::one(), one_sided);
                if !RawDgla::from_presentation(&dgla)
                    .violated_axioms()
                    .is_empty()
                {
                    out.push(Perturbation {
                        label: format!("[{},{}] -> {} ({tag})", name(i), name(j), name(*k)),
                        dgla,
                    });
                }
            }
        }
    }
    out
}

/// `dim` of first-order witnesses modulo the linearized action over
/// `Q[ε]/(ε²)`: cocycles `dx = 0`, `dy = 0`, `g(y) - h(x) + dp = 0` against
/// images `(-da, -db, g(b) + dc - h(a))`.
pub fn tangent_dimension<S: Scalar>(p: &PairDiagram<S>) -> usize {
    let (l1, n1, m0) = (
        p.l.space().in_degree(1),
        p.n.space().in_degree(1),
        p.m.space().in_degree(0),
    );
    let (l0, n0, mm) = (
        p.l.space().in_degree(0),
        p.n.space().in_degree(0),
        p.m.space().in_degree(-1),
    );
    let (l2, n2, m1) = (
        p.l.space().in_degree(2),
        p.n.space().in_degree(2),
        p.m.space().in_degree(1),
    );
    let coord = |list: &[usize], t: usize| list.iter().position(|&x| x == t);
    // unknowns (x, y, p); equations (dx, dy, gluing)
    let nvar = l1.len() + n1.len() + m0.len();
    let neq = l2.len() + n2.len() + m1.len();
    let mut eq = vec![vec![S::zero(); nvar]; neq];
    for (c, &s) in l1.iter().enumerate() {
        for (t, v) in p.l.differential().column(s) {
            eq[coord(&l2, *t).unwrap()][c] = v.clone();
        }
        for (t, v) in p.h.column(s) {
            let r = l2.len() + n2.len() + coord(&m1, *t).unwrap();
            eq[r][c] = eq[r][c].clone() - v.clone();
        }
    }
    for (c, &s) in n1.iter().enumerate() {
        let c = l1.len() + c;
        for (t, v) in p.n.differential().column(s) {
            eq[l2.len() + coord(&n2, *t).unwrap()][c] = v.clone();
        }
        for (t, v) in p.g.column(s) {
            let r = l2.len() + n2.len() + coord(&m1, *t).unwrap();
            eq[r][c] = eq[r][c].clone() + v.clone();
        }
    }
    for (c, &s) in m0.iter().enumerate() {
        let c = l1.len() + n1.len() + c;
        for (t, v) in p.m.differential().column(s) {
            let r = l2.len() + n2.len() + coord(&m1, *t).unwrap();
            eq[r][c] = eq[r][c].clone() + v.clone();
        }
    }
    // action images, one column per (a, b, c) basis vector
    let mut act: Vec<Vec<S>> = Vec::new();
    for &s in &l0 {
        let mut col = vec![S::zero(); nvar];
        for (t, v) in p.l.differential().column(s) {
            col[coord(&l1, *t).unwrap()] = -v.clone();
        }
        for (t, v) in p.h.column(s) {
            let r = l1.len() + n1.len() + coord(&m0, *t).unwrap();
            col[r] = col[r].clone() - v.clone();
        }
        act.push(col);
    }
    for &s in &n0 {
        let mut col = vec![S::zero(); nvar];
        for (t, v) in p.n.differential().column(s) {
            col[l1.len() + coord(&n1, *t).unwrap()] = -v.clone();
        }
        for (t, v) in p.g.column(s) {
            let r = l1.len() + n1.len() + coord(&m0, *t).unwrap();
            col[r] = col[r].clone() + v.clone();
        }
        act.push(col);
    }
    for &s in &mm {
        let mut col = vec![S::zero(); nvar];
        for (t, v) in p.m.differential().column(s) {
            let r = l1.len() + n1.len() + coord(&m0, *t).unwrap();
            col[r] = col[r].clone() + v.clone();
        }
        act.push(col);
    }
    let z = nvar - rank(eq);
    z - rank(act)
}

/// Whether some `w̃ + Σ δ_i e_i ⊗ j` over the total ring satisfies all three
/// equations, where `w̃` is the coordinatewise lift of `w` and `e_i ⊗ j`
/// runs over degree-appropriate basis vectors times a basis of `J`.
/// Because `J · m = 0` the residual is affine in `δ`, so probing it on
/// each basis perturbation gives the full linear system.
pub fn lift_exists<S: Scalar>(
    p: &PairDiagram<S>,
    se: &SmallExtension<S>,
    w: &PairMCWitness<S>,
) -> bool {
    let ring = &se.total;
    let lift = |e: &NilElement<S>| -> NilElement<S> {
        NilElement::from_terms(
            e.degree,
            e.terms
                .iter()
                .map(|((i, mu), c)| ((*i, se.section[*mu]), c.clone())),
        )
    };
    let base = PairMCWitness {
        x: lift(&w.x),
        y: lift(&w.y),
        p: lift(&w.p),
    };
    let flatten = |w: &PairMCWitness<S>| -> Option<Vec<((usize, usize, usize), S)>> {
        let [a, b, c] = mc_pair_residuals(p, ring, w).ok()?;
        let mut v = Vec::new();
        for (slot, e) in [a, b, c].iter().enumerate() {
            for ((i, mu), x) in &e.terms {
                v.push(((slot, *i, *mu), x.clone()));
            }
        }
        Some(v)
    };
    let Some(r0) = flatten(&base) else {
        return false;
    };
    // J basis as ring vectors; perturb along each e_i ⊗ j
    let mut columns = Vec::new();
    for j in &se.ideal {
        for (slot, space, degree) in [
            (0, p.l.space(), 1),
            (1, p.n.space(), 1),
            (2, p.m.space(), 0),
        ] {
            for i in space.in_degree(degree) {
                let delta =
                    NilElement::from_terms(degree, j.iter().map(|(mu, c)| ((i, *mu), c.clone())));
                let mut w2 = base.clone();
                match slot {
                    0 => w2.x = w2.x.add(&delta),
                    1 => w2.y = w2.y.add(&delta),
                    _ => w2.p = w2.p.add(&delta),
                }
                let Some(r) = flatten(&w2) else { return false };
                columns.push(r);
            }
        }
    }
    let mut keys: Vec<(usize, usize, usize)> = r0.iter().map(|(k, _)| *k).collect();
    for c in &columns {
        keys.extend(c.iter().map(|(k, _)| *k));
    }
    keys.sort_unstable();
    keys.dedup();
    let value = |v: &[((usize, usize, usize), S)], k| {
        v.iter()
            .find(|(kk, _)| *kk == k)
            .map_or(S::zero(), |(_, x)| x.clone())
    };
    let m: Vec<Vec<S>> = keys
        .iter()
        .map(|&k| {
            columns
                .iter()
                .map(|c| value(c, k) - value(&r0, k))
                .collect()
        })
        .collect();
    let b: Vec<S> = keys.iter().map(|&k| -value(&r0, k)).collect();
    if keys.is_empty() {
        return true;
    }
    consistent(&m, &b)
}

/// First-order witnesses `z ⊗ ε` over the dual numbers for a basis of
/// degree one cocycles of the brute-force cone differential.
pub fn cone_cocycles<S: Scalar>(p: &PairDiagram<S>) -> Vec<SparseVec<S>> {
    let d = cone_differential(p);
    let (src, _, m) = block(&d, 1);
    let basis = crate::linalg::nullspace(&m, src.len());
    basis
        .into_iter()
        .map(|v| {
            v.into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(c, x)| (src[c], x))
                .collect()
        })
        .collect()
}

/// Smallest `N` with `m_A^N = 0`, by multiplying out powers of `m_A`.
pub fn nilpotency_order<S: Scalar>(ring: &ArtinAlgebra<S>) -> usize {
    let n = ring.dim();
    let cols: Vec<usize> = (0..n).collect();
    let mut layer: Vec<SparseVec<S>> = (0..n).map(crate::sparse::unit).collect();
    let mut k = 1;
    loop {
        let mut next = Vec::new();
        for v in &layer {
            for g in 0..n {
                let w = ring.mul(v, &crate::sparse::unit(g));
                if !w.is_empty() {
                    next.push(crate::sparse::to_dense(&w, &cols));
                }
            }
        }
        if rank(next.clone()) == 0 {
            return k + 1;
        }
        let (rows, _) = crate::linalg::rref(next);
        layer = rows
            .iter()
            .map(|r| crate::sparse::from_dense(r, &cols))
            .collect();
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{all_entries, entry};
    use crate::cone::{build_cone, cone_les_check};
    use crate::dgla::validate_dgla;
    use crate::Q;

    #[test]
    fn cohomology_matches_pinned_properties() {
        for e in all_entries::<Q>() {
            let dims = cohomology_dims(&cone_differential(&e.diagram));
            assert_eq!(dims, e.properties.cone_cohomology, "{}", e.name);
            let c = build_cone(&e.diagram).unwrap();
            assert_eq!(cohomology_dims(c.complex.differential()), dims);
            assert!(cone_les_check(&e.diagram).exact());
        }
    }

    #[test]
    fn perturbations_are_rejected() {
        let e = entry::<Q>("gl2-wedge").unwrap();
        let ps = perturbations(&e.diagram.m);
        assert!(!ps.is_empty());
        for p in ps {
            assert!(!validate_dgla(&p.dgla).is_valid(), "{}", p.label);
        }
    }

    #[test]
    fn tangent_matches_h1() {
        for e in all_entries::<Q>() {
            let h1 = e
                .properties
                .cone_cohomology
                .iter()
                .find(|(d, _)| *d == 1)
                .map_or(0, |(_, k)| *k);
            assert_eq!(tangent_dimension(&e.diagram), h1, "{}", e.name);
        }
    }

    #[test]
    fn ranks() {
        let m = vec![
            vec![Q::from_integer(1.into()), Q::from_integer(2.into())],
            vec![Q::from_integer(2.into()), Q::from_integer(4.into())],
        ];
        assert_eq!(rank(m.clone()), 1);
        assert!(consistent(
            &m,
            &[Q::from_integer(1.into()), Q::from_integer(2.into())]
        ));
        assert!(!consistent(
            &m,
            &[Q::from_integer(1.into()), Q::from_integer(3.into())]
        ));
    }

    #[test]
    fn ring_nilpotency() {
        assert_eq!(
            nilpotency_order(&crate::catalog::ring::<Q>("eps4").unwrap()),
            4
        );
        assert_eq!(
            nilpotency_order(&crate::catalog::ring::<Q>("dual").unwrap()),
            2
        );
    }
}
