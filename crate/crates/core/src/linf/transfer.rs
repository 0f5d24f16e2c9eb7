//! Brackets transferred from the path DGLA `H` to the cone: the tree
//! formula evaluated through `(ι, π, K)`, and the closed Bernoulli form.

use crate::cone::{cone_d, ConeElem, PairElem, PairOps};
use crate::graded::{koszul_sign_unchecked, Permutation};
use crate::lie::{ad_series, DgLie, GradedElement, LieError};
use crate::path::HDgla;
use crate::scalar::{parity_sign, sign, Scalar};

use super::bernoulli::{i_bar_coefficient, i_coefficient};

type Cone<S, P> = ConeElem<PairElem<S, P>>;

/// Degree in the suspension `C[1]`.
pub fn shifted_degree<S: Scalar, E: GradedElement<S>>(c: &ConeElem<E>) -> i32 {
    GradedElement::<S>::degree(c) - 1
}

fn cone_degree_zero<S: Scalar, P: PairOps<S>>(pair: &P, degree: i32) -> Cone<S, P> {
    crate::cone::cone_zero(pair, degree)
}

/// `⟨γ_1 ⊙ ... ⊙ γ_n⟩_n` by the tree formula: `((-1)^{n-2}/2)` times the sum
/// over all of `Σ_n` of `ε(σ) π q_2(ιγ_σ(1) ⊙ K q_2(ιγ_σ(2) ⊙ ... ))`.
/// Arity one is `-D`.
pub fn tree_bracket<S: Scalar, P: PairOps<S>>(pair: &P, inputs: &[Cone<S, P>]) -> Cone<S, P>
where
    P::Alg: Clone,
{
    let n = inputs.len();
    assert!(n >= 1, "brackets have arity at least one");
    if n == 1 {
        return cone_d(pair, &inputs[0]).neg();
    }
    let h = HDgla::new(pair);
    let degrees: Vec<i32> = inputs.iter().map(shifted_degree::<S, _>).collect();
    let out_degree = degrees.iter().sum::<i32>() + 2;
    let lifted: Vec<_> = inputs.iter().map(|c| h.iota(c)).collect();
    let mut total = cone_degree_zero(pair, out_degree);
    for sigma in Permutation::all(n) {
        let idx = sigma.images();
        let eps = koszul_sign_unchecked(idx, &degrees);
        let mut x = lifted[idx[n - 1]].clone();
        for k in (0..n - 1).rev() {
            x = h.q2(&lifted[idx[k]], &x);
            if k > 0 {
                x = h.homotopy_k(&x);
            }
            if x.is_zero() {
                break;
            }
        }
        if x.is_zero() {
            continue;
        }
        let v = h.pi_unchecked(&x);
        total = total.add(&v.scale(&sign::<S>(eps)));
    }
    let c = sign::<S>(parity_sign(n as i64)) * S::ratio(1, 2);
    total.scale(&c)
}

/// Pure summand of a cone element.
#[derive(Clone, Debug)]
enum Part<E> {
    L(E),
    N(E),
    M(E),
}

impl<E> Part<E> {
    fn shifted<S: Scalar>(&self) -> i32
    where
        E: GradedElement<S>,
    {
        match self {
            Part::L(e) | Part::N(e) => e.degree() - 1,
            Part::M(e) => e.degree(),
        }
    }
}

fn parts<S: Scalar, E: GradedElement<S>>(c: &ConeElem<E>) -> Vec<Part<E>> {
    let mut v = Vec::new();
    if !c.l.is_zero() {
        v.push(Part::L(c.l.clone()));
    }
    if !c.n.is_zero() {
        v.push(Part::N(c.n.clone()));
    }
    if !c.m.is_zero() {
        v.push(Part::M(c.m.clone()));
    }
    v
}

/// `Σ_σ ε(σ) [m_σ(1), [..., [m_σ(j), x]]]`
fn symmetrized_ad<S: Scalar, A: DgLie<S>>(alg: &A, ms: &[A::Elem], x: &A::Elem) -> A::Elem {
    let degrees: Vec<i32> = ms.iter().map(|m| m.degree()).collect();
    let j = ms.len();
    let mut out = alg.zero(x.degree() + degrees.iter().sum::<i32>());
    for sigma in Permutation::all(j) {
        let idx = sigma.images();
        let mut y = x.clone();
        for k in (0..j).rev() {
            y = alg.bracket(&ms[idx[k]], &y);
            if y.is_zero() {
                break;
            }
        }
        if !y.is_zero() {
            out = out.add(&y.scale(&sign::<S>(koszul_sign_unchecked(idx, &degrees))));
        }
    }
    out
}

/// `⟨γ_1 ⊙ ... ⊙ γ_n⟩_n` in closed form. For `n ≥ 3` only summands with
/// `n - 1` entries in `M` and one in `L` or `N` survive:
/// `⟨m_1..m_j ⊙ l⟩ = (-1)^{j + Σ|m|} I_j Σ_σ ε(σ)[m_σ(1),[...,[m_σ(j), h(l)]]]`
/// and the same with `Ī_j` and `g(n)`.
pub fn closed_bracket<S: Scalar, P: PairOps<S>>(pair: &P, inputs: &[Cone<S, P>]) -> Cone<S, P> {
    let n = inputs.len();
    assert!(n >= 1, "brackets have arity at least one");
    if n == 1 {
        return cone_d(pair, &inputs[0]).neg();
    }
    let degrees: Vec<i32> = inputs.iter().map(shifted_degree::<S, _>).collect();
    let out_degree = degrees.iter().sum::<i32>() + 2;
    if n == 2 {
        return closed_binary(pair, &inputs[0], &inputs[1], out_degree);
    }
    let mut out = cone_degree_zero(pair, out_degree);
    let expanded: Vec<Vec<Part<PairElem<S, P>>>> = inputs.iter().map(parts).collect();
    if expanded.iter().any(|p| p.is_empty()) {
        return out;
    }
    let j = n - 1;
    let (ij, ibar) = (i_coefficient::<S>(j), i_bar_coefficient::<S>(j));
    // exactly one slot takes an L or N part, all others their M part
    for p in 0..n {
        let ms: Option<Vec<PairElem<S, P>>> = (0..n)
            .filter(|&q| q != p)
            .map(|q| {
                expanded[q].iter().find_map(|x| match x {
                    Part::M(e) => Some(e.clone()),
                    _ => None,
                })
            })
            .collect();
        let Some(ms) = ms else { continue };
        let after: i32 = ms[p..].iter().map(|m| m.degree()).sum();
        let mdeg: i32 = ms.iter().map(|m| m.degree()).sum();
        for part in &expanded[p] {
            let (x, c) = match part {
                Part::L(l) => (pair.h(l), ij.clone()),
                Part::N(nn) => (pair.g(nn), ibar.clone()),
                Part::M(_) => continue,
            };
            let move_sign = parity_sign((part.shifted::<S>() * after) as i64);
            let s = move_sign * parity_sign((j as i32 + mdeg) as i64);
            let v = symmetrized_ad(pair.m(), &ms, &x);
            out.m = out.m.add(&v.scale(&(sign::<S>(s) * c)));
        }
    }
    out
}

fn closed_binary<S: Scalar, P: PairOps<S>>(
    pair: &P,
    a: &Cone<S, P>,
    b: &Cone<S, P>,
    out_degree: i32,
) -> Cone<S, P> {
    let d1 = GradedElement::<S>::degree(a);
    let s1 = sign::<S>(parity_sign(d1 as i64));
    let (l, n, m) = (pair.l(), pair.n(), pair.m());
    let mut out = cone_degree_zero(pair, out_degree);
    out.l = out.l.add(&l.bracket(&a.l, &b.l).scale(&s1));
    out.n = out.n.add(&n.bracket(&a.n, &b.n).scale(&s1));
    let first = m
        .bracket(&a.m, &pair.g(&b.n))
        .add(&m.bracket(&a.m, &pair.h(&b.l)));
    let second = m
        .bracket(&pair.g(&a.n), &b.m)
        .add(&m.bracket(&pair.h(&a.l), &b.m));
    let inner = first.add(&second.scale(&s1));
    out.m = out.m.add(&inner.scale(&(s1 * S::ratio(1, 2))));
    out
}

/// `Σ_{j≥1} ⟨γ^{⊙j}⟩_j / j!` for `γ` of cone degree 1. With every entry of
/// shifted degree zero the higher terms collapse to
/// `Σ_{k≥2} (-1)^k (I_k ad_m^k h(l) + Ī_k ad_m^k g(n))`.
pub fn mc_infinity_residual<S: Scalar, P: PairOps<S>>(
    pair: &P,
    gamma: &Cone<S, P>,
) -> Result<Cone<S, P>, LieError> {
    let mut r = closed_bracket(pair, std::slice::from_ref(gamma));
    let two = closed_bracket(pair, &[gamma.clone(), gamma.clone()]);
    r = r.add(&two.scale(&S::ratio(1, 2)));
    let m = pair.m();
    let coeff = |bar: bool| {
        move |k: usize| {
            if k < 2 {
                S::zero()
            } else {
                let c = if bar {
                    i_bar_coefficient::<S>(k)
                } else {
                    i_coefficient::<S>(k)
                };
                sign::<S>(parity_sign(k as i64)) * c
            }
        }
    };
    let hl = ad_series(m, &gamma.m, &pair.h(&gamma.l), coeff(false))?;
    let gn = ad_series(m, &gamma.m, &pair.g(&gamma.n), coeff(true))?;
    r.m = r.m.add(&hl).add(&gn);
    Ok(r)
}

/// `Σ_{j=1}^{N} ⟨γ^{⊙j}⟩_j / j!` evaluated literally with the closed form,
/// `N` the nilpotency bound of the coefficients.
pub fn mc_infinity_residual_literal<S: Scalar, P: PairOps<S>>(
    pair: &P,
    gamma: &Cone<S, P>,
) -> Result<Cone<S, P>, LieError> {
    let cap = pair.m().nilpotency().ok_or(LieError::NotNilpotent)?;
    let mut r = closed_bracket(pair, std::slice::from_ref(gamma));
    let mut fact = S::one();
    for j in 2..=cap.max(2) {
        fact = fact * S::int(j as i64);
        let inputs = vec![gamma.clone(); j];
        r = r.add(&closed_bracket(pair, &inputs).scale(&(S::one() / fact.clone())));
    }
    Ok(r)
}

pub fn mc_infinity_verify<S: Scalar, P: PairOps<S>>(
    pair: &P,
    gamma: &Cone<S, P>,
) -> Result<bool, LieError> {
    Ok(mc_infinity_residual(pair, gamma)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin::NilElement;
    use crate::catalog::{entry, ring};
    use crate::cone::{mc_pair_verify, PairMCWitness, TensorPair};
    use crate::path::samples::cone_element;
    use crate::sample;
    use crate::Q;

    #[test]
    fn tree_matches_closed_low_arity() {
        for name in ["gl2-wedge", "heisenberg-acyclic"] {
            let e = entry::<Q>(name).unwrap();
            let r = ring::<Q>("eps4").unwrap();
            let t = TensorPair::new(&e.diagram, &r);
            let mut rng = sample::rng(7);
            for n in 2..=4 {
                for _ in 0..6 {
                    let inputs: Vec<ConeElem<NilElement<Q>>> = (0..n)
                        .map(|_| {
                            let d = *sample::pick(&mut rng, &[0, 1, 1, 2]);
                            cone_element(&mut rng, &e.diagram, &r, d, 0.4)
                        })
                        .collect();
                    assert_eq!(
                        tree_bracket(&t, &inputs),
                        closed_bracket(&t, &inputs),
                        "{name} arity {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn mc_shortcut_matches_literal_sum() {
        let e = entry::<Q>("gl2-wedge").unwrap();
        let r = ring::<Q>("eps4").unwrap();
        let t = TensorPair::new(&e.diagram, &r);
        let mut rng = sample::rng(3);
        for _ in 0..5 {
            let g = cone_element(&mut rng, &e.diagram, &r, 1, 0.5);
            assert_eq!(
                mc_infinity_residual(&t, &g).unwrap(),
                mc_infinity_residual_literal(&t, &g).unwrap()
            );
        }
    }

    #[test]
    fn mc_infinity_agrees_with_pair_equations() {
        let r = ring::<Q>("eps3").unwrap();
        for name in crate::catalog::NAMES {
            let e = entry::<Q>(name).unwrap();
            let t = TensorPair::new(&e.diagram, &r);
            for seed in 0..4 {
                let w = crate::cone::sample_mc(&e.diagram, &r, seed);
                assert!(mc_pair_verify(&e.diagram, &r, &w));
                assert!(mc_infinity_verify(&t, &w.as_cone()).unwrap(), "{name}");
                let mut bad = w.clone();
                bad.p = bad.p.add(&sample::nil_element(
                    &mut sample::rng(seed),
                    &e.diagram.m,
                    &r,
                    0,
                    0.5,
                ));
                let pair_ok = mc_pair_verify(&e.diagram, &r, &bad);
                assert_eq!(mc_infinity_verify(&t, &bad.as_cone()).unwrap(), pair_ok);
            }
        }
        let _ = PairMCWitness::<Q>::zero();
    }
}
