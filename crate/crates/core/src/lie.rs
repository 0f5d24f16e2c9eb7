//! Operations available in any DGLA with nilpotent coefficients: gauge
//! action, Maurer-Cartan residual, irrelevant stabilizers and the group
//! product `p • q = log(e^p e^q)`.

use std::collections::HashMap;
use std::fmt::Debug;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{big_factorial, factorial, Scalar};

/// A homogeneous element of some graded vector space over `S`.
pub trait GradedElement<S: Scalar>: Clone + PartialEq + Debug {
    fn degree(&self) -> i32;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, c: &S) -> Self;

    fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

/// A DGLA whose elements can be manipulated symbolically.
pub trait DgLie<S: Scalar> {
    type Elem: GradedElement<S>;

    fn zero(&self, degree: i32) -> Self::Elem;
    fn d(&self, x: &Self::Elem) -> Self::Elem;
    fn bracket(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    /// `N` such that brackets of `N` coefficient-nilpotent elements vanish;
    /// `None` when coefficients are not nilpotent.
    fn nilpotency(&self) -> Option<usize>;
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("expected an element of degree {expected}, found degree {found}")]
    Degree { expected: i32, found: i32 },
    #[error("series does not terminate: coefficients are not nilpotent")]
    NotNilpotent,
}

fn expect_degree<S: Scalar, E: GradedElement<S>>(x: &E, expected: i32) -> Result<(), LieError> {
    if x.is_zero() || x.degree() == expected {
        Ok(())
    } else {
        Err(LieError::Degree {
            expected,
            found: x.degree(),
        })
    }
}

const SERIES_GUARD: usize = 64;

/// `Σ_{n≥0} coeff(n) ad_a^n (x)`, stopping at the first vanishing power.
pub fn ad_series<S: Scalar, A: DgLie<S>>(
    alg: &A,
    a: &A::Elem,
    x: &A::Elem,
    coeff: impl Fn(usize) -> S,
) -> Result<A::Elem, LieError> {
    let mut term = x.clone();
    let mut acc = x.scale(&coeff(0));
    let limit = alg.nilpotency().map_or(SERIES_GUARD, |n| n + 1);
    for n in 1.. {
        term = alg.bracket(a, &term);
        if term.is_zero() {
            return Ok(acc);
        }
        if n > limit {
            return Err(LieError::NotNilpotent);
        }
        acc = acc.add(&term.scale(&coeff(n)));
    }
    unreachable!()
}

/// `e^{ad a}(x)`
pub fn exp_ad<S: Scalar, A: DgLie<S>>(
    alg: &A,
    a: &A::Elem,
    x: &A::Elem,
) -> Result<A::Elem, LieError> {
    ad_series(alg, a, x, |n| S::one() / factorial::<S>(n))
}

/// `e^a * x = x + Σ_n ad_a^n / (n+1)! ([a,x] - da)`
pub fn gauge_action<S: Scalar, A: DgLie<S>>(
    alg: &A,
    a: &A::Elem,
    x: &A::Elem,
) -> Result<A::Elem, LieError> {
    expect_degree(a, 0)?;
    expect_degree(x, 1)?;
    let y = alg.bracket(a, x).sub(&alg.d(a));
    if y.is_zero() {
        return Ok(x.clone());
    }
    let corr = ad_series(alg, a, &y, |n| S::one() / factorial::<S>(n + 1))?;
    Ok(x.add(&corr))
}

/// `dx + ½[x,x]`
pub fn mc_residual<S: Scalar, A: DgLie<S>>(alg: &A, x: &A::Elem) -> A::Elem {
    alg.d(x).add(&alg.bracket(x, x).scale(&S::ratio(1, 2)))
}

pub fn is_mc<S: Scalar, A: DgLie<S>>(alg: &A, x: &A::Elem) -> bool {
    mc_residual(alg, x).is_zero()
}

/// `d(hh) + [x, hh]`, whose exponential fixes `x` when `x` is MC.
pub fn stabilizer_element<S: Scalar, A: DgLie<S>>(alg: &A, x: &A::Elem, hh: &A::Elem) -> A::Elem {
    alg.d(hh).add(&alg.bracket(x, hh))
}

type WordTable = Arc<Vec<(Vec<u8>, BigRational)>>;

fn dynkin_tables() -> &'static Mutex<HashMap<usize, WordTable>> {
    static TABLES: OnceLock<Mutex<HashMap<usize, WordTable>>> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficient of the word `w` (0 = X, 1 = Y) in `log(e^X e^Y)` computed in
/// the free associative algebra.
fn log_coefficient(w: &[u8]) -> BigRational {
    let k = w.len();
    // ways[pos][n]: weighted count of splittings of w[pos..] into n blocks X^p Y^q
    let mut ways = vec![vec![BigRational::zero(); k + 1]; k + 1];
    ways[k][0] = BigRational::one();
    for pos in (0..k).rev() {
        for end in pos + 1..=k {
            let block = &w[pos..end];
            let p = block.iter().take_while(|&&c| c == 0).count();
            if block[p..].iter().any(|&c| c == 0) {
                continue;
            }
            let q = block.len() - p;
            let weight = BigRational::one() / (big_factorial(p) * big_factorial(q));
            for n in 0..k {
                if !ways[end][n].is_zero() {
                    let add = ways[end][n].clone() * weight.clone();
                    ways[pos][n + 1] += add;
                }
            }
        }
    }
    let mut c = BigRational::zero();
    for n in 1..=k {
        let s = if n % 2 == 1 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        c += s * ways[0][n].clone() / BigRational::from_integer(n.into());
    }
    c
}

/// Words of length `k` with their Dynkin coefficients `c_w / k`.
fn dynkin_words(k: usize) -> WordTable {
    let mut guard = dynkin_tables().lock().expect("table lock");
    guard
        .entry(k)
        .or_insert_with(|| {
            let mut out = Vec::new();
            for bits in 0..(1u64 << k) {
                let w: Vec<u8> = (0..k).map(|i| ((bits >> (k - 1 - i)) & 1) as u8).collect();
                let c = log_coefficient(&w);
                if !c.is_zero() {
                    out.push((w, c / BigRational::from_integer(k.into())));
                }
            }
            Arc::new(out)
        })
        .clone()
}

/// `p • q` with `exp(p • q) = exp(p) exp(q)`, via the Dynkin form of the
/// Baker-Campbell-Hausdorff series truncated by nilpotency.
pub fn bch<S: Scalar, A: DgLie<S>>(alg: &A, p: &A::Elem, q: &A::Elem) -> Result<A::Elem, LieError> {
    expect_degree(p, 0)?;
    expect_degree(q, 0)?;
    if p.is_zero() {
        return Ok(q.clone());
    }
    if q.is_zero() {
        return Ok(p.clone());
    }
    let nil = alg.nilpotency().ok_or(LieError::NotNilpotent)?;
    let mut acc = p.add(q);
    // left-normed brackets [[..[w1,w2],..],wk] cached by word
    let mut cache: HashMap<Vec<u8>, A::Elem> = HashMap::new();
    cache.insert(vec![0], p.clone());
    cache.insert(vec![1], q.clone());
    for k in 2..nil {
        let words = dynkin_words(k);
        for (w, c) in words.iter() {
            let value = left_normed(alg, w, &mut cache, p, q);
            if !value.is_zero() {
                acc = acc.add(&value.scale(&S::from_big(c)));
            }
        }
    }
    Ok(acc)
}

fn left_normed<S: Scalar, A: DgLie<S>>(
    alg: &A,
    w: &[u8],
    cache: &mut HashMap<Vec<u8>, A::Elem>,
    p: &A::Elem,
    q: &A::Elem,
) -> A::Elem {
    if let Some(v) = cache.get(w) {
        return v.clone();
    }
    let prefix = left_normed(alg, &w[..w.len() - 1], cache, p, q);
    let v = if prefix.is_zero() {
        prefix
    } else {
        let last = if w[w.len() - 1] == 0 { p } else { q };
        alg.bracket(&prefix, last)
    };
    cache.insert(w.to_vec(), v.clone());
    v
}

/// `p_1 • p_2 • ... • p_k`
pub fn bch_chain<S: Scalar, A: DgLie<S>>(
    alg: &A,
    factors: &[&A::Elem],
) -> Result<A::Elem, LieError> {
    let mut acc = alg.zero(0);
    for f in factors {
        acc = bch(alg, &acc, f)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin::{make_artin, ArtinAlgebra, NilElement, TensorDgla};
    use crate::dgla::DglaPresentation;
    use crate::graded::{GradedMap, GradedSpace};
    use crate::sparse::unit;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    /// a:0, b:0, x:1 with da = x, [a,x] = x, [a,b] = b
    fn toy() -> DglaPresentation<Q> {
        let sp = GradedSpace::new([("a", 0), ("b", 0), ("x", 1)]).unwrap();
        let d = GradedMap::from_entries(&sp, &sp, 1, [(2, 0, q(1))]).unwrap();
        DglaPresentation::new(sp, d, [((0, 2), unit(2)), ((0, 1), unit(1))]).unwrap()
    }

    #[test]
    fn toy_is_valid() {
        assert!(crate::dgla::validate_dgla(&toy()).is_valid());
    }

    #[test]
    fn dynkin_low_order() {
        let w = dynkin_words(2);
        assert_eq!(w.len(), 2);
        assert_eq!(w[0], (vec![0, 1], BigRational::new(1.into(), 4.into())));
        // third order: 1/12 [X,[X,Y]] + 1/12 [Y,[Y,X]]
        assert!(!dynkin_words(3).is_empty());
    }

    #[test]
    fn bch_examples() {
        let l = toy();
        let ring = make_artin::<Q>(&["e", "f"], 3, &[]).unwrap();
        let alg = TensorDgla::new(&l, &ring);
        let (e, f, ef) = (
            ring.index_of("e").unwrap(),
            ring.index_of("f").unwrap(),
            ring.index_of("e*f").unwrap(),
        );
        let p = NilElement::from_terms(0, [((0, e), q(1))]);
        let qq = NilElement::from_terms(0, [((1, f), q(1))]);
        let expected = p.add(&qq).add(&NilElement::from_terms(
            0,
            [((1, ef), Q::new(1.into(), 2.into()))],
        ));
        assert_eq!(bch(&alg, &p, &qq).unwrap(), expected);
        assert_eq!(bch(&alg, &p, &alg.zero(0)).unwrap(), p);
        assert!(bch(&alg, &p, &p.neg()).unwrap().is_zero());
    }

    #[test]
    fn gauge_example() {
        let l = toy();
        let ring = make_artin::<Q>(&["eps"], 3, &[]).unwrap();
        let alg = TensorDgla::new(&l, &ring);
        let a = NilElement::from_terms(0, [((0, 0), q(1)), ((1, 0), q(2))]);
        let x = NilElement::from_terms(1, [((2, 0), q(3))]);
        let got = gauge_action(&alg, &a, &x).unwrap();
        // x − da ε + [a,x] ε² − ½ [a, da] ε² computed by hand with a = a+2b, da = x
        let da = alg.d(&a);
        let sq = |v: &NilElement<Q>| v.reindex_ring(&[1]);
        let manual = x
            .sub(&da)
            .add(&sq(&NilElement::from_terms(1, [((2, 0), q(3))])))
            .sub(
                &sq(&NilElement::from_terms(1, [((2, 0), q(1))]))
                    .scale(&Q::new(1.into(), 2.into())),
            );
        assert_eq!(got, manual);
        assert_eq!(gauge_action(&alg, &alg.zero(0), &x).unwrap(), x);
        assert!(gauge_action(&alg, &x, &x).is_err());
    }

    #[test]
    fn stabilizer_fixes_zero() {
        let l = toy();
        let ring = make_artin::<Q>(&["eps"], 3, &[]).unwrap();
        let alg = TensorDgla::new(&l, &ring);
        let z = alg.zero(1);
        let hh = alg.zero(-1);
        assert!(stabilizer_element(&alg, &z, &hh).is_zero());
    }

    #[test]
    fn ground_field_series_guard() {
        let l = toy();
        let ring = ArtinAlgebra::<Q>::ground();
        let alg = TensorDgla::new(&l, &ring);
        let a = NilElement::from_terms(0, [((0, 0), q(1))]);
        let b = NilElement::from_terms(0, [((1, 0), q(1))]);
        assert_eq!(exp_ad(&alg, &a, &b), Err(LieError::NotNilpotent));
        assert_eq!(bch(&alg, &a, &b), Err(LieError::NotNilpotent));
    }
}
