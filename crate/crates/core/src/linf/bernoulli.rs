//! Bernoulli numbers and the polynomial sequences `φ_j`, `φ̄_j` with their
//! integrals over `[0, 1]`.

use crate::scalar::{binomial, factorial, Scalar};

/// `B_j` from `Σ_{k=0}^{n} binom(n+1, k) B_k = 0`, `B_0 = 1`.
pub fn bernoulli<S: Scalar>(j: usize) -> S {
    bernoulli_table::<S>(j).pop().expect("nonempty")
}

/// `B_0 ..= B_j`
pub fn bernoulli_table<S: Scalar>(j: usize) -> Vec<S> {
    let mut b = vec![S::one()];
    for n in 1..=j {
        let mut acc = S::zero();
        for (k, bk) in b.iter().enumerate() {
            acc = acc + S::from_big(&binomial(n + 1, k)) * bk.clone();
        }
        b.push(-acc / S::int(n as i64 + 1));
    }
    b
}

/// Polynomial in `t` by coefficients, lowest first.
pub type Poly<S> = Vec<S>;

fn integrate_from_zero<S: Scalar>(p: &[S]) -> Poly<S> {
    let mut out = vec![S::zero()];
    for (k, c) in p.iter().enumerate() {
        out.push(c.clone() / S::int(k as i64 + 1));
    }
    out
}

fn integral01<S: Scalar>(p: &[S]) -> S {
    integrate_from_zero(p)
        .into_iter()
        .fold(S::zero(), |a, c| a + c)
}

/// Runs `φ_{j+1}(t) = ∫_0^t φ_j - t I_j` from `φ_1 = start`.
fn sequence<S: Scalar>(start: Poly<S>, j: usize) -> (Poly<S>, S) {
    let mut phi = start;
    let mut i = integral01(&phi);
    for _ in 1..j {
        let mut next = integrate_from_zero(&phi);
        next[1] = next[1].clone() - i.clone();
        phi = next;
        i = integral01(&phi);
    }
    trim(&mut phi);
    (phi, i)
}

fn trim<S: Scalar>(p: &mut Poly<S>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// `(φ_j, I_j)` with `φ_1 = t`.
pub fn phi_sequence<S: Scalar>(j: usize) -> (Poly<S>, S) {
    assert!(j >= 1, "sequence starts at j = 1");
    sequence(vec![S::zero(), S::one()], j)
}

/// `(φ̄_j, Ī_j)` with `φ̄_1 = 1 - t`.
pub fn phi_bar_sequence<S: Scalar>(j: usize) -> (Poly<S>, S) {
    assert!(j >= 1, "sequence starts at j = 1");
    sequence(vec![S::one(), -S::one()], j)
}

/// `I_j = -B_j / j!`
pub fn i_coefficient<S: Scalar>(j: usize) -> S {
    -bernoulli::<S>(j) / factorial::<S>(j)
}

/// `Ī_j`: equals `I_1` for `j = 1` and `-I_j` afterwards.
pub fn i_bar_coefficient<S: Scalar>(j: usize) -> S {
    if j == 1 {
        i_coefficient(1)
    } else {
        -i_coefficient::<S>(j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn r(a: i64, b: i64) -> Q {
        Q::new(a.into(), b.into())
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli::<Q>(0), r(1, 1));
        assert_eq!(bernoulli::<Q>(1), r(-1, 2));
        assert_eq!(bernoulli::<Q>(2), r(1, 6));
        assert_eq!(bernoulli::<Q>(3), r(0, 1));
        assert_eq!(bernoulli::<Q>(4), r(-1, 30));
        assert_eq!(bernoulli::<Q>(12), r(-691, 2730));
        // x/(e^x - 1) = 1 - x/2 + x^2/12 - x^4/720
        assert_eq!(bernoulli::<Q>(2) / factorial::<Q>(2), r(1, 12));
        assert_eq!(bernoulli::<Q>(4) / factorial::<Q>(4), r(-1, 720));
    }

    #[test]
    fn phi_values() {
        let (p1, i1) = phi_sequence::<Q>(1);
        assert_eq!(p1, vec![r(0, 1), r(1, 1)]);
        assert_eq!(i1, r(1, 2));
        let (p2, i2) = phi_sequence::<Q>(2);
        assert_eq!(p2, vec![r(0, 1), r(-1, 2), r(1, 2)]);
        assert_eq!(i2, r(-1, 12));
    }

    #[test]
    fn phi_bar_is_minus_phi() {
        for j in 2..=8 {
            let (p, i) = phi_sequence::<Q>(j);
            let (pb, ib) = phi_bar_sequence::<Q>(j);
            assert_eq!(
                pb,
                p.iter().map(|c| -c.clone()).collect::<Vec<_>>(),
                "j = {j}"
            );
            assert_eq!(ib, -i.clone());
            assert_eq!(i, i_coefficient::<Q>(j));
            assert_eq!(ib, i_bar_coefficient::<Q>(j));
        }
        assert_eq!(phi_sequence::<Q>(1).1, i_coefficient::<Q>(1));
        assert_eq!(phi_bar_sequence::<Q>(1).1, i_bar_coefficient::<Q>(1));
    }
}
