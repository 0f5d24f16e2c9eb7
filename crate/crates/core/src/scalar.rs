//! Exact scalar field abstraction.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, ToPrimitive, Zero};

/// An exact field of characteristic zero.
///
/// Every algorithm in the crate is written against this trait; the crate
/// root fixes [`crate::Q`] (arbitrary precision rationals) as the default.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Num
    + Neg<Output = Self>
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    /// The rational number `p / q`.
    fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::from_i64(p).expect("integer embeds") / Self::from_i64(q).expect("integer embeds")
    }

    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("integer embeds")
    }

    /// Converts a big rational into this field. Panics when the value does
    /// not fit (only relevant for fixed-width rationals).
    fn from_big(q: &BigRational) -> Self {
        let n = q.numer().to_i64().expect("numerator fits");
        let d = q.denom().to_i64().expect("denominator fits");
        Self::ratio(n, d)
    }
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Debug
        + Display
        + Num
        + Neg<Output = T>
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}

pub fn sign<S: Scalar>(s: i32) -> S {
    if s >= 0 {
        S::one()
    } else {
        -S::one()
    }
}

/// (-1)^k
pub fn parity_sign(k: i64) -> i32 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn factorial<S: Scalar>(n: usize) -> S {
    let mut acc = S::one();
    for k in 2..=n {
        acc = acc * S::int(k as i64);
    }
    acc
}

pub fn big_factorial(n: usize) -> BigRational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

pub fn binomial(n: usize, k: usize) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    big_factorial(n) / (big_factorial(k) * big_factorial(n - k))
}

/// `a^k` for a scalar `a`.
pub fn pow<S: Scalar>(a: &S, k: usize) -> S {
    let mut acc = S::one();
    for _ in 0..k {
        acc = acc * a.clone();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn ratio_is_reduced() {
        let q: BigRational = Scalar::ratio(4, -6);
        assert_eq!(q, BigRational::new(BigInt::from(-2), BigInt::from(3)));
        let r: Rational64 = Scalar::ratio(4, -6);
        assert_eq!(r, Rational64::new(-2, 3));
    }

    #[test]
    fn small_factorials() {
        assert_eq!(
            factorial::<BigRational>(5),
            BigRational::from_integer(BigInt::from(120))
        );
        assert_eq!(binomial(5, 2), BigRational::from_integer(BigInt::from(10)));
    }
}
