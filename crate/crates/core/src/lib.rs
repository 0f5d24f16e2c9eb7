//! Exact deformation theory for pairs of DGLA morphisms `h: L -> M <- N: g`.

pub mod artin;
pub mod catalog;
pub mod cone;
pub mod dgla;
pub mod graded;
pub mod lie;
pub mod linalg;
pub mod linf;
#[cfg(any(test, feature = "oracles"))]
pub mod oracle;
pub mod path;
pub mod sample;
pub mod scalar;
pub mod sparse;

pub use num_rational::BigRational;

/// Arbitrary precision rationals, the default scalar field.
pub type Q = BigRational;

pub use graded::{GradedMap, GradedSpace, Permutation};
pub use scalar::Scalar;

pub type Dgla = dgla::DglaPresentation<Q>;
