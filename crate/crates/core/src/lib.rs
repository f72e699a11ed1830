//! Optimal polynomial approximants to 1/f in weighted Hardy spaces of the
//! disk and the Hardy/Dirichlet spaces of the bidisk, together with an
//! exact-arithmetic certificate that the degree-1 approximant of the
//! generator (1 - (z1+z2)/sqrt(6))^(-5/2) has a zero inside the bidisk —
//! a counterexample to the Weak Shanks Conjecture.
//!
//! Numeric kernels are generic over [`scalar::Scalar`], instantiated at
//! `f64` for exploration and at arbitrary-precision rationals (with interval
//! enclosures for the radicals) for certification.

pub mod certify;
pub mod error;
pub mod interval;
pub mod jacobi;
pub mod opa1;
pub mod opa2;
pub mod scalar;
pub mod series;
pub mod series2;
pub mod solve;
pub mod weights;
pub mod zerofree;

pub use error::{Error, Result};
pub use interval::{ExactScalar, IntervalScalar};
pub use scalar::Scalar;

/// One-variable series over doubles / exact rationals.
pub type Series1F = series::Series1D<f64>;
pub type Series1Q = series::Series1D<ExactScalar>;
/// Two-variable (bidisk) series over doubles / exact rationals.
pub type Series2F = series2::Series2D<f64>;
pub type Series2Q = series2::Series2D<ExactScalar>;
