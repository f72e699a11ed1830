//! Scalar abstraction over the two arithmetic backends: `f64` for the fast
//! path and `BigRational` for the exact path.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// True when arithmetic in this scalar is exact (no rounding).
    const EXACT: bool;

    fn from_rational(q: &BigRational) -> Self;
    fn from_integer(n: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(q: &BigRational) -> Self {
        rational_to_f64(q)
    }

    fn from_integer(n: i64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn from_integer(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    ToPrimitive::to_f64(q).unwrap_or_else(|| {
        // Falls back to a quotient of component approximations when the
        // direct conversion overflows.
        let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}
