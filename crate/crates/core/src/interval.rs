//! Closed intervals with exact rational endpoints and outward rounding.
//!
//! Every operation returns an interval containing the exact image of its
//! operands.  To keep denominators from blowing up along long products, the
//! endpoints are rounded outward onto the grid of fractions with denominator
//! `2^256` whenever they get finer than that; the grid is far below any
//! tolerance used by the certification pipeline.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (maintained by `num_rational`).
pub type ExactScalar = BigRational;

pub fn rational_from_i64(n: i64, d: i64) -> ExactScalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Serializes as the exact string `p/q` (or just `p` for integers).
pub fn format_rational(q: &ExactScalar) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p/q`, an integer, or a plain decimal such as `-1.25` (all exact).
pub fn parse_rational(s: &str) -> Option<ExactScalar> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.trim_start().starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        let frac_num: BigInt = frac.parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = BigRational::new(frac_num, scale);
        let whole = BigRational::from_integer(int);
        return Some(if negative { whole - frac_part } else { whole + frac_part });
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(n))
}

fn denominator_cap() -> &'static BigInt {
    static CAP: OnceLock<BigInt> = OnceLock::new();
    CAP.get_or_init(|| BigInt::one() << 256)
}

/// Largest grid rational `<= x` with denominator `2^256` (identity when the
/// denominator is already within the cap).
pub fn round_down(x: &ExactScalar) -> ExactScalar {
    let cap = denominator_cap();
    if x.denom() <= cap {
        return x.clone();
    }
    let scaled = (x * BigRational::from_integer(cap.clone())).floor();
    scaled / BigRational::from_integer(cap.clone())
}

pub fn round_up(x: &ExactScalar) -> ExactScalar {
    let cap = denominator_cap();
    if x.denom() <= cap {
        return x.clone();
    }
    let scaled = (x * BigRational::from_integer(cap.clone())).ceil();
    scaled / BigRational::from_integer(cap.clone())
}

/// A closed interval `[lo, hi]` with rational endpoints, `lo <= hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalScalar {
    lo: ExactScalar,
    hi: ExactScalar,
}

impl IntervalScalar {
    pub fn new(lo: ExactScalar, hi: ExactScalar) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidParameter(format!(
                "interval endpoints out of order: [{}, {}]",
                format_rational(&lo),
                format_rational(&hi)
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: ExactScalar) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn from_i64(n: i64, d: i64) -> Self {
        Self::point(rational_from_i64(n, d))
    }

    pub fn lo(&self) -> &ExactScalar {
        &self.lo
    }

    pub fn hi(&self) -> &ExactScalar {
        &self.hi
    }

    pub fn width(&self) -> ExactScalar {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &ExactScalar) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn mid_f64(&self) -> f64 {
        crate::scalar::rational_to_f64(&((&self.lo + &self.hi) / rational_from_i64(2, 1)))
    }

    fn rounded(lo: ExactScalar, hi: ExactScalar) -> Self {
        Self { lo: round_down(&lo), hi: round_up(&hi) }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::rounded(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::rounded(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }

    pub fn neg(&self) -> Self {
        Self { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let candidates = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let mut lo = candidates[0].clone();
        let mut hi = candidates[0].clone();
        for c in &candidates[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        Self::rounded(lo, hi)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.lo <= ExactScalar::zero() && rhs.hi >= ExactScalar::zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = Self { lo: rhs.hi.recip(), hi: rhs.lo.recip() };
        Ok(self.mul(&inv))
    }

    pub fn scale(&self, q: &ExactScalar) -> Self {
        self.mul(&Self::point(q.clone()))
    }

    /// Interval square; tighter than `mul(self, self)` around zero.
    pub fn square(&self) -> Self {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        let (mut lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if self.lo.is_negative() && self.hi.is_positive() {
            lo = ExactScalar::zero();
        }
        Self::rounded(lo, hi)
    }

    /// Enclosure of the square roots of every value in `self`; requires a
    /// positive interval.
    pub fn sqrt(&self, width: &ExactScalar) -> Result<Self> {
        if self.lo <= ExactScalar::zero() {
            return Err(Error::InvalidParameter(
                "sqrt enclosure requires a strictly positive interval".into(),
            ));
        }
        let half = width / rational_from_i64(2, 1);
        let upper = sqrt_upper_bound(&self.hi, &half);
        // q / x <= sqrt(q) whenever x >= sqrt(q).
        let lo_upper = sqrt_upper_bound(&self.lo, &half);
        let lower = round_down(&(&self.lo / &lo_upper));
        IntervalScalar::new(lower, upper)
    }
}

impl fmt::Display for IntervalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_rational(&self.lo), format_rational(&self.hi))
    }
}

/// A rational `x >= sqrt(q)` with `x - sqrt(q) <= slack`, by Newton iteration
/// with upward rounding.  Any positive start lands above the root after one
/// step (AM-GM), so the f64 seed needs no validation.
fn sqrt_upper_bound(q: &ExactScalar, slack: &ExactScalar) -> ExactScalar {
    debug_assert!(q.is_positive());
    let seed = crate::scalar::rational_to_f64(q).sqrt();
    let mut x = BigRational::from_float(seed)
        .filter(|s| s.is_positive())
        .unwrap_or_else(|| (q + BigRational::one()) / rational_from_i64(2, 1));
    let two = rational_from_i64(2, 1);
    for _ in 0..300 {
        x = round_up(&((&x + q / &x) / &two));
        // x >= sqrt(q) here, so q/x is a lower bound for the root.
        let lo = q / &x;
        if &x - lo <= *slack {
            return x;
        }
    }
    x
}

/// Two-sided enclosure of `sqrt(q)`: `lo^2 <= q <= hi^2` and `hi - lo <= width`.
pub fn radical_enclosure(q: &ExactScalar, width: &ExactScalar) -> Result<IntervalScalar> {
    if !q.is_positive() {
        return Err(Error::InvalidParameter("radical_enclosure requires q > 0".into()));
    }
    if !width.is_positive() {
        return Err(Error::InvalidParameter("radical_enclosure requires width > 0".into()));
    }
    let hi = sqrt_upper_bound(q, &(width / rational_from_i64(2, 1)));
    let lo = round_down(&(q / &hi));
    IntervalScalar::new(lo, hi)
}

// 50 decimal digits of pi, two-sided.  Validated against a Machin-type
// arctangent computation in the test suite.
const PI_DIGITS_LO: &str = "314159265358979323846264338327950288419716939937510";
const PI_DIGITS_HI: &str = "314159265358979323846264338327950288419716939937511";

/// Hard-coded rational enclosure of pi of width `10^-50`.
pub fn pi_enclosure() -> &'static IntervalScalar {
    static PI: OnceLock<IntervalScalar> = OnceLock::new();
    PI.get_or_init(|| {
        let scale = BigInt::from(10u32).pow(50);
        let lo = BigRational::new(PI_DIGITS_LO.parse().unwrap(), scale.clone());
        let hi = BigRational::new(PI_DIGITS_HI.parse().unwrap(), scale);
        IntervalScalar::new(lo, hi).unwrap()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        let q = parse_rational("-7/12").unwrap();
        assert_eq!(format_rational(&q), "-7/12");
        assert_eq!(parse_rational("1.25").unwrap(), rational_from_i64(5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), rational_from_i64(-1, 2));
        assert_eq!(parse_rational("3").unwrap(), rational_from_i64(3, 1));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("abc").is_none());
    }

    #[test]
    fn interval_order_enforced() {
        assert!(IntervalScalar::new(rational_from_i64(1, 1), rational_from_i64(0, 1)).is_err());
    }

    #[test]
    fn radical_enclosure_examples() {
        // sqrt(3/2) within [1.224, 1.225]
        let w = rational_from_i64(1, 1000);
        let r = radical_enclosure(&rational_from_i64(3, 2), &w).unwrap();
        assert!(r.lo() >= &rational_from_i64(1224, 1000));
        assert!(r.hi() <= &rational_from_i64(1225, 1000));
        // sqrt(2/3) within [0.816, 0.817]
        let r = radical_enclosure(&rational_from_i64(2, 3), &w).unwrap();
        assert!(r.lo() >= &rational_from_i64(816, 1000));
        assert!(r.hi() <= &rational_from_i64(817, 1000));
        // perfect square at tight width
        let w = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(9));
        let r = radical_enclosure(&rational_from_i64(4, 1), &w).unwrap();
        assert!(r.contains(&rational_from_i64(2, 1)));
        assert!(r.width() <= w);
    }

    #[test]
    fn sqrt_postcondition_many_widths() {
        let q = rational_from_i64(7, 3);
        for exp in [3u32, 10, 30, 40] {
            let w = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(exp));
            let r = radical_enclosure(&q, &w).unwrap();
            assert!(&(r.lo() * r.lo()) <= &q);
            assert!(&(r.hi() * r.hi()) >= &q);
            assert!(r.width() <= w);
        }
    }

    #[test]
    fn pi_enclosure_sane() {
        let pi = pi_enclosure();
        assert!(pi.lo() > &parse_rational("3.14159265358979323846").unwrap());
        assert!(pi.hi() < &parse_rational("3.14159265358979323847").unwrap());
        assert_eq!(pi.width(), BigRational::new(BigInt::one(), BigInt::from(10u32).pow(50)));
    }

    /// Bracketing partial sums of the alternating arctangent series.
    fn atan_bounds(x: &ExactScalar, terms: usize) -> (ExactScalar, ExactScalar) {
        let x2 = x * x;
        let mut term = x.clone();
        let mut sum = ExactScalar::zero();
        let mut lo = ExactScalar::zero();
        let mut hi = ExactScalar::zero();
        for k in 0..terms {
            let part = &term / rational_from_i64(2 * k as i64 + 1, 1);
            sum += if k % 2 == 0 { part } else { -part };
            if k % 2 == 0 {
                hi = sum.clone();
            } else {
                lo = sum.clone();
            }
            term = term * &x2;
        }
        (lo, hi)
    }

    #[test]
    fn pi_enclosure_vs_machin() {
        // pi = 16 atan(1/5) - 4 atan(1/239), with two-sided series bounds.
        let (a5_lo, a5_hi) = atan_bounds(&rational_from_i64(1, 5), 40);
        let (a239_lo, a239_hi) = atan_bounds(&rational_from_i64(1, 239), 40);
        let sixteen = rational_from_i64(16, 1);
        let four = rational_from_i64(4, 1);
        let lo = &sixteen * a5_lo - &four * a239_hi;
        let hi = &sixteen * a5_hi - &four * a239_lo;
        // The Machin bracket at 40 terms is far tighter than 10^-50 and
        // contains pi, so lying inside the hard-coded enclosure proves the
        // digits correct from both sides.
        let pi = pi_enclosure();
        assert!(pi.lo() <= &lo && &hi <= pi.hi());
        assert!(hi - lo < BigRational::new(BigInt::one(), BigInt::from(10u32).pow(52)));
    }

    #[test]
    fn outward_rounding_is_outward() {
        let tiny = BigRational::new(BigInt::one(), BigInt::one() << 300);
        let x = rational_from_i64(1, 3) + &tiny;
        assert!(round_down(&x) <= x);
        assert!(round_up(&x) >= x);
        assert!(round_up(&x) - round_down(&x) > BigRational::zero());
    }
}
