//! Weight sequences for the one-variable spaces, the diagonal-bidisk weights
//! in particular, and the combinatorial identities behind them.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::interval::{rational_from_i64, ExactScalar, IntervalScalar};
use crate::scalar::Scalar;

/// A weight parameter that is either an exact rational or a double.
#[derive(Debug, Clone, PartialEq)]
pub enum Param {
    Exact(ExactScalar),
    Approx(f64),
}

impl Param {
    pub fn to_f64(&self) -> f64 {
        match self {
            Param::Exact(q) => crate::scalar::rational_to_f64(q),
            Param::Approx(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&ExactScalar> {
        match self {
            Param::Exact(q) => Some(q),
            Param::Approx(_) => None,
        }
    }
}

/// Evaluable family of weights `w_k` with `w_0 = 1`, `w_k > 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightSequence {
    /// `w_k = C(2k, k) / 4^k`; the weights under which `F((z1+z2)/2)` embeds
    /// isometrically into the Hardy space of the bidisk.
    DiagBidisk,
    /// Bergman-type: `w_k = C(k+1+beta, k)^{-1}`, `beta > -1`.
    Bergman(Param),
    /// Dirichlet-type: `w_k = (k+1)^alpha`.
    Dirichlet(Param),
    /// The unweighted Hardy space.
    ConstantOne,
}

impl WeightSequence {
    pub fn bergman(beta: Param) -> Result<Self> {
        if beta.to_f64() <= -1.0 {
            return Err(Error::InvalidParameter(format!(
                "Bergman parameter must satisfy beta > -1, got {}",
                beta.to_f64()
            )));
        }
        Ok(WeightSequence::Bergman(beta))
    }

    /// Ratio `w_{j+1} / w_j` in double precision; closed form per kind.
    pub fn ratio_f64(&self, j: usize) -> f64 {
        let j = j as f64;
        match self {
            WeightSequence::DiagBidisk => (2.0 * j + 1.0) / (2.0 * j + 2.0),
            WeightSequence::Bergman(beta) => (j + 1.0) / (j + 2.0 + beta.to_f64()),
            WeightSequence::Dirichlet(alpha) => ((j + 2.0) / (j + 1.0)).powf(alpha.to_f64()),
            WeightSequence::ConstantOne => 1.0,
        }
    }

    /// `w_0 .. w_n` in double precision.
    pub fn prefix_f64(&self, n: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(1.0);
        for j in 0..n {
            let last = *out.last().unwrap();
            out.push(last * self.ratio_f64(j));
        }
        out
    }

    /// Exact ratio `w_{j+1} / w_j` when the kind admits one.
    pub fn ratio_exact(&self, j: usize) -> Result<ExactScalar> {
        match self {
            WeightSequence::DiagBidisk => Ok(weight_ratio(j)),
            WeightSequence::ConstantOne => Ok(ExactScalar::one()),
            WeightSequence::Bergman(beta) => {
                let beta = beta.as_exact().ok_or_else(|| {
                    Error::ExactUnavailable("Bergman weight with non-rational beta".into())
                })?;
                let j = BigRational::from_integer(BigInt::from(j));
                let num = &j + BigRational::one();
                let den = &j + rational_from_i64(2, 1) + beta;
                Ok(num / den)
            }
            WeightSequence::Dirichlet(alpha) => {
                let alpha = integer_alpha(alpha)?;
                Ok(integer_power_ratio(j as i64 + 2, j as i64 + 1, alpha))
            }
        }
    }

    /// `w_0 .. w_n` exactly; errors when the parameters are not rational
    /// (or, for Dirichlet, not an integer power).
    pub fn prefix_exact(&self, n: usize) -> Result<Vec<ExactScalar>> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(ExactScalar::one());
        for j in 0..n {
            let next = out.last().unwrap() * self.ratio_exact(j)?;
            out.push(next);
        }
        Ok(out)
    }

    /// `w_0 .. w_n` in the requested scalar; the exact path requires exactly
    /// evaluable parameters.
    pub fn prefix<S: Scalar>(&self, n: usize) -> Result<Vec<S>> {
        if S::EXACT {
            Ok(self.prefix_exact(n)?.iter().map(|q| S::from_rational(q)).collect())
        } else {
            Ok(self.prefix_f64(n).into_iter().map(|x| S::from_rational(&approx(x))).collect())
        }
    }
}

fn approx(x: f64) -> ExactScalar {
    BigRational::from_float(x).unwrap_or_else(ExactScalar::zero)
}

fn integer_alpha(alpha: &Param) -> Result<i64> {
    let q = alpha
        .as_exact()
        .ok_or_else(|| Error::ExactUnavailable("Dirichlet weight with non-rational alpha".into()))?;
    if !q.denom().is_one() {
        return Err(Error::ExactUnavailable(
            "exact Dirichlet weights need an integer alpha".into(),
        ));
    }
    q.numer()
        .to_i64()
        .ok_or_else(|| Error::InvalidParameter("alpha out of range".into()))
}

fn integer_power_ratio(num: i64, den: i64, alpha: i64) -> ExactScalar {
    let base = rational_from_i64(num, den);
    if alpha >= 0 {
        num_traits::pow::pow(base, alpha as usize)
    } else {
        num_traits::pow::pow(base.recip(), (-alpha) as usize)
    }
}

/// `w_k = C(2k, k) / 2^(2k)` exactly.
pub fn diag_weight(k: usize) -> ExactScalar {
    let num = binomial(BigInt::from(2 * k), BigInt::from(k));
    let den = BigInt::one() << (2 * k);
    BigRational::new(num, den)
}

/// `w_{j+1} / w_j = (2j+1) / (2j+2)` for the diagonal-bidisk weights.
pub fn weight_ratio(j: usize) -> ExactScalar {
    rational_from_i64(2 * j as i64 + 1, 2 * j as i64 + 2)
}

/// Bergman weight `1 / C(k+1+beta, k)` via the Gamma-ratio product
/// `prod_{t=1..k} t / (t + 1 + beta)`; exact for rational `beta > -1`.
pub fn bergman_weight_exact(beta: &ExactScalar, k: usize) -> Result<ExactScalar> {
    if *beta <= rational_from_i64(-1, 1) {
        return Err(Error::InvalidParameter("Bergman weight requires beta > -1".into()));
    }
    let mut w = ExactScalar::one();
    for t in 1..=k {
        let t = BigRational::from_integer(BigInt::from(t));
        w = w * &t / (&t + ExactScalar::one() + beta);
    }
    Ok(w)
}

pub fn bergman_weight_f64(beta: f64, k: usize) -> Result<f64> {
    if beta <= -1.0 {
        return Err(Error::InvalidParameter("Bergman weight requires beta > -1".into()));
    }
    let mut w = 1.0;
    for t in 1..=k {
        let t = t as f64;
        w *= t / (t + 1.0 + beta);
    }
    Ok(w)
}

/// Squared norm of the monomial `z1^j z2^k` in the Dirichlet-type space of
/// the bidisk: `(j+1)^alpha (k+1)^alpha`.
pub fn dirichlet_weight_2d(alpha: f64, j: usize, k: usize) -> f64 {
    ((j + 1) as f64).powf(alpha) * ((k + 1) as f64).powf(alpha)
}

pub fn dirichlet_weight_2d_exact(alpha: i64, j: usize, k: usize) -> ExactScalar {
    integer_power_ratio((j + 1) as i64, 1, alpha) * integer_power_ratio((k + 1) as i64, 1, alpha)
}

/// Both sides of the Chu-Vandermonde identity
/// `sum_j C(k,j)^2 = C(2k,k)`, for the caller to assert equal.
pub fn chu_vandermonde(k: usize) -> (ExactScalar, ExactScalar) {
    let mut lhs = BigInt::zero();
    for j in 0..=k {
        let c = binomial(BigInt::from(k), BigInt::from(j));
        lhs += &c * &c;
    }
    let rhs = binomial(BigInt::from(2 * k), BigInt::from(k));
    (BigRational::from_integer(lhs), BigRational::from_integer(rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeVerdict {
    Inside,
    Outside,
}

/// Certified check that `w_k * sqrt(pi k)` lies strictly inside `(7/8, 1)`,
/// with an enclosure of the product.  Errors with `Undecided` when the
/// enclosure is too wide to decide, never reporting a false verdict.
pub fn stirling_envelope_check(k: usize) -> Result<(EnvelopeVerdict, IntervalScalar)> {
    if k == 0 {
        return Err(Error::InvalidParameter("stirling envelope needs k >= 1".into()));
    }
    let w = diag_weight_interval(k);
    let pik = crate::interval::pi_enclosure().scale(&BigRational::from_integer(BigInt::from(k)));
    // Width so that the final enclosure resolves the gap to 1, which shrinks
    // like 1/(8k).
    let width = BigRational::new(BigInt::one(), BigInt::from(k) * BigInt::from(10u64).pow(10));
    let s = pik.sqrt(&width)?;
    let product = w.mul(&s);
    classify_envelope(k, product)
}

fn classify_envelope(
    k: usize,
    product: IntervalScalar,
) -> Result<(EnvelopeVerdict, IntervalScalar)> {
    let lo_bound = rational_from_i64(7, 8);
    let hi_bound = ExactScalar::one();
    if product.lo() > &lo_bound && product.hi() < &hi_bound {
        Ok((EnvelopeVerdict::Inside, product))
    } else if product.hi() <= &lo_bound || product.lo() >= &hi_bound {
        Ok((EnvelopeVerdict::Outside, product))
    } else {
        Err(Error::Undecided(format!(
            "stirling envelope enclosure at k={k} straddles a boundary: {product}"
        )))
    }
}

fn diag_weight_interval(k: usize) -> IntervalScalar {
    let mut w = IntervalScalar::point(ExactScalar::one());
    for t in 0..k {
        w = w.scale(&weight_ratio(t));
    }
    w
}

/// Sweeps `stirling_envelope_check` over `1..=k_max` incrementally, avoiding
/// the square root by comparing `w_k^2 * pi * k` against `(49/64, 1)`.
/// Returns the first k that is not certified inside, if any.
pub fn stirling_sweep(k_max: usize) -> std::result::Result<(), usize> {
    let pi = crate::interval::pi_enclosure();
    let lo_bound = rational_from_i64(49, 64);
    let hi_bound = ExactScalar::one();
    let mut w = IntervalScalar::point(ExactScalar::one());
    for k in 1..=k_max {
        w = w.scale(&weight_ratio(k - 1));
        let p = w.square().mul(pi).scale(&BigRational::from_integer(BigInt::from(k)));
        if !(p.lo() > &lo_bound && p.hi() < &hi_bound) {
            return Err(k);
        }
    }
    Ok(())
}
