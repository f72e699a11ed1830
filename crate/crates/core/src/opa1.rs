//! Optimal polynomial approximants to 1/f in one-variable weighted Hardy
//! spaces: the normal-equation solve, the degree-1 zero formula, and the
//! extremal ratio.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::Series1D;
use crate::solve::solve_spd;
use crate::weights::WeightSequence;

/// Degree-n approximant `p = sum_k c_k z^k` minimizing `||1 - p f||_w`,
/// together with solver diagnostics.
#[derive(Debug, Clone)]
pub struct OpaSolution1D<S> {
    pub degree: usize,
    pub coefficients: Vec<S>,
    pub residual_sq: S,
    pub gram_condition_estimate: f64,
}

impl<S: Scalar> OpaSolution1D<S> {
    pub fn residual_norm(&self) -> f64 {
        self.residual_sq.to_f64().max(0.0).sqrt()
    }
}

/// Solves the `(n+1) x (n+1)` normal equations `G c = r` with
/// `G_{jk} = <z^k f, z^j f>_w` and `r_j = <1, z^j f>_w`.
///
/// The operand is treated as the polynomial it stores, so the Gram sums run
/// over the full product support; callers wanting the approximant of an
/// infinite series are responsible for a truncation guard band.
pub fn opa_1d<S: Scalar>(
    f: &Series1D<S>,
    weights: &WeightSequence,
    n: usize,
) -> Result<OpaSolution1D<S>> {
    if f.is_zero() {
        return Err(Error::InvalidParameter("cannot approximate 1/f for f = 0".into()));
    }
    let big_n = f.truncation_degree();
    let w = weights.prefix::<S>(big_n + n)?;

    let mut g = vec![vec![S::zero(); n + 1]; n + 1];
    for j in 0..=n {
        for k in 0..=j {
            // <z^k f, z^j f> = sum_t a_{t-k} a_{t-j} w_t
            let mut s = S::zero();
            for t in j..=(big_n + k) {
                s = s + f.coeff(t - k) * f.coeff(t - j) * w[t].clone();
            }
            g[j][k] = s.clone();
            g[k][j] = s;
        }
    }
    // <1, z^j f> picks out the constant coefficient of z^j f, so only the
    // j = 0 entry is nonzero (w_0 = 1).
    let mut r = vec![S::zero(); n + 1];
    r[0] = f.coeff(0);

    let spd = solve_spd(g, &r)?;
    let mut residual_sq = S::one();
    for (c, rv) in spd.solution.iter().zip(&r) {
        residual_sq = residual_sq - c.clone() * rv.clone();
    }
    if !S::EXACT && residual_sq.to_f64() < 0.0 && residual_sq.to_f64() > -1e-12 {
        residual_sq = S::zero();
    }
    Ok(OpaSolution1D {
        degree: n,
        coefficients: spd.solution,
        residual_sq,
        gram_condition_estimate: spd.condition_estimate,
    })
}

/// The zero `zeta = ||z f||_w^2 / <f, z f>_w` of the degree-1 approximant;
/// `None` when `<f, z f>_w = 0` (the approximant is constant).
pub fn opa1_zero<S: Scalar>(f: &Series1D<S>, weights: &WeightSequence) -> Result<Option<S>> {
    let (num, den) = z_shift_moments(f, weights)?;
    if den.is_zero() {
        return Ok(None);
    }
    Ok(Some(num / den))
}

/// `|<f, z f>_w| / ||z f||_w^2`, the quantity whose supremum over f is half
/// the norm of the Jacobi matrix; equals `1/|zeta|` when the zero exists.
pub fn extremal_ratio<S: Scalar>(f: &Series1D<S>, weights: &WeightSequence) -> Result<S> {
    let (num, den) = z_shift_moments(f, weights)?;
    if num.is_zero() {
        return Err(Error::InvalidParameter("extremal ratio requires z f != 0".into()));
    }
    Ok(den.abs() / num)
}

/// Returns `(||z f||^2, <f, z f>)`.
fn z_shift_moments<S: Scalar>(f: &Series1D<S>, weights: &WeightSequence) -> Result<(S, S)> {
    if f.is_zero() {
        return Err(Error::InvalidParameter("zero series".into()));
    }
    let n = f.truncation_degree();
    let w = weights.prefix::<S>(n + 1)?;
    let mut norm_sq = S::zero();
    let mut cross = S::zero();
    for k in 0..=n {
        let a = f.coeff(k);
        norm_sq = norm_sq + a.clone() * a.clone() * w[k + 1].clone();
        if k + 1 <= n {
            cross = cross + a * f.coeff(k + 1) * w[k + 1].clone();
        }
    }
    Ok((norm_sq, cross))
}
