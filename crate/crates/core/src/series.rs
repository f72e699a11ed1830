//! Truncated one-variable power series and weighted inner products.

use std::io::BufRead;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::interval::{parse_rational, rational_from_i64, ExactScalar};
use crate::scalar::Scalar;
use crate::weights::WeightSequence;

/// Geometric bound on the squared coefficient ratio:
/// `|a_{j+1}|^2 / |a_j|^2 <= sq_ratio` for every `j >= from`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffDecay {
    pub sq_ratio: f64,
    pub from: usize,
}

/// Coefficients `a_0 .. a_N` of a power series truncated at degree `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series1D<S> {
    coeffs: Vec<S>,
    decay: Option<CoeffDecay>,
}

impl<S: Scalar> Series1D<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant coefficient");
        Self { coeffs, decay: None }
    }

    pub fn with_decay(coeffs: Vec<S>, decay: CoeffDecay) -> Self {
        let s = Self { coeffs, decay: Some(decay) };
        s.check_decay();
        s
    }

    fn check_decay(&self) {
        let Some(d) = self.decay else { return };
        for j in d.from..self.truncation_degree() {
            let a = self.coeffs[j].to_f64();
            let b = self.coeffs[j + 1].to_f64();
            assert!(
                b * b <= d.sq_ratio * a * a * (1.0 + 1e-12),
                "decay bound violated at index {j}"
            );
        }
    }

    pub fn one() -> Self {
        Self::new(vec![S::one()])
    }

    pub fn truncation_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn decay(&self) -> Option<CoeffDecay> {
        self.decay
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Multiplication by `z^k` (coefficients shifted up; decay dropped).
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs, decay: None }
    }

    pub fn map_to_f64(&self) -> Series1D<f64> {
        Series1D { coeffs: self.coeffs.iter().map(|c| c.to_f64()).collect(), decay: self.decay }
    }
}

/// Maclaurin coefficients of the extremal-type generator
/// `f_beta(z) = (1 - z/c)^(-d)` with `c = sqrt(beta+2)`, `d = beta+3`.
/// All coefficients are positive; for `beta = -1/2` they satisfy
/// `a_j = prod_{t=1..j} sqrt(2/3) (1 + 3/(2t))`.
pub fn coeffs_extremal(beta: f64, n: usize) -> Result<Series1D<f64>> {
    if beta <= -1.0 {
        return Err(Error::InvalidParameter("extremal generator requires beta > -1".into()));
    }
    let c = (beta + 2.0).sqrt();
    let d = beta + 3.0;
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(1.0);
    for t in 1..=n {
        let t = t as f64;
        let prev = *coeffs.last().unwrap();
        coeffs.push(prev * (1.0 + (d - 1.0) / t) / c);
    }
    // Per-step squared ratio r(t) = ((1 + (d-1)/t) / c)^2 is decreasing, so
    // once it drops below 1 it stays a valid geometric bound.
    let step = |t: f64| ((1.0 + (d - 1.0) / t) / c).powi(2);
    let mut decay = None;
    for j in 0..n {
        let r = step((j + 1) as f64);
        if r < 0.999 {
            decay = Some(CoeffDecay { sq_ratio: r, from: j });
            break;
        }
    }
    Ok(match decay {
        Some(d) => Series1D::with_decay(coeffs, d),
        None => Series1D::new(coeffs),
    })
}

/// Exact value of `a_j^2` for the `beta = -1/2` generator:
/// `(2/3)^j * prod_{t=1..j} (1 + 3/(2t))^2`, a rational number.
pub fn extremal_coeff_sq_exact(j: usize) -> ExactScalar {
    let mut prod = ExactScalar::one();
    for t in 1..=j {
        let f = ExactScalar::one() + rational_from_i64(3, 2 * t as i64);
        prod = prod * &f * &f;
    }
    let base = num_traits::pow::pow(rational_from_i64(2, 3), j);
    base * prod
}

/// A weighted inner product value together with an optional certified radius
/// for the truncation tail (fast path only).
#[derive(Debug, Clone, PartialEq)]
pub struct InnerProduct1D<S> {
    pub value: S,
    /// `Some(t)` when both operands carry decay metadata: the discarded tail
    /// of the full inner product lies within `[-t, t]`.
    pub tail_radius: Option<f64>,
}

/// `sum_k a_k b_k w_k` over the common truncation.
pub fn inner_product_1d<S: Scalar>(
    f: &Series1D<S>,
    g: &Series1D<S>,
    weights: &WeightSequence,
) -> Result<InnerProduct1D<S>> {
    let n = f.truncation_degree().min(g.truncation_degree());
    let w = weights.prefix::<S>(n)?;
    let mut value = S::zero();
    for k in 0..=n {
        value = value + f.coeff(k) * g.coeff(k) * w[k].clone();
    }
    let tail_radius = match (f.decay(), g.decay()) {
        (Some(df), Some(dg)) => tail_radius(f, g, weights, n, df, dg),
        _ => None,
    };
    Ok(InnerProduct1D { value, tail_radius })
}

fn tail_radius<S: Scalar>(
    f: &Series1D<S>,
    g: &Series1D<S>,
    weights: &WeightSequence,
    n: usize,
    df: CoeffDecay,
    dg: CoeffDecay,
) -> Option<f64> {
    if df.from > n || dg.from > n {
        return None;
    }
    // Per-term ratio of |a_k b_k w_k| beyond the truncation.  The weight
    // ratio of every builtin kind is monotone toward 1, so it is bounded
    // over k >= n by max(ratio(n), 1).
    let wr = weights.ratio_f64(n).max(1.0) * (df.sq_ratio * dg.sq_ratio).sqrt();
    if wr >= 1.0 {
        return None;
    }
    let wn = weights.prefix_f64(n);
    let last = (f.coeff(n).to_f64() * g.coeff(n).to_f64() * wn[n]).abs();
    Some(last * wr / (1.0 - wr))
}

/// Parses a one-variable coefficient file: one `index value` pair per line,
/// `value` a decimal or exact `p/q`.  Blank lines and `#` comments allowed.
pub fn parse_series_1d(reader: impl BufRead) -> Result<Series1D<ExactScalar>> {
    let mut entries: Vec<(usize, ExactScalar)> = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let err = |message: &str| Error::Parse { line: lineno + 1, message: message.into() };
        let idx: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err("expected a non-negative index"))?;
        let value = parts
            .next()
            .and_then(parse_rational)
            .ok_or_else(|| err("expected a decimal or p/q value"))?;
        if parts.next().is_some() {
            return Err(err("trailing tokens"));
        }
        entries.push((idx, value));
    }
    if entries.is_empty() {
        return Err(Error::Parse { line: 0, message: "empty coefficient file".into() });
    }
    let n = entries.iter().map(|(i, _)| *i).max().unwrap();
    let mut coeffs = vec![ExactScalar::from_integer(BigInt::from(0)); n + 1];
    for (i, v) in entries {
        coeffs[i] = v;
    }
    Ok(Series1D::new(coeffs))
}
