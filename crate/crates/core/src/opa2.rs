//! Degree-n optimal polynomial approximants to 1/f over the bidisk, the
//! symmetric degree-1 witness against the Weak Shanks Conjecture, the Taylor
//! polynomial counterexample, and the Dirichlet-parameter scan.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series2::{builtin_shanks_f, MonomialOrdering, Series2D, Space2};
use crate::solve::solve_spd;
use crate::weights::Param;
use crate::zerofree::{certify_zero_free, ZeroFreeVerdict};

/// Approximant `p = sum c_mu z1^i z2^j` over the graded basis, minimizing
/// `||1 - p f||` in the requested space.
#[derive(Debug, Clone)]
pub struct OpaSolution2D<S> {
    pub degree: usize,
    /// Exponent pairs in the enumeration order of `coefficients`.
    pub basis: Vec<(usize, usize)>,
    pub coefficients: Vec<S>,
    pub residual_sq: S,
    pub gram_condition_estimate: f64,
}

impl<S: Scalar> OpaSolution2D<S> {
    pub fn residual_norm(&self) -> f64 {
        self.residual_sq.to_f64().max(0.0).sqrt()
    }
}

/// Normal-equation solve `G c = r` with `G_{mu,nu} = <z^nu f, z^mu f>` and
/// `r_mu = <1, z^mu f>`.  Pairing against the constant picks out the (0,0)
/// coefficient of `z^mu f`, so only the `mu = (0,0)` entry of `r` survives.
///
/// `f` is treated as the polynomial it stores; Gram sums run over its full
/// support, and truncation guard bands are the caller's responsibility.
pub fn opa_2d<S: Scalar>(
    f: &Series2D<S>,
    space: &Space2,
    n: usize,
    ordering: MonomialOrdering,
) -> Result<OpaSolution2D<S>> {
    if f.is_zero() {
        return Err(Error::InvalidParameter("cannot approximate 1/f for f = 0".into()));
    }
    let basis = ordering.basis(n)?;
    let dim = basis.len();
    let big_n = f.truncation_total_degree();

    let mut g = vec![vec![S::zero(); dim]; dim];
    for (m, &(m1, m2)) in basis.iter().enumerate() {
        for (v, &(v1, v2)) in basis.iter().enumerate().take(m + 1) {
            // <z^nu f, z^mu f> = sum_s b_{s-nu} b_{s-mu} w(s), s = nu + t.
            let mut acc = S::zero();
            for (t1, t2, b) in f.iter() {
                let (s1, s2) = (t1 + v1, t2 + v2);
                if s1 < m1 || s2 < m2 {
                    continue;
                }
                let (u1, u2) = (s1 - m1, s2 - m2);
                if u1 + u2 > big_n {
                    continue;
                }
                let w = space.weight::<S>(s1, s2)?;
                acc = acc + b.clone() * f.coeff(u1, u2) * w;
            }
            g[m][v] = acc.clone();
            g[v][m] = acc;
        }
    }
    let mut r = vec![S::zero(); dim];
    r[0] = f.coeff(0, 0);

    let spd = solve_spd(g, &r)?;
    let mut residual_sq = S::one();
    for (c, rv) in spd.solution.iter().zip(&r) {
        residual_sq = residual_sq - c.clone() * rv.clone();
    }
    if !S::EXACT && residual_sq.to_f64() < 0.0 && residual_sq.to_f64() > -1e-12 {
        residual_sq = S::zero();
    }
    Ok(OpaSolution2D {
        degree: n,
        basis,
        coefficients: spd.solution,
        residual_sq,
        gram_condition_estimate: spd.condition_estimate,
    })
}

/// Degree-1 witness data: the approximant `p_1 = a + b (z1 + z2)` of a
/// symmetric generator, with the location of its zero set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShanksWitness {
    pub a: f64,
    pub b: f64,
    /// Zero of `p_1` on the diagonal `z1 = z2`: `-a / (2b)`.
    pub diagonal_zero: f64,
    /// `2|b| - |a|`; positive exactly when the zero line meets the open bidisk.
    pub margin: f64,
    /// sup-norm distance from the origin to the zero line `z1 + z2 = -a/b`.
    pub dist_linf: f64,
    /// Euclidean distance from the origin to the zero line.
    pub dist_l2: f64,
}

impl ShanksWitness {
    /// Nearest point of the zero line in the sup norm: on the diagonal.
    pub fn nearest_linf(&self) -> (f64, f64) {
        (self.diagonal_zero, self.diagonal_zero)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WitnessResult {
    Witness(ShanksWitness),
    /// The degree-1 approximant is constant (b = 0): no zero to report.
    NoZero,
}

impl WitnessResult {
    pub fn margin(&self) -> Option<f64> {
        match self {
            WitnessResult::Witness(w) => Some(w.margin),
            WitnessResult::NoZero => None,
        }
    }
}

const ASYMMETRY_TOLERANCE: f64 = 1e-6;

/// Runs the degree-1 solve and packages the symmetric form
/// `p_1 = a + b (z1 + z2)`; the two linear coefficients must agree to the
/// asymmetry tolerance, which a sufficient truncation of a symmetric
/// generator guarantees.
pub fn shanks_witness(f: &Series2D<f64>, space: &Space2) -> Result<WitnessResult> {
    let sol = opa_2d(f, space, 1, MonomialOrdering::Graded)?;
    let (alpha, beta, gamma) = (sol.coefficients[0], sol.coefficients[1], sol.coefficients[2]);
    let scale = alpha.abs().max(beta.abs()).max(1.0);
    let observed = (beta - gamma).abs();
    if observed > ASYMMETRY_TOLERANCE * scale {
        return Err(Error::Asymmetry { observed, tolerance: ASYMMETRY_TOLERANCE });
    }
    let a = alpha;
    let b = 0.5 * (beta + gamma);
    if b.abs() <= 1e-12 * scale {
        return Ok(WitnessResult::NoZero);
    }
    Ok(WitnessResult::Witness(ShanksWitness {
        a,
        b,
        diagonal_zero: -a / (2.0 * b),
        margin: 2.0 * b.abs() - a.abs(),
        dist_linf: a.abs() / (2.0 * b.abs()),
        dist_l2: a.abs() / (2.0f64.sqrt() * b.abs()),
    }))
}

/// Builds the total-degree-`n_taylor` Taylor polynomial of the builtin
/// generator, computes its witness, and certifies that the polynomial itself
/// has no zeros on the closed bidisk.
///
/// The polynomial's Gram data is exact in its own coefficients, so
/// `n_trunc` only bounds the construction degree; it must leave the usual
/// guard band above `n_taylor`.
pub fn taylor_counterexample(
    n_taylor: usize,
    n_trunc: usize,
) -> Result<(WitnessResult, ZeroFreeVerdict)> {
    if n_trunc < n_taylor {
        return Err(Error::InvalidParameter(
            "truncation degree must be at least the Taylor degree".into(),
        ));
    }
    let full = builtin_shanks_f(n_trunc);
    let rows: Vec<Vec<f64>> =
        (0..=n_taylor).map(|d| (0..=d).map(|i| full.coeff(i, d - i)).collect()).collect();
    let f_n = Series2D::new(rows).into_symmetric()?;
    let witness = shanks_witness(&f_n, &Space2::H2D2)?;
    let verdict = certify_zero_free(&f_n)?;
    Ok((witness, verdict))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaScanRow {
    pub alpha: f64,
    pub a: f64,
    pub b: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlphaScan {
    pub rows: Vec<AlphaScanRow>,
    /// Consecutive grid values bracketing the first sign change of the
    /// margin, when one occurs.
    pub first_sign_change: Option<(f64, f64)>,
}

/// Evaluates the witness of the builtin generator in `D_alpha` over an even
/// grid of `steps` parameter values.  Grid rows are independent; they are
/// reported in increasing-parameter order.
pub fn scan_dirichlet_alpha(
    alpha_from: f64,
    alpha_to: f64,
    steps: usize,
    n_trunc: usize,
) -> Result<AlphaScan> {
    if steps == 0 {
        return Err(Error::InvalidParameter("scan needs at least one step".into()));
    }
    if steps == 1 {
        if alpha_from != alpha_to {
            return Err(Error::InvalidParameter("a single-step scan needs from = to".into()));
        }
    } else if !(alpha_from < alpha_to) {
        return Err(Error::InvalidParameter("scan range must be increasing".into()));
    }
    let f = builtin_shanks_f(n_trunc);
    let mut rows = Vec::with_capacity(steps);
    for s in 0..steps {
        let alpha = if steps == 1 {
            alpha_from
        } else {
            alpha_from + (alpha_to - alpha_from) * s as f64 / (steps - 1) as f64
        };
        let space = Space2::Dirichlet(Param::Approx(alpha));
        let row = match shanks_witness(&f, &space)? {
            WitnessResult::Witness(w) => {
                AlphaScanRow { alpha, a: w.a, b: w.b, margin: w.margin }
            }
            WitnessResult::NoZero => AlphaScanRow { alpha, a: 0.0, b: 0.0, margin: 0.0 },
        };
        rows.push(row);
    }
    let first_sign_change = rows
        .windows(2)
        .find(|w| (w[0].margin > 0.0) != (w[1].margin > 0.0))
        .map(|w| (w[0].alpha, w[1].alpha));
    Ok(AlphaScan { rows, first_sign_change })
}

/// `1 - p f` recomputed coefficient-wise; used by the projection-identity
/// checks.
pub fn residual_series<S: Scalar>(
    f: &Series2D<S>,
    sol: &OpaSolution2D<S>,
) -> Series2D<S> {
    let n = f.truncation_total_degree() + sol.degree;
    let mut rows: Vec<Vec<S>> = (0..=n).map(|d| vec![S::zero(); d + 1]).collect();
    rows[0][0] = S::one();
    for (c, &(m1, m2)) in sol.coefficients.iter().zip(&sol.basis) {
        for (i, j, b) in f.iter() {
            let v = c.clone() * b.clone();
            let (s1, s2) = (i + m1, j + m2);
            rows[s1 + s2][s1] = rows[s1 + s2][s1].clone() - v;
        }
    }
    Series2D::new(rows)
}
