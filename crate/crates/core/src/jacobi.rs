//! Truncated Jacobi-matrix spectral bounds via Sturm-sequence bisection,
//! plus the decreasing-weight witness search.

use crate::error::{Error, Result};
use crate::weights::WeightSequence;

/// Symmetric tridiagonal view with zero diagonal and off-diagonal entries
/// `e_j = sqrt(w_j / w_{j+1})`.
#[derive(Debug, Clone)]
pub struct JacobiMatrixView {
    pub weights: WeightSequence,
    pub size: usize,
}

impl JacobiMatrixView {
    pub fn new(weights: WeightSequence, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidParameter("Jacobi truncation needs size >= 1".into()));
        }
        Ok(Self { weights, size })
    }

    pub fn off_diagonal(&self) -> Vec<f64> {
        (0..self.size.saturating_sub(1))
            .map(|j| (1.0 / self.weights.ratio_f64(j)).sqrt())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiNormBounds {
    /// Largest eigenvalue in magnitude of the m x m truncation (a lower
    /// bound for the operator norm), to 1e-10.
    pub lower: f64,
    /// Row-sum bound for the full infinite matrix; `f64::INFINITY` when the
    /// entries do not stay bounded.
    pub upper: f64,
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`,
/// counted by the Sturm sequence of leading-minor pivots.
fn sturm_count_below(off: &[f64], m: usize, x: f64) -> usize {
    let mut count = 0usize;
    let mut d = -x;
    if d < 0.0 {
        count += 1;
    }
    for j in 1..m {
        let e = off[j - 1];
        let mut denom = d;
        if denom == 0.0 {
            denom = 1e-300;
        }
        d = -x - e * e / denom;
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

pub fn jacobi_truncated_norm(weights: &WeightSequence, m: usize) -> Result<JacobiNormBounds> {
    let view = JacobiMatrixView::new(weights.clone(), m)?;
    let off = view.off_diagonal();

    // The spectrum of a zero-diagonal tridiagonal matrix is symmetric, so
    // the norm of the truncation is its largest eigenvalue.
    let mut hi = 2.0 * off.iter().cloned().fold(0.0f64, f64::max) + 1.0;
    let mut lo = 0.0f64;
    if m == 1 {
        hi = 0.0;
    }
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if sturm_count_below(&off, m, mid) == m {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let lower = 0.5 * (lo + hi);

    // Row-sum bound for the infinite matrix.  The entry sequence of every
    // builtin kind converges to 1 monotonically, so the supremum over rows
    // is attained among the first few rows or in the limit (row sum 2).
    let probe = (2 * m).max(2048);
    let entries: Vec<f64> = (0..probe).map(|j| (1.0 / weights.ratio_f64(j)).sqrt()).collect();
    let mut sup: f64 = entries[0];
    for j in 1..probe {
        sup = sup.max(entries[j - 1] + entries[j]);
    }
    let upper = if entries.iter().all(|e| e.is_finite()) { sup.max(2.0) } else { f64::INFINITY };

    Ok(JacobiNormBounds { lower, upper })
}

/// Searches `n, k <= bound` (lexicographically) for the decreasing-weight
/// condition `w_{k+n+1} < w_{k+1} / 4`, which forces the truncated norm
/// above 2 and the extremal problem to have a solution.
pub fn theorem3_witness(weights: &WeightSequence, bound: usize) -> Option<(usize, usize)> {
    let w = weights.prefix_f64(2 * bound + 2);
    for n in 0..=bound {
        for k in 0..=bound {
            if w[k + n + 1] < w[k + 1] / 4.0 {
                return Some((n, k));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::Param;

    #[test]
    fn free_jacobi_eigenvalues() {
        // Constant weights: eigenvalues are 2 cos(k pi / (m+1)).
        let b = jacobi_truncated_norm(&WeightSequence::ConstantOne, 100).unwrap();
        let expected = 2.0 * (std::f64::consts::PI / 101.0).cos();
        assert!((b.lower - expected).abs() < 1e-8, "lower = {}", b.lower);
        assert!(b.lower < 2.0);
        assert_eq!(b.upper, 2.0);
        for m in [1usize, 2, 7, 33] {
            let b = jacobi_truncated_norm(&WeightSequence::ConstantOne, m).unwrap();
            let expected = if m == 1 { 0.0 } else { 2.0 * (std::f64::consts::PI / (m as f64 + 1.0)).cos() };
            assert!((b.lower - expected).abs() < 1e-8, "m={m}");
            assert_eq!(b.upper, 2.0);
        }
    }

    #[test]
    fn diag_norm_exceeds_two() {
        let b = jacobi_truncated_norm(&WeightSequence::DiagBidisk, 500).unwrap();
        assert!(b.lower > 2.04, "lower = {}", b.lower);
        assert!(b.upper >= b.lower);
        assert!(b.upper.is_finite());
    }

    #[test]
    fn witness_search() {
        assert!(theorem3_witness(&WeightSequence::DiagBidisk, 100).is_some());
        assert_eq!(theorem3_witness(&WeightSequence::ConstantOne, 100), None);
        let bergman0 = WeightSequence::Bergman(Param::Approx(0.0));
        assert!(theorem3_witness(&bergman0, 100).is_some());
    }

    #[test]
    fn size_zero_rejected() {
        assert!(jacobi_truncated_norm(&WeightSequence::ConstantOne, 0).is_err());
    }
}
