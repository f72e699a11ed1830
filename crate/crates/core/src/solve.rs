//! Square-root-free LDL^T solve for the small symmetric positive definite
//! Gram systems produced by the approximant solvers.  Works over both
//! scalar backends; on the exact path the positive-pivot check is a proof of
//! positive definiteness of all leading principal minors.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub struct SpdSolution<S> {
    pub solution: Vec<S>,
    /// Ratio of the largest to smallest LDL^T pivot; a cheap conditioning
    /// estimate, not a rigorous condition number.
    pub condition_estimate: f64,
}

pub fn solve_spd<S: Scalar>(mut g: Vec<Vec<S>>, rhs: &[S]) -> Result<SpdSolution<S>> {
    let n = rhs.len();
    assert!(g.len() == n && g.iter().all(|row| row.len() == n));

    // In-place LDL^T: strict lower triangle of g becomes L, diagonal becomes D.
    let mut pivots_f64 = Vec::with_capacity(n);
    for j in 0..n {
        for k in 0..j {
            let l_jk = g[j][k].clone();
            let d_k = g[k][k].clone();
            for i in j..n {
                let l_ik = g[i][k].clone();
                g[i][j] = g[i][j].clone() - l_ik * d_k.clone() * l_jk.clone();
            }
        }
        let d_j = g[j][j].clone();
        if d_j <= S::zero() || (!S::EXACT && !d_j.to_f64().is_finite()) {
            return Err(Error::SingularGram { index: j, pivot: d_j.to_f64() });
        }
        pivots_f64.push(d_j.to_f64());
        for i in (j + 1)..n {
            g[i][j] = g[i][j].clone() / d_j.clone();
        }
    }

    // Forward substitution L y = rhs, then y_i /= d_i, then L^T x = y.
    let mut x: Vec<S> = rhs.to_vec();
    for i in 0..n {
        for k in 0..i {
            let t = g[i][k].clone() * x[k].clone();
            x[i] = x[i].clone() - t;
        }
    }
    for i in 0..n {
        x[i] = x[i].clone() / g[i][i].clone();
    }
    for i in (0..n).rev() {
        for k in (i + 1)..n {
            let t = g[k][i].clone() * x[k].clone();
            x[i] = x[i].clone() - t;
        }
    }

    let max_p = pivots_f64.iter().cloned().fold(f64::MIN, f64::max);
    let min_p = pivots_f64.iter().cloned().fold(f64::MAX, f64::min);
    Ok(SpdSolution { solution: x, condition_estimate: max_p / min_p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rational_from_i64;
    use num_rational::BigRational;

    #[test]
    fn solves_known_system() {
        // [[2,-1],[-1,2]] x = [1,0]  =>  x = (2/3, 1/3)
        let g = vec![vec![2.0, -1.0], vec![-1.0, 2.0]];
        let s = solve_spd(g, &[1.0, 0.0]).unwrap();
        assert!((s.solution[0] - 2.0 / 3.0).abs() < 1e-14);
        assert!((s.solution[1] - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn exact_solve_is_exact() {
        let g = vec![
            vec![rational_from_i64(2, 1), rational_from_i64(-1, 1)],
            vec![rational_from_i64(-1, 1), rational_from_i64(2, 1)],
        ];
        let rhs = [rational_from_i64(1, 1), BigRational::from_integer(0.into())];
        let s = solve_spd(g, &rhs).unwrap();
        assert_eq!(s.solution[0], rational_from_i64(2, 3));
        assert_eq!(s.solution[1], rational_from_i64(1, 3));
    }

    #[test]
    fn rejects_indefinite() {
        let g = vec![vec![1.0, 2.0], vec![2.0, 1.0]];
        assert!(matches!(solve_spd(g, &[1.0, 0.0]), Err(Error::SingularGram { .. })));
    }
}
