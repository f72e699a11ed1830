//! Two-variable series over the bidisk: triangular coefficient storage,
//! the graded monomial ordering, the diagonal embedding, and the inner
//! products of the Hardy and Dirichlet-type spaces.

use std::io::BufRead;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::interval::{parse_rational, ExactScalar};
use crate::scalar::Scalar;
use crate::series::Series1D;
use crate::weights::{dirichlet_weight_2d_exact, Param};

/// Triangular array `b_{i,j}` for `i + j <= N`, stored by total degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Series2D<S> {
    /// `rows[d][i] = b_{i, d-i}`.
    rows: Vec<Vec<S>>,
    symmetric: bool,
}

impl<S: Scalar> Series2D<S> {
    pub fn new(rows: Vec<Vec<S>>) -> Self {
        assert!(!rows.is_empty());
        for (d, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), d + 1, "row {d} must hold {d}+1 coefficients");
        }
        Self { rows, symmetric: false }
    }

    /// Marks the series symmetric after checking `b_{i,j} = b_{j,i}`.
    pub fn into_symmetric(mut self) -> Result<Self> {
        for (d, row) in self.rows.iter().enumerate() {
            for i in 0..=d {
                if row[i] != row[d - i] {
                    return Err(Error::InvalidParameter(format!(
                        "coefficient ({i},{}) breaks the symmetry flag",
                        d - i
                    )));
                }
            }
        }
        self.symmetric = true;
        Ok(self)
    }

    pub fn one() -> Self {
        Self { rows: vec![vec![S::one()]], symmetric: true }
    }

    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn truncation_total_degree(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn coeff(&self, i: usize, j: usize) -> S {
        self.rows.get(i + j).map_or_else(S::zero, |row| row[i].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|c| c.is_zero())
    }

    /// Iterates `(i, j, coefficient)` over the support.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(d, row)| row.iter().enumerate().map(move |(i, c)| (i, d - i, c)))
    }

    pub fn map_to_f64(&self) -> Series2D<f64> {
        Series2D {
            rows: self.rows.iter().map(|r| r.iter().map(|c| c.to_f64()).collect()).collect(),
            symmetric: self.symmetric,
        }
    }
}

/// Enumeration order of the monomial basis.  Only the graded order (total
/// degree ascending, then the power of the first variable descending) is
/// implemented; the variant exists so callers can request others and get a
/// clear rejection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrdering {
    #[default]
    Graded,
    /// Placeholder for non-graded enumerations; not implemented.
    Other,
}

impl MonomialOrdering {
    /// Basis exponents `(i, j)` with `i + j <= n` in this order.
    pub fn basis(self, n: usize) -> Result<Vec<(usize, usize)>> {
        if self != MonomialOrdering::Graded {
            return Err(Error::NonGradedOrdering);
        }
        let mut out = Vec::with_capacity((n + 1) * (n + 2) / 2);
        for d in 0..=n {
            for i in (0..=d).rev() {
                out.push((i, d - i));
            }
        }
        Ok(out)
    }
}

/// The target space for bidisk inner products.
#[derive(Debug, Clone, PartialEq)]
pub enum Space2 {
    /// Hardy space of the bidisk: orthonormal monomials.
    H2D2,
    /// Dirichlet-type space with squared monomial norm `(i+1)^a (j+1)^a`.
    Dirichlet(Param),
}

impl Space2 {
    pub fn weight_f64(&self, i: usize, j: usize) -> f64 {
        match self {
            Space2::H2D2 => 1.0,
            Space2::Dirichlet(alpha) => {
                crate::weights::dirichlet_weight_2d(alpha.to_f64(), i, j)
            }
        }
    }

    pub fn weight<S: Scalar>(&self, i: usize, j: usize) -> Result<S> {
        match self {
            Space2::H2D2 => Ok(S::one()),
            Space2::Dirichlet(alpha) => {
                if S::EXACT {
                    let a = alpha
                        .as_exact()
                        .filter(|q| q.denom().is_one())
                        .ok_or_else(|| {
                            Error::ExactUnavailable(
                                "exact Dirichlet weights need an integer alpha".into(),
                            )
                        })?;
                    let a = num_traits::ToPrimitive::to_i64(a.numer())
                        .ok_or_else(|| Error::InvalidParameter("alpha out of range".into()))?;
                    Ok(S::from_rational(&dirichlet_weight_2d_exact(a, i, j)))
                } else {
                    Ok(S::from_rational(
                        &BigRational::from_float(self.weight_f64(i, j)).unwrap_or_else(ExactScalar::one),
                    ))
                }
            }
        }
    }
}

/// Diagonal embedding `F(z) -> F((z1+z2)/2)`:
/// `b_{i,j} = a_{i+j} C(i+j, i) / 2^(i+j)`.  The result is symmetric, and
/// its Hardy-bidisk norm equals the diagonal-weighted norm of `F`.
pub fn embed_diagonal<S: Scalar>(f: &Series1D<S>) -> Series2D<S> {
    let n = f.truncation_degree();
    let mut rows = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let a = f.coeff(d);
        let pow2 = BigInt::one() << d;
        let mut row = Vec::with_capacity(d + 1);
        for i in 0..=d {
            let factor =
                BigRational::new(binomial(BigInt::from(d), BigInt::from(i)), pow2.clone());
            row.push(a.clone() * S::from_rational(&factor));
        }
        rows.push(row);
    }
    Series2D { rows, symmetric: true }
}

/// Coefficients of `(1 - (z1+z2)/sqrt(6))^(-5/2)` up to total degree `n`:
/// `b_{i,j} = C(i+j, i) (1/sqrt 6)^(i+j) |C(-5/2, i+j)|`.
pub fn builtin_shanks_f(n: usize) -> Series2D<f64> {
    // 1-variable coefficients of (1 - w/sqrt 6)^(-5/2).
    let mut c = Vec::with_capacity(n + 1);
    c.push(1.0f64);
    for t in 1..=n {
        let t = t as f64;
        let prev = *c.last().unwrap();
        c.push(prev * (2.0 * t + 3.0) / (2.0 * t) / 6.0f64.sqrt());
    }
    let mut rows = Vec::with_capacity(n + 1);
    for (d, cd) in c.iter().enumerate() {
        let mut row = Vec::with_capacity(d + 1);
        let mut binom = 1.0f64;
        for i in 0..=d {
            row.push(cd * binom);
            binom = binom * (d - i) as f64 / (i + 1) as f64;
        }
        rows.push(row);
    }
    Series2D { rows, symmetric: true }
}

/// `sum_{i,j} f_{i,j} g_{i,j} w(i,j)` over the common truncation.
pub fn inner_product_2d<S: Scalar>(
    f: &Series2D<S>,
    g: &Series2D<S>,
    space: &Space2,
) -> Result<S> {
    let n = f.truncation_total_degree().min(g.truncation_total_degree());
    let mut acc = S::zero();
    for d in 0..=n {
        for i in 0..=d {
            let j = d - i;
            let w = space.weight::<S>(i, j)?;
            acc = acc + f.coeff(i, j) * g.coeff(i, j) * w;
        }
    }
    Ok(acc)
}

/// Parses a two-variable coefficient file: `i j value` per line, with the
/// support validated to be triangular (every exponent pair within the
/// maximal total degree present).
pub fn parse_series_2d(reader: impl BufRead) -> Result<Series2D<ExactScalar>> {
    let mut entries: Vec<(usize, usize, ExactScalar)> = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: &str| Error::Parse { line: lineno + 1, message: message.into() };
        let mut parts = line.split_whitespace();
        let i: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err("expected exponent i"))?;
        let j: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err("expected exponent j"))?;
        let value = parts
            .next()
            .and_then(parse_rational)
            .ok_or_else(|| err("expected a decimal or p/q value"))?;
        if parts.next().is_some() {
            return Err(err("trailing tokens"));
        }
        entries.push((i, j, value));
    }
    if entries.is_empty() {
        return Err(Error::Parse { line: 0, message: "empty coefficient file".into() });
    }
    let n = entries.iter().map(|(i, j, _)| i + j).max().unwrap();
    let mut rows: Vec<Vec<ExactScalar>> =
        (0..=n).map(|d| vec![ExactScalar::from_integer(0.into()); d + 1]).collect();
    for (i, j, v) in entries {
        rows[i + j][i] = v;
    }
    Ok(Series2D::new(rows))
}
