//! Least squares via Householder QR.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// A column whose QR pivot falls below this fraction of its own norm is
/// treated as a linear combination of the preceding columns.
const RANK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct OlsFit {
    pub coefficients: Vec<f64>,
    pub residuals: Vec<f64>,
    /// Residual sum of squares.
    pub rss: f64,
    r: DMatrix<f64>,
}

impl OlsFit {
    pub fn n_obs(&self) -> usize {
        self.residuals.len()
    }

    pub fn n_params(&self) -> usize {
        self.coefficients.len()
    }

    /// Classical standard errors, sqrt(diag(sigma^2 (X'X)^-1)).
    pub fn std_errors(&self) -> Result<Vec<f64>> {
        let df = self.n_obs().saturating_sub(self.n_params());
        if df == 0 {
            return Err(Error::Degenerate("no residual degrees of freedom".into()));
        }
        let sigma2 = self.rss / df as f64;
        let r_inv = self
            .r
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Numerical("singular R factor".into()))?;
        // (X'X)^-1 = R^-1 R^-T
        Ok((0..self.n_params())
            .map(|i| {
                let row = r_inv.row(i);
                (sigma2 * row.dot(&row)).sqrt()
            })
            .collect())
    }
}

/// Solves `min ||target - design * beta||^2`.
///
/// Fails with [`Error::RankDeficient`] naming every column that is (within
/// tolerance) a linear combination of earlier columns.
pub fn ols(design: &DMatrix<f64>, target: &[f64]) -> Result<OlsFit> {
    let (n, p) = design.shape();
    if target.len() != n {
        return Err(Error::InvalidArgument(format!(
            "design has {n} rows but target has {} entries",
            target.len()
        )));
    }
    if p == 0 || n < p {
        return Err(Error::InvalidArgument(format!(
            "need at least as many rows as columns, got {n}x{p}"
        )));
    }
    let qr = design.clone().qr();
    let r = qr.r();
    let collinear: Vec<usize> = (0..p)
        .filter(|&j| {
            let norm = design.column(j).norm();
            norm == 0.0 || r[(j, j)].abs() <= RANK_TOLERANCE * norm
        })
        .collect();
    if !collinear.is_empty() {
        return Err(Error::RankDeficient { columns: collinear });
    }
    let y = DVector::from_column_slice(target);
    let qty = qr.q().transpose() * &y;
    let beta = r
        .solve_upper_triangular(&qty)
        .ok_or_else(|| Error::Numerical("triangular solve failed".into()))?;
    let fitted = design * &beta;
    let residuals: Vec<f64> = y.iter().zip(fitted.iter()).map(|(a, b)| a - b).collect();
    let rss = residuals.iter().map(|e| e * e).sum();
    Ok(OlsFit {
        coefficients: beta.iter().copied().collect(),
        residuals,
        rss,
        r,
    })
}
