//! The orthonormal-to-Riesz mapping made concrete: the matrix of projection
//! coefficients, the Bessel-sequence column bound, the eigenvalue-transfer
//! identity `lambda_n = sum_k A_{k,n}^2 tau_k`, and the location of the
//! per-column argmax.
//!
//! Normalization convention: the Riesz elements keep their raw projection
//! coefficients in A, and the coefficient variances ride in tau. The two
//! branch families interleave, sin-branch terms at odd source indices and
//! cos-branch at even, which preserves the ~pi frequency spacing of the
//! merged sequence.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::expansion::ExpansionSpec;
use crate::fit::ols;
use crate::projection::ProjectionTable;

/// Scaling rule for the Riesz elements when building the mapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Raw projection coefficients in A; variances absorbed into tau.
    #[default]
    VarianceInTau,
}

/// Matrix representation A_{k,n} of the operator mapping the orthonormal
/// basis onto the Riesz family; rows index the Riesz (source) elements,
/// columns the orthonormal ones.
#[derive(Debug, Clone)]
pub struct MappingMatrix {
    entries: DMatrix<f64>,
}

/// tau vector matching the interleaved row order: var_z at odd source
/// indices, var_w at even.
pub fn interleaved_tau(spec: &ExpansionSpec) -> Vec<f64> {
    let mut tau = Vec::with_capacity(2 * spec.terms);
    for j in 0..spec.terms {
        tau.push(spec.var_z[j]);
        tau.push(spec.var_w[j]);
    }
    tau
}

/// Build the mapping matrix from a projection table.
pub fn build_mapping(table: &ProjectionTable, _normalization: Normalization) -> MappingMatrix {
    let k = table.spec.terms;
    let n = table.sine_count;
    let entries = DMatrix::from_fn(2 * k, n, |row, col| {
        if row % 2 == 0 {
            table.mu_hat_at(col + 1, row / 2 + 1)
        } else {
            table.mu_tilde_at(col + 1, row / 2 + 1)
        }
    });
    MappingMatrix { entries }
}

impl MappingMatrix {
    pub fn from_entries(entries: DMatrix<f64>) -> Self {
        assert!(entries.iter().all(|v| v.is_finite()));
        Self { entries }
    }

    pub fn rows(&self) -> usize {
        self.entries.nrows()
    }

    pub fn cols(&self) -> usize {
        self.entries.ncols()
    }

    pub fn entry(&self, k: usize, n: usize) -> f64 {
        self.entries[(k - 1, n - 1)]
    }

    /// Bessel-sequence bound: max over columns of the squared l2 norm.
    pub fn column_norm_bound(&self) -> f64 {
        (0..self.cols())
            .map(|n| self.entries.column(n).norm_squared())
            .fold(0.0, f64::max)
    }

    /// `lambda_n = sum_k A_{k,n}^2 tau_k` for every column n.
    pub fn transfer_eigenvalues(&self, tau: &[f64]) -> Result<Vec<f64>> {
        if tau.len() != self.rows() {
            return Err(Error::TauLengthMismatch {
                tau: tau.len(),
                rows: self.rows(),
            });
        }
        Ok((0..self.cols())
            .map(|n| {
                self.entries
                    .column(n)
                    .iter()
                    .zip(tau)
                    .map(|(a, t)| a * a * t)
                    .sum()
            })
            .collect())
    }

    /// Tail fraction of the transfer sum for column n (last decade of rows).
    pub fn transfer_tail_fraction(&self, tau: &[f64], n: usize) -> f64 {
        let col = self.entries.column(n - 1);
        let total: f64 = col.iter().zip(tau).map(|(a, t)| a * a * t).sum();
        let start = self.rows() - self.rows() / 10;
        let tail: f64 = col
            .iter()
            .zip(tau)
            .skip(start)
            .map(|(a, t)| a * a * t)
            .sum();
        if total > 0.0 {
            tail / total
        } else {
            0.0
        }
    }

    /// Row index maximizing |A_{k,n}|, 1-based; ties break to the smaller k.
    pub fn argmax_column_row(&self, n: usize) -> usize {
        assert!(n >= 1 && n <= self.cols());
        let col = self.entries.column(n - 1);
        let mut best = (1usize, col[0].abs());
        for (i, v) in col.iter().enumerate().skip(1) {
            if v.abs() > best.1 {
                best = (i + 1, v.abs());
            }
        }
        best.0
    }

    /// Least-squares line k* = d7 n + b over a column window; returns
    /// (d7, r^2).
    pub fn argmax_slope_fit(&self, range: (usize, usize)) -> (f64, f64) {
        let xs: Vec<f64> = (range.0..=range.1).map(|n| n as f64).collect();
        let ys: Vec<f64> = (range.0..=range.1)
            .map(|n| self.argmax_column_row(n) as f64)
            .collect();
        let (slope, _, r2) = ols(&xs, &ys);
        (slope, r2)
    }
}
