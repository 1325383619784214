//! Log-log least-squares fitting of eigenvalue decay.

use crate::error::{Error, Result};

/// Fitted decay law `lambda_n ~ c n^{-p}` over a 1-based index window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticFit {
    pub exponent_p: f64,
    pub prefactor_c: f64,
    pub r_squared: f64,
    pub fit_range: (usize, usize),
}

/// OLS fit of `log lambda_n` against `log n` over `[n_lo, n_hi]`
/// (1-based, inclusive). `values[0]` is `lambda_1`.
pub fn fit_power_law(values: &[f64], fit_range: (usize, usize)) -> Result<AsymptoticFit> {
    fit_power_law_shifted(values, fit_range, 0.0)
}

/// Same fit with the index regressor shifted to `log(n - shift)`; used
/// where the underlying frequencies are `(n - 1/2) pi`.
pub fn fit_power_law_shifted(
    values: &[f64],
    fit_range: (usize, usize),
    shift: f64,
) -> Result<AsymptoticFit> {
    let (lo, hi) = fit_range;
    if lo < 1 || hi > values.len() || hi < lo + 4 {
        return Err(Error::InvalidFitRange {
            lo,
            hi,
            len: values.len(),
        });
    }
    let mut xs = Vec::with_capacity(hi - lo + 1);
    let mut ys = Vec::with_capacity(hi - lo + 1);
    for n in lo..=hi {
        let v = values[n - 1];
        if v <= 0.0 {
            return Err(Error::NonPositiveEigenvalue { index: n, value: v });
        }
        xs.push((n as f64 - shift).ln());
        ys.push(v.ln());
    }
    let (slope, intercept, r2) = ols(&xs, &ys);
    Ok(AsymptoticFit {
        exponent_p: -slope,
        prefactor_c: intercept.exp(),
        r_squared: r2,
        fit_range,
    })
}

/// Fixed-exponent prefactor estimate: mean of `lambda_n n^p` over the
/// window. Unlike the free-slope intercept this does not extrapolate to
/// n = 1 and is unbiased at the percent level for asymptotic windows.
pub fn prefactor_at_exponent(values: &[f64], fit_range: (usize, usize), p: f64) -> Result<f64> {
    let (lo, hi) = fit_range;
    if lo < 1 || hi > values.len() || hi < lo {
        return Err(Error::InvalidFitRange {
            lo,
            hi,
            len: values.len(),
        });
    }
    let sum: f64 = (lo..=hi).map(|n| values[n - 1] * (n as f64).powf(p)).sum();
    Ok(sum / (hi - lo + 1) as f64)
}

/// Simple linear OLS on (x, y) pairs; returns (slope, intercept, r^2).
pub(crate) fn ols(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    (slope, intercept, r2)
}
