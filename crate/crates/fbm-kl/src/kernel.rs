//! The fBm covariance function and the shifted-sine orthonormal basis.
//!
//! Everything else in the crate is checked against these two definitions.
//! The interval is fixed to [0, 1]; both operations are pure.

use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Hurst exponent H in (0, 1) together with the derived constant
/// `c_H^2 = Gamma(1 + 2H) sin(pi H) / pi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HurstParams {
    h: f64,
    c_h_sq: f64,
}

impl HurstParams {
    /// Rejects boundary and out-of-range values, including NaN.
    pub fn new(h: f64) -> Result<Self> {
        if !(h > 0.0 && h < 1.0) {
            return Err(Error::HurstOutOfRange(h));
        }
        let c_h_sq = gamma(1.0 + 2.0 * h) * (PI * h).sin() / PI;
        Ok(Self { h, c_h_sq })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn c_h_sq(&self) -> f64 {
        self.c_h_sq
    }
}

/// Covariance `R(s, t) = (s^{2H} + t^{2H} - |s - t|^{2H}) / 2` of standard
/// fBm on [0, 1].
pub fn fbm_covariance(s: f64, t: f64, params: &HurstParams) -> Result<f64> {
    check_time(s)?;
    check_time(t)?;
    Ok(fbm_covariance_unchecked(s, t, params))
}

pub(crate) fn fbm_covariance_unchecked(s: f64, t: f64, params: &HurstParams) -> f64 {
    let two_h = 2.0 * params.h;
    0.5 * (s.powf(two_h) + t.powf(two_h) - (s - t).abs().powf(two_h))
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::TimeOutOfDomain(t));
    }
    Ok(())
}

/// n-th basis function `sqrt(2) sin((n - 1/2) pi t)`, 1-based.
pub fn sine_basis(n: usize, t: f64) -> f64 {
    debug_assert!(n >= 1);
    f64::sqrt(2.0) * (sine_frequency(n) * t).sin()
}

/// Angular frequency `(n - 1/2) pi` of the n-th basis function.
pub fn sine_frequency(n: usize) -> f64 {
    (n as f64 - 0.5) * PI
}
