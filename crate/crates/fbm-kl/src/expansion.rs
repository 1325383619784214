//! Bessel-series expansion of fBm on [0, 1]:
//!
//! `B_t = sum_n z_n sin(x_n t)/x_n + w_n (1 - cos(y_n t))/y_n`
//!
//! with `x_n` the positive zeros of `J_{-H}`, `y_n` those of `J_{1-H}`, and
//! independent centered Gaussian coefficients whose variances involve the
//! opposite-order Bessel value at each zero.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::kernel::{check_time, HurstParams};
use crate::specfun::{bessel_j, bessel_zeros};

/// Zeros and coefficient variances for a K-term truncation.
#[derive(Debug, Clone)]
pub struct ExpansionSpec {
    pub params: HurstParams,
    pub terms: usize,
    /// positive zeros of J_{-H}
    pub x: Vec<f64>,
    /// positive zeros of J_{1-H}
    pub y: Vec<f64>,
    /// E[z_n^2] = 2 c_H^2 / (x_n^{2H} J_{1-H}(x_n)^2)
    pub var_z: Vec<f64>,
    /// E[w_n^2] = 2 c_H^2 / (y_n^{2H} J_{-H}(y_n)^2)
    pub var_w: Vec<f64>,
}

/// Compute zeros and variances for `terms` expansion terms. Deterministic
/// for fixed (H, K).
pub fn build_expansion(params: &HurstParams, terms: usize) -> Result<ExpansionSpec> {
    assert!(terms >= 1);
    let h = params.h();
    let x = bessel_zeros(-h, terms)?.zeros;
    let y = bessel_zeros(1.0 - h, terms)?.zeros;
    let two_c = 2.0 * params.c_h_sq();
    let var_z = x
        .iter()
        .map(|&xn| Ok(two_c / (xn.powf(2.0 * h) * bessel_j(1.0 - h, xn)?.powi(2))))
        .collect::<Result<Vec<_>>>()?;
    let var_w = y
        .iter()
        .map(|&yn| Ok(two_c / (yn.powf(2.0 * h) * bessel_j(-h, yn)?.powi(2))))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExpansionSpec {
        params: *params,
        terms,
        x,
        y,
        var_z,
        var_w,
    })
}

impl ExpansionSpec {
    /// One draw of the coefficient vectors (z, w). Stream rule: one normal
    /// draw per z_n in index order, then one per w_n, from a ChaCha8 stream
    /// seeded with `seed`.
    pub fn coefficient_draws(&self, seed: u64) -> (Vec<f64>, Vec<f64>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = self
            .var_z
            .iter()
            .map(|v| v.sqrt() * <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng))
            .collect();
        let w = self
            .var_w
            .iter()
            .map(|v| v.sqrt() * <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng))
            .collect();
        (z, w)
    }

    /// One path realization on `grid`, deterministic in `seed`.
    pub fn sample_path(&self, grid: &[f64], seed: u64) -> Result<Vec<f64>> {
        assert!(!grid.is_empty());
        for &t in grid {
            check_time(t)?;
        }
        let (z, w) = self.coefficient_draws(seed);
        Ok(grid
            .iter()
            .map(|&t| {
                let mut acc = 0.0;
                for n in 0..self.terms {
                    acc += z[n] * (self.x[n] * t).sin() / self.x[n]
                        + w[n] * (1.0 - (self.y[n] * t).cos()) / self.y[n];
                }
                acc
            })
            .collect())
    }

    /// Basis matrices (K x P) `sin(x_n t)/x_n` and `(1 - cos(y_n t))/y_n`
    /// on a grid; a path is a coefficient row times these.
    pub fn basis_matrices(&self, grid: &[f64]) -> (DMatrix<f64>, DMatrix<f64>) {
        let k = self.terms;
        let p = grid.len();
        let bs = DMatrix::from_fn(k, p, |n, j| (self.x[n] * grid[j]).sin() / self.x[n]);
        let bc = DMatrix::from_fn(k, p, |n, j| (1.0 - (self.y[n] * grid[j]).cos()) / self.y[n]);
        (bs, bc)
    }

    /// Truncated second moment `sum_n var_z sin sin / x^2 + var_w (1-cos)(1-cos) / y^2`;
    /// converges to the fBm covariance as K grows.
    pub fn reconstruct_covariance(&self, s: f64, t: f64) -> Result<f64> {
        check_time(s)?;
        check_time(t)?;
        let mut acc = 0.0;
        for n in 0..self.terms {
            let xs = (self.x[n] * s).sin() / self.x[n];
            let xt = (self.x[n] * t).sin() / self.x[n];
            let ys = (1.0 - (self.y[n] * s).cos()) / self.y[n];
            let yt = (1.0 - (self.y[n] * t).cos()) / self.y[n];
            acc += self.var_z[n] * xs * xt + self.var_w[n] * ys * yt;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::fbm_covariance;

    #[test]
    fn brownian_variances_are_unit() {
        let p = HurstParams::new(0.5).unwrap();
        let spec = build_expansion(&p, 64).unwrap();
        for n in 0..64 {
            assert!((spec.var_z[n] - 1.0).abs() < 1e-8, "z n={n}");
            assert!((spec.var_w[n] - 1.0).abs() < 1e-8, "w n={n}");
        }
    }

    #[test]
    fn variance_envelope_ratio_bounded() {
        // var_z[n] * x_n^{2H-1} pinned between positive constants
        let p = HurstParams::new(0.7).unwrap();
        let spec = build_expansion(&p, 100).unwrap();
        let ratios: Vec<f64> = (9..100)
            .map(|n| spec.var_z[n] * spec.x[n].powf(2.0 * 0.7 - 1.0))
            .collect();
        let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().cloned().fold(0.0f64, f64::max);
        assert!(lo > 0.0);
        assert!(hi / lo <= 2.0, "ratio spread {}", hi / lo);
    }

    #[test]
    fn variances_positive_and_zeros_interlace() {
        let p = HurstParams::new(0.3).unwrap();
        let spec = build_expansion(&p, 50).unwrap();
        for n in 0..50 {
            assert!(spec.var_z[n] > 0.0 && spec.var_w[n] > 0.0);
        }
        // x_n < y_n < x_{n+1} (orders -H and 1-H interlace)
        for n in 0..49 {
            assert!(spec.x[n] < spec.y[n] && spec.y[n] < spec.x[n + 1]);
        }
    }

    #[test]
    fn path_starts_at_zero_and_is_deterministic() {
        let p = HurstParams::new(0.3).unwrap();
        let spec = build_expansion(&p, 32).unwrap();
        assert_eq!(spec.sample_path(&[0.0], 7).unwrap(), vec![0.0]);
        let grid = [0.0, 0.25, 0.5, 1.0];
        let a = spec.sample_path(&grid, 99).unwrap();
        let b = spec.sample_path(&grid, 99).unwrap();
        assert_eq!(a, b);
        let c = spec.sample_path(&grid, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn terminal_variance_monte_carlo() {
        let p = HurstParams::new(0.5).unwrap();
        let spec = build_expansion(&p, 500).unwrap();
        let m = 10_000;
        let mut sum_sq = 0.0;
        for seed in 0..m {
            let v = spec.sample_path(&[1.0], seed).unwrap()[0];
            sum_sq += v * v;
        }
        let var = sum_sq / m as f64;
        assert!((0.95..=1.05).contains(&var), "var={var}");
    }

    #[test]
    fn reconstruction_point_values() {
        let p = HurstParams::new(0.5).unwrap();
        let spec = build_expansion(&p, 2000).unwrap();
        assert_eq!(spec.reconstruct_covariance(0.0, 0.77).unwrap(), 0.0);
        let r11 = spec.reconstruct_covariance(1.0, 1.0).unwrap();
        assert!((r11 - 1.0).abs() < 0.01, "r11={r11}");
    }

    #[test]
    fn reconstruction_error_decreases_with_terms() {
        let p = HurstParams::new(0.3).unwrap();
        let sup = |k: usize| {
            let spec = build_expansion(&p, k).unwrap();
            let mut worst: f64 = 0.0;
            for i in 0..21 {
                for j in 0..21 {
                    let s = i as f64 / 20.0;
                    let t = j as f64 / 20.0;
                    let e = (spec.reconstruct_covariance(s, t).unwrap()
                        - fbm_covariance(s, t, &p).unwrap())
                    .abs();
                    worst = worst.max(e);
                }
            }
            worst
        };
        let e1 = sup(1000);
        let e2 = sup(2000);
        assert!(e2 < e1, "e1={e1} e2={e2}");
    }

    #[test]
    fn sampling_covariance_consistency() {
        // empirical covariance of 5000 paths at 5 grid points
        let p = HurstParams::new(0.7).unwrap();
        let spec = build_expansion(&p, 500).unwrap();
        let grid = [0.2, 0.4, 0.6, 0.8, 1.0];
        let m = 5000usize;
        let (bs, bc) = spec.basis_matrices(&grid);
        let mut acc = nalgebra::DMatrix::<f64>::zeros(5, 5);
        for seed in 0..m as u64 {
            let (z, w) = spec.coefficient_draws(seed);
            let zv = nalgebra::RowDVector::from_vec(z);
            let wv = nalgebra::RowDVector::from_vec(w);
            let path = (zv * &bs + wv * &bc).transpose();
            acc += &path * path.transpose();
        }
        acc /= m as f64;
        for i in 0..5 {
            for j in 0..5 {
                let want = fbm_covariance(grid[i], grid[j], &p).unwrap();
                let got = acc[(i, j)];
                if i == j {
                    assert!((got / want - 1.0).abs() < 0.05, "diag {i} got={got} want={want}");
                } else {
                    assert!((got - want).abs() < 0.02, "off ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn self_similarity_of_sampled_variance() {
        let p = HurstParams::new(0.3).unwrap();
        let spec = build_expansion(&p, 500).unwrap();
        let grid = [0.25, 0.5, 1.0];
        let m = 5000usize;
        let mut sq = [0.0f64; 3];
        for seed in 0..m as u64 {
            let path = spec.sample_path(&grid, seed).unwrap();
            for (i, v) in path.iter().enumerate() {
                sq[i] += v * v;
            }
        }
        for (i, &t) in grid.iter().enumerate() {
            let var = sq[i] / m as f64;
            let want = t.powf(2.0 * 0.3);
            assert!((var / want - 1.0).abs() < 0.05, "t={t} var={var} want={want}");
        }
    }
}
