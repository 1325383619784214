//! Direct route to the K-L spectrum: the covariance operator on the
//! shifted-sine basis, a dense symmetric eigensolve, and the decay fit.
//!
//! Entry assembly splits the kernel as
//! `R(x, y) = (x^{2H} + y^{2H})/2 - |x - y|^{2H}/2`. The first part
//! separates into 1-D integrals. For the second, integrating out the
//! direction along the diagonal leaves elementary trig antiderivatives, so
//! every entry reduces to the weighted moments
//! `S(w) = int u^{2H} sin(wu) du`, `C(w) = int u^{2H} cos(wu) du` and
//! `C1(w) = int u^{2H+1} cos(wu) du` at the basis frequencies. With
//! `a = (n-1/2) pi`, `c = (m-1/2) pi`:
//!
//! * n = m:        `A = 2 S(a)/a - (C(a) - C1(a))`
//! * n - m even:   `A = S(a)/c + S(c)/a - (S(c) - S(a)) / ((n - m) pi)`
//! * n - m odd:    `A = S(a)/c + S(c)/a - (S(c) + S(a)) / ((n + m - 1) pi)`
//!
//! The refinement loop doubles the moment panel count until no entry moves
//! by more than the declared tolerance.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::fit::{self, AsymptoticFit};
use crate::kernel::{sine_frequency, HurstParams};
use crate::quad::{power_trig_moment, GaussLegendre, Trig};

/// Quadrature descriptor for the moment integrals: base panel count per
/// unit interval (scaled up with frequency), points per panel, and the
/// entry-stability tolerance of the refinement loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub panels: usize,
    pub points: usize,
    pub refine_tol: f64,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            panels: 16,
            points: 12,
            refine_tol: 1e-9,
        }
    }
}

/// Dense symmetric Galerkin matrix `A_{n,m} = <phi_n, T phi_m>`.
#[derive(Debug, Clone)]
pub struct GalerkinMatrix {
    pub params: HurstParams,
    pub size: usize,
    pub entries: DMatrix<f64>,
    pub quad: QuadSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumSource {
    Galerkin,
    Projection,
    Analytic,
}

/// Descending eigenvalues, optionally with the orthogonal eigenvector matrix.
#[derive(Debug, Clone)]
pub struct SpectralResult {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Option<DMatrix<f64>>,
    pub source: SpectrumSource,
}

fn moment_row(h: f64, size: usize, panels: usize, rule: &GaussLegendre) -> [Vec<f64>; 3] {
    let alpha = 2.0 * h;
    let mut s = Vec::with_capacity(size);
    let mut c = Vec::with_capacity(size);
    let mut c1 = Vec::with_capacity(size);
    for n in 1..=size {
        let w = sine_frequency(n);
        s.push(power_trig_moment(alpha, w, Trig::Sin, panels, rule));
        c.push(power_trig_moment(alpha, w, Trig::Cos, panels, rule));
        c1.push(power_trig_moment(alpha + 1.0, w, Trig::Cos, panels, rule));
    }
    [s, c, c1]
}

fn assemble_with(params: &HurstParams, size: usize, panels: usize, rule: &GaussLegendre) -> DMatrix<f64> {
    let [s, c, c1] = moment_row(params.h(), size, panels, rule);
    let mut m = DMatrix::zeros(size, size);
    // upper triangle, mirrored: exact symmetry by construction
    for n in 1..=size {
        let a = sine_frequency(n);
        for mm in n..=size {
            let cfreq = sine_frequency(mm);
            let t1 = s[n - 1] / cfreq + s[mm - 1] / a;
            let j = if n == mm {
                c[n - 1] - c1[n - 1]
            } else if (mm - n) % 2 == 0 {
                (s[n - 1] - s[mm - 1]) / ((mm as f64 - n as f64) * PI)
            } else {
                (s[mm - 1] + s[n - 1]) / ((n + mm - 1) as f64 * PI)
            };
            let val = t1 - j;
            m[(n - 1, mm - 1)] = val;
            m[(mm - 1, n - 1)] = val;
        }
    }
    m
}

/// Assemble the Galerkin matrix, doubling the quadrature panel count until
/// every entry is stable to `quad.refine_tol`.
pub fn assemble(params: &HurstParams, size: usize, quad: QuadSpec) -> Result<GalerkinMatrix> {
    assert!(size >= 1, "matrix size must be at least 1");
    assert!(quad.panels >= 1 && quad.points >= 2, "invalid quadrature descriptor");
    let rule = GaussLegendre::new(quad.points);
    let mut panels = quad.panels;
    let mut coarse = assemble_with(params, size, panels, &rule);
    for _ in 0..6 {
        let fine = assemble_with(params, size, 2 * panels, &rule);
        let diff = (&fine - &coarse).abs().max();
        if diff <= quad.refine_tol {
            return Ok(GalerkinMatrix {
                params: *params,
                size,
                entries: fine,
                quad,
            });
        }
        panels *= 2;
        coarse = fine;
    }
    let fine = assemble_with(params, size, 2 * panels, &rule);
    let diff = (&fine - &coarse).abs().max();
    Err(Error::QuadratureNoConvergence(diff))
}

impl GalerkinMatrix {
    /// Upper bound for the trace: the diagonal integral of the kernel.
    pub fn trace_bound(&self) -> f64 {
        1.0 / (2.0 * self.params.h() + 1.0)
    }
}

/// Full descending spectrum of a symmetric matrix, with the residual
/// contract `||A v - lambda v|| <= 1e-8 ||A||` checked per pair.
pub fn eigen_spectrum(matrix: &GalerkinMatrix) -> Result<SpectralResult> {
    let (eigenvalues, eigenvectors) = symmetric_eigen_desc(matrix.entries.clone())?;
    let norm = matrix.entries.norm();
    for (i, lam) in eigenvalues.iter().enumerate() {
        let v = eigenvectors.column(i);
        let r = (&matrix.entries * v - v * *lam).norm();
        if r > 1e-8 * norm {
            return Err(Error::EigenNonConvergence);
        }
    }
    Ok(SpectralResult {
        eigenvalues,
        eigenvectors: Some(eigenvectors),
        source: SpectrumSource::Galerkin,
    })
}

/// Shared dense symmetric eigensolve, eigenvalues descending.
pub(crate) fn symmetric_eigen_desc(m: DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = m.nrows();
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 0).ok_or(Error::EigenNonConvergence)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].partial_cmp(&eig.eigenvalues[i]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok((values, vectors))
}

/// Reference value generator for the printed asymptotic prefactor
/// `sin(pi H) Gamma(2H + 1) / n^{2H+1}`; see `prefactor_candidates` for the
/// empirical resolution of its normalization.
pub fn bronski_prediction(params: &HurstParams, n: usize) -> f64 {
    assert!(n >= 1);
    let h = params.h();
    (PI * h).sin() * gamma(2.0 * h + 1.0) / (n as f64).powf(2.0 * h + 1.0)
}

/// The two candidate prefactor constants for the decay law
/// `lambda_n ~ c n^{-(2H+1)}`: as printed, and with the `pi^{2H+1}`
/// frequency normalization.
pub fn prefactor_candidates(params: &HurstParams) -> (f64, f64) {
    let c1 = bronski_prediction(params, 1);
    let h = params.h();
    (c1, c1 / PI.powf(2.0 * h + 1.0))
}

/// Log-log least-squares fit of the eigenvalue decay over `fit_range`
/// (1-based, inclusive).
pub fn fit_asymptotics(spectrum: &SpectralResult, fit_range: (usize, usize)) -> Result<AsymptoticFit> {
    fit::fit_power_law(&spectrum.eigenvalues, fit_range)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::fbm_covariance_unchecked;
    use crate::quad::integrate_composite;

    fn brownian_lambda(n: usize) -> f64 {
        1.0 / (sine_frequency(n) * sine_frequency(n))
    }

    #[test]
    fn brownian_matrix_is_diagonal() {
        let p = HurstParams::new(0.5).unwrap();
        let m = assemble(&p, 8, QuadSpec::default()).unwrap();
        for n in 0..8 {
            for k in 0..8 {
                if n != k {
                    assert!(m.entries[(n, k)].abs() <= 1e-8);
                }
            }
            let want = brownian_lambda(n + 1);
            assert!((m.entries[(n, n)] - want).abs() <= 1e-10 * want);
        }
        assert!((m.entries[(0, 0)] - 4.0 / (PI * PI)).abs() < 1e-10);
    }

    /// Independent dense 2-D quadrature of Eq-style entries. Square panels
    /// with the diagonal cells split into two triangles along x = y, so the
    /// integrand is smooth inside every panel.
    fn brute_force_entry(p: &HurstParams, n: usize, m: usize, cells: usize) -> f64 {
        let rule = GaussLegendre::new(12);
        let h = 1.0 / cells as f64;
        let f = |x: f64, y: f64| {
            2.0 * fbm_covariance_unchecked(x, y, p)
                * (sine_frequency(n) * x).sin()
                * (sine_frequency(m) * y).sin()
        };
        let mut acc = 0.0;
        for i in 0..cells {
            let x0 = i as f64 * h;
            for j in 0..cells {
                let y0 = j as f64 * h;
                if i == j {
                    // lower triangle y in [y0, x], upper triangle y in [x, y0+h]
                    acc += rule.integrate(
                        |x| rule.integrate(|y| f(x, y), x0, x),
                        x0,
                        x0 + h,
                    );
                    acc += rule.integrate(
                        |x| rule.integrate(|y| f(x, y), x, y0 + h),
                        x0,
                        x0 + h,
                    );
                } else {
                    acc += rule.integrate(
                        |x| rule.integrate(|y| f(x, y), y0, y0 + h),
                        x0,
                        x0 + h,
                    );
                }
            }
        }
        acc
    }

    #[test]
    fn matches_brute_force_double_quadrature() {
        let p = HurstParams::new(0.7).unwrap();
        let m = assemble(&p, 4, QuadSpec::default()).unwrap();
        let oracle = brute_force_entry(&p, 1, 1, 48);
        assert!((m.entries[(0, 0)] - oracle).abs() < 1e-6);
        let oracle12 = brute_force_entry(&p, 1, 2, 48);
        assert!((m.entries[(0, 1)] - oracle12).abs() < 1e-6);
    }

    #[test]
    fn exact_symmetry_and_positive_diagonal() {
        let p = HurstParams::new(0.3).unwrap();
        let m = assemble(&p, 12, QuadSpec::default()).unwrap();
        for n in 0..12 {
            assert!(m.entries[(n, n)] > 0.0);
            for k in 0..12 {
                assert_eq!(m.entries[(n, k)], m.entries[(k, n)]);
            }
        }
        assert!(m.entries.trace() <= m.trace_bound() + 1e-9);
    }

    #[test]
    fn brownian_spectrum_analytic() {
        let p = HurstParams::new(0.5).unwrap();
        let m = assemble(&p, 16, QuadSpec::default()).unwrap();
        let s = eigen_spectrum(&m).unwrap();
        for n in 1..=16 {
            let want = brownian_lambda(n);
            assert!(
                (s.eigenvalues[n - 1] - want).abs() <= 1e-6 * want,
                "n={n}"
            );
        }
        // eigenvector orthogonality
        let v = s.eigenvectors.as_ref().unwrap();
        let g = v.transpose() * v;
        for i in 0..16 {
            for j in 0..16 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g[(i, j)] - want).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn diagonal_matrix_spectrum_exact() {
        let p = HurstParams::new(0.5).unwrap();
        let d = [3.0, 0.25, 7.0, 1.5];
        let m = GalerkinMatrix {
            params: p,
            size: 4,
            entries: DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(&d)),
            quad: QuadSpec::default(),
        };
        let s = eigen_spectrum(&m).unwrap();
        assert_eq!(s.eigenvalues, vec![7.0, 3.0, 1.5, 0.25]);
    }

    #[test]
    fn matches_nystrom_oracle() {
        // Independent route: collocation of the integral eigenproblem on a
        // midpoint grid.
        let p = HurstParams::new(0.3).unwrap();
        let grid = 1024;
        let t: Vec<f64> = (0..grid).map(|i| (i as f64 + 0.5) / grid as f64).collect();
        let k = DMatrix::from_fn(grid, grid, |i, j| {
            fbm_covariance_unchecked(t[i], t[j], &p) / grid as f64
        });
        let mut nys = k.symmetric_eigenvalues().iter().copied().collect::<Vec<_>>();
        nys.sort_by(|a, b| b.partial_cmp(a).unwrap());

        let m = assemble(&p, 64, QuadSpec::default()).unwrap();
        let s = eigen_spectrum(&m).unwrap();
        let rel = (s.eigenvalues[9] / nys[9] - 1.0).abs();
        assert!(rel < 0.01, "rel={rel}");
    }

    #[test]
    fn diagonal_dominance_trend() {
        for h in [0.3, 0.7] {
            let p = HurstParams::new(h).unwrap();
            for n in [4usize, 8] {
                let mut prev = f64::INFINITY;
                for size in [16usize, 32, 64] {
                    let m = assemble(&p, size, QuadSpec::default()).unwrap();
                    let diag = m.entries[(n - 1, n - 1)];
                    let mut off: f64 = 0.0;
                    for k in 0..size {
                        if k != n - 1 {
                            off = off.max(m.entries[(n - 1, k)].abs());
                        }
                    }
                    let ratio = off / diag;
                    assert!(ratio <= prev + 1e-12, "h={h} n={n} size={size}");
                    prev = ratio;
                }
            }
        }
    }

    #[test]
    fn spectrum_stable_under_matrix_growth() {
        let p = HurstParams::new(0.3).unwrap();
        let a = eigen_spectrum(&assemble(&p, 64, QuadSpec::default()).unwrap()).unwrap();
        let b = eigen_spectrum(&assemble(&p, 128, QuadSpec::default()).unwrap()).unwrap();
        for n in 0..16 {
            let rel = (a.eigenvalues[n] / b.eigenvalues[n] - 1.0).abs();
            assert!(rel < 0.005, "n={n} rel={rel}");
        }
    }

    #[test]
    fn trace_approaches_bound_from_below() {
        let p = HurstParams::new(0.7).unwrap();
        let bound = 1.0 / (2.0 * 0.7 + 1.0);
        let mut prev = 0.0;
        for size in [16usize, 64, 256] {
            let m = assemble(&p, size, QuadSpec::default()).unwrap();
            let s = eigen_spectrum(&m).unwrap();
            let tr: f64 = s.eigenvalues.iter().sum();
            assert!(tr <= bound + 1e-9);
            assert!(tr >= prev);
            prev = tr;
        }
        assert!((bound - prev) / bound < 0.05);
    }

    #[test]
    fn bronski_prediction_values() {
        let p = HurstParams::new(0.5).unwrap();
        assert!((bronski_prediction(&p, 1) - 1.0).abs() < 1e-14);
        assert!((bronski_prediction(&p, 2) - 0.25).abs() < 1e-14);
        let mut prev = f64::INFINITY;
        for n in 1..100 {
            let v = bronski_prediction(&p, n);
            assert!(v < prev && v > 0.0);
            prev = v;
        }
    }

    #[test]
    fn sine_basis_consistency_of_assembly() {
        // direct 2-D quadrature of the separable part equals the moment path
        // for a Brownian off-diagonal entry (both should be ~0)
        let p = HurstParams::new(0.5).unwrap();
        let m = assemble(&p, 4, QuadSpec::default()).unwrap();
        let rule = GaussLegendre::new(16);
        let direct = integrate_composite(
            |x| {
                integrate_composite(
                    |y| {
                        2.0 * fbm_covariance_unchecked(x, y, &p)
                            * (sine_frequency(1) * x).sin()
                            * (sine_frequency(3) * y).sin()
                    },
                    0.0,
                    1.0,
                    24,
                    &rule,
                )
            },
            0.0,
            1.0,
            24,
            &rule,
        );
        assert!((m.entries[(0, 2)] - direct).abs() < 1e-6);
    }
}
