//! Hurst exponent recovery from eigenvalue decay, on computed spectra and
//! on sampled path ensembles with injected disturbances.
//!
//! The sample covariance is taken across paths (ensemble average), not along
//! time: fBm is non-stationary, so time averages are biased.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::expansion::ExpansionSpec;
use crate::fit::{self, AsymptoticFit};
use crate::galerkin::symmetric_eigen_desc;
use crate::kernel::HurstParams;

/// Disturbance applied to an ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Disturbance {
    #[default]
    None,
    WhiteNoise {
        sigma: f64,
    },
    LinearTrend {
        slope: f64,
    },
}

/// Disturbance kind selector for `add_disturbance`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisturbanceKind {
    WhiteNoise,
    LinearTrend,
}

/// M paths sampled on a uniform P-point grid over [0, 1].
#[derive(Debug, Clone)]
pub struct PathEnsemble {
    /// M x P, one row per path
    pub paths: DMatrix<f64>,
    pub h_true: Option<HurstParams>,
    pub disturbance: Disturbance,
}

impl PathEnsemble {
    pub fn paths_count(&self) -> usize {
        self.paths.nrows()
    }

    pub fn grid_len(&self) -> usize {
        self.paths.ncols()
    }
}

/// Sample M paths on a uniform grid; path i uses seed `base_seed + i`, so
/// row i equals `spec.sample_path(grid, base_seed + i)`.
pub fn generate_ensemble(
    spec: &ExpansionSpec,
    m: usize,
    p: usize,
    base_seed: u64,
) -> PathEnsemble {
    assert!(m >= 2 && p >= 8);
    let grid: Vec<f64> = (0..p).map(|j| j as f64 / (p - 1) as f64).collect();
    let (bs, bc) = spec.basis_matrices(&grid);
    let k = spec.terms;
    let mut z = DMatrix::zeros(m, k);
    let mut w = DMatrix::zeros(m, k);
    for i in 0..m {
        let (zi, wi) = spec.coefficient_draws(base_seed + i as u64);
        for j in 0..k {
            z[(i, j)] = zi[j];
            w[(i, j)] = wi[j];
        }
    }
    PathEnsemble {
        paths: z * bs + w * bc,
        h_true: Some(spec.params),
        disturbance: Disturbance::None,
    }
}

/// New ensemble with the disturbance applied; the original is untouched.
pub fn add_disturbance(
    ensemble: &PathEnsemble,
    kind: DisturbanceKind,
    magnitude: f64,
    seed: u64,
) -> PathEnsemble {
    assert!(magnitude >= 0.0);
    let mut paths = ensemble.paths.clone();
    let disturbance = match kind {
        DisturbanceKind::WhiteNoise => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for v in paths.iter_mut() {
                *v += magnitude
                    * <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng);
            }
            Disturbance::WhiteNoise { sigma: magnitude }
        }
        DisturbanceKind::LinearTrend => {
            let p = paths.ncols();
            for i in 0..paths.nrows() {
                for j in 0..p {
                    paths[(i, j)] += magnitude * j as f64 / (p - 1) as f64;
                }
            }
            Disturbance::LinearTrend { slope: magnitude }
        }
    };
    PathEnsemble {
        paths,
        h_true: ensemble.h_true,
        disturbance,
    }
}

/// Invert the decay law p = 2H + 1 from a spectrum fit. Returns the
/// estimate clamped to (0, 1) with an out-of-range flag.
pub fn hurst_from_spectrum(fit: &AsymptoticFit) -> Result<HurstEstimate> {
    if fit.exponent_p <= 1.0 {
        return Err(Error::ExponentBelowWeyl(fit.exponent_p));
    }
    let raw = (fit.exponent_p - 1.0) / 2.0;
    let clamped = raw.clamp(1e-12, 1.0 - 1e-12);
    Ok(HurstEstimate {
        h: clamped,
        out_of_range: raw >= 1.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HurstEstimate {
    pub h: f64,
    pub out_of_range: bool,
}

/// PCA route: across-path sample covariance, eigensolve, 1/P grid weight,
/// decay fit over `fit_range`, then H = (p - 1)/2.
///
/// The index regressor is log(n - 1/2), matching the half-shifted
/// frequencies of the operator spectrum; the plain log-n fit carries a
/// deterministic window bias of several percent in H.
pub fn pca_hurst(ensemble: &PathEnsemble, fit_range: (usize, usize)) -> Result<f64> {
    let m = ensemble.paths_count();
    let p = ensemble.grid_len();
    if m < 4 * fit_range.1 {
        return Err(Error::EnsembleTooSmall {
            m,
            n_hi: fit_range.1,
        });
    }
    // center columns (removes deterministic mean disturbances)
    let mut x = ensemble.paths.clone();
    for j in 0..p {
        let mean = x.column(j).sum() / m as f64;
        for i in 0..m {
            x[(i, j)] -= mean;
        }
    }
    let cov = x.transpose() * &x / m as f64;
    let (eigenvalues, _) = symmetric_eigen_desc(cov)?;
    let lam: Vec<f64> = eigenvalues.iter().map(|v| v / p as f64).collect();
    if lam[fit_range.0 - 1] <= 0.0 {
        return Err(Error::DegenerateSpectrum);
    }
    let fit = fit::fit_power_law_shifted(&lam, fit_range, 0.5).map_err(|e| match e {
        Error::NonPositiveEigenvalue { .. } => Error::DegenerateSpectrum,
        other => other,
    })?;
    Ok((fit.exponent_p - 1.0) / 2.0)
}
