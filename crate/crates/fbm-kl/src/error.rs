use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("hurst exponent must lie strictly inside (0, 1), got {0}")]
    HurstOutOfRange(f64),

    #[error("time argument {0} outside [0, 1]")]
    TimeOutOfDomain(f64),

    #[error("bessel order must lie strictly inside (-1, 1), got {0}")]
    OrderOutOfRange(f64),

    #[error("bessel argument must be positive, got {0}")]
    NonPositiveArgument(f64),

    #[error("zero refinement failed for root {index}: residual {residual:e}")]
    ZeroRefinement { index: usize, residual: f64 },

    #[error("quadrature refinement did not converge: max entry change {0:e}")]
    QuadratureNoConvergence(f64),

    #[error("symmetric eigensolver did not converge")]
    EigenNonConvergence,

    #[error("invalid fit range [{lo}, {hi}] for spectrum of length {len}")]
    InvalidFitRange { lo: usize, hi: usize, len: usize },

    #[error("non-positive eigenvalue {value:e} at index {index} inside fit range")]
    NonPositiveEigenvalue { index: usize, value: f64 },

    #[error("ensemble of {m} paths too small for fit upper index {n_hi}")]
    EnsembleTooSmall { m: usize, n_hi: usize },

    #[error("degenerate spectrum: no usable eigenvalue decay")]
    DegenerateSpectrum,

    #[error("fitted exponent {0} is at or below the Weyl bound p = 1")]
    ExponentBelowWeyl(f64),

    #[error("tau length {tau} does not match mapping row count {rows}")]
    TauLengthMismatch { tau: usize, rows: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
