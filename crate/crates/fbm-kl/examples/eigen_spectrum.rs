//! Compute the Galerkin eigenvalue spectrum of fractional Brownian motion
//! on the shifted-sine basis and fit the power-law decay lambda_n ~ c n^{-p}.
//!
//! Run with: cargo run --release --example eigen_spectrum -- [hurst]

use fbm_kl::galerkin::{assemble, eigen_spectrum, fit_asymptotics, prefactor_candidates, QuadSpec};
use fbm_kl::kernel::HurstParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(0.7);
    let params = HurstParams::new(h)?;
    let n = 256;

    let matrix = assemble(&params, n, QuadSpec::default())?;
    let spectrum = eigen_spectrum(&matrix)?;
    let fit = fit_asymptotics(&spectrum, (8, 64))?;

    println!("H = {h}, matrix size {n}");
    println!(
        "fitted exponent p = {:.6} (theory 2H+1 = {:.6}), R^2 = {:.8}",
        fit.exponent_p,
        2.0 * h + 1.0,
        fit.r_squared
    );
    let (_, c) = prefactor_candidates(&params);
    println!("\n  n    lambda_n          asymptotic prediction   ratio");
    for n in [1, 2, 4, 8, 16, 32, 64, 128] {
        let lam = spectrum.eigenvalues[n - 1];
        let pred = c / (n as f64).powf(2.0 * h + 1.0);
        println!("{n:4}   {lam:.9e}   {pred:.9e}         {:.4}", lam / pred);
    }
    println!(
        "\ntrace = {:.9} (continuum operator trace = {:.9})",
        matrix.entries.trace(),
        matrix.trace_bound()
    );
    Ok(())
}
