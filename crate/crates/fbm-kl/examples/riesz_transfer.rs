//! Demonstrate eigenvalue transfer through the mapping matrix A that expresses
//! the shifted-sine basis in the Bessel-expansion coordinates: the diagonal
//! identity lambda_n = sum_k A_{k,n}^2 tau_k, the localization of the dominant
//! coefficient, and the near-linear growth of its row index with n.
//!
//! Run with: cargo run --release --example riesz_transfer -- [hurst]

use fbm_kl::expansion::build_expansion;
use fbm_kl::galerkin::{assemble, QuadSpec};
use fbm_kl::kernel::HurstParams;
use fbm_kl::projection::ProjectionTable;
use fbm_kl::riesz::{build_mapping, interleaved_tau, Normalization};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(0.3);
    let params = HurstParams::new(h)?;
    let n = 64;
    let terms = 2000;

    let spec = build_expansion(&params, terms)?;
    let table = ProjectionTable::build(&spec, n);
    let mapping = build_mapping(&table, Normalization::VarianceInTau);
    let tau = interleaved_tau(&spec);
    let transferred = mapping.transfer_eigenvalues(&tau)?;

    let galerkin = assemble(&params, n, QuadSpec::default())?;

    println!("H = {h}, {n} basis functions, mapping matrix {}x{n}\n", 2 * terms);
    println!("  n   sum_k A_kn^2 tau_k   A_nn (quadrature)    k* (argmax row)");
    for idx in [1, 2, 4, 8, 16, 32, 64] {
        println!(
            "{idx:3}   {:+.9e}      {:+.9e}      {:5}",
            transferred[idx - 1],
            galerkin.entries[(idx - 1, idx - 1)],
            mapping.argmax_column_row(idx)
        );
    }

    let (slope, r2) = mapping.argmax_slope_fit((1, n));
    println!("\nargmax row vs n: slope {slope:.4} per column, R^2 = {r2:.5}");
    println!(
        "tail mass beyond k = {} in column {n}: {:.3e}",
        2 * terms - 2 * terms / 10,
        mapping.transfer_tail_fraction(&tau, n)
    );
    Ok(())
}
