//! Verify that two independent computations of the second-moment matrix
//! <phi_n, T phi_m> agree: direct quadrature of the covariance kernel
//! (Galerkin assembly) versus projection of the truncated Bessel-series
//! expansion onto the same basis.
//!
//! Run with: cargo run --release --example route_equivalence -- [hurst]

use fbm_kl::expansion::build_expansion;
use fbm_kl::galerkin::{assemble, QuadSpec};
use fbm_kl::kernel::HurstParams;
use fbm_kl::projection::ProjectionTable;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(0.7);
    let params = HurstParams::new(h)?;
    let n = 16;
    let terms = 2000;

    let galerkin = assemble(&params, n, QuadSpec::default())?;
    let spec = build_expansion(&params, terms)?;
    let table = ProjectionTable::build(&spec, n);

    let mut worst_diag = 0.0f64;
    let mut worst_off = 0.0f64;
    println!("H = {h}, basis size {n}, {terms} expansion terms per branch\n");
    println!("  n   m   galerkin          projection        difference");
    for row in 1..=n {
        for col in row..=n {
            let a = galerkin.entries[(row - 1, col - 1)];
            // raw truncated sum plus the analytic completion of the
            // slowly-converging cos-branch tail
            let p = table.projected_moment(row, col).value + table.tail_completion(row, col);
            if row == col {
                worst_diag = worst_diag.max((p / a - 1.0).abs());
            } else {
                worst_off = worst_off.max((p - a).abs());
            }
            if col <= row + 1 && row <= 4 {
                println!("{row:3} {col:3}   {a:+.9e}   {p:+.9e}   {:+.2e}", p - a);
            }
        }
    }
    println!("\nworst relative diagonal mismatch: {worst_diag:.3e}");
    println!("worst absolute off-diagonal mismatch: {worst_off:.3e}");
    Ok(())
}
