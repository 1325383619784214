//! Build the Bessel-series expansion of fractional Brownian motion and draw
//! sample paths from it. Checks the empirical terminal variance against the
//! exact value Var B_1 = 1.
//!
//! Run with: cargo run --release --example expansion_sampling -- [hurst]

use fbm_kl::expansion::build_expansion;
use fbm_kl::kernel::HurstParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(0.3);
    let params = HurstParams::new(h)?;
    let spec = build_expansion(&params, 1000)?;

    println!("H = {h}, {} terms per branch", spec.terms);
    println!("\n  n     x_n (zero of J_-H)   y_n (zero of J_1-H)   var z_n        var w_n");
    for n in [1, 2, 3, 10, 100, 1000] {
        println!(
            "{n:5}   {:16.10}   {:17.10}   {:.6e}   {:.6e}",
            spec.x[n - 1],
            spec.y[n - 1],
            spec.var_z[n - 1],
            spec.var_w[n - 1]
        );
    }

    // a few paths on a coarse grid
    let grid: Vec<f64> = (0..=10).map(|j| j as f64 / 10.0).collect();
    println!("\nsample paths (seeds 1..3):");
    for seed in 1..=3u64 {
        let path = spec.sample_path(&grid, seed)?;
        let cells: Vec<String> = path.iter().map(|v| format!("{v:7.3}")).collect();
        println!("  seed {seed}: {}", cells.join(" "));
    }

    // Monte Carlo terminal variance
    let m = 5000;
    let mut sq = 0.0;
    for seed in 0..m {
        let b1 = spec.sample_path(&[1.0], seed)?[0];
        sq += b1 * b1;
    }
    println!(
        "\nVar B_1 over {m} paths: {:.4} (exact 1.0)",
        sq / m as f64
    );
    Ok(())
}
