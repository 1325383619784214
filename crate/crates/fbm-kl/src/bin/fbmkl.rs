use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fbm_kl::cli::{self, Command as Pipeline, OutputFormat, RunConfig};
use fbm_kl::Error;

/// Karhunen-Loeve spectrum toolkit for fractional Brownian motion.
#[derive(Parser)]
#[command(name = "fbmkl", version, about)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Galerkin eigenvalue spectrum with decay fit
    Eigen(Common),
    /// Bessel-zero frequencies and coefficient variances of the series expansion
    Expand(Common),
    /// Projected second moments versus Galerkin matrix diagonal
    Project(Common),
    /// Eigenvalue transfer through the interleaved mapping matrix
    Transfer(Common),
    /// Hurst recovery from the spectrum and from simulated path ensembles
    Estimate(Common),
}

#[derive(Args)]
struct Common {
    /// Hurst index, strictly between 0 and 1
    #[arg(long)]
    hurst: f64,
    /// Matrix size / number of basis functions
    #[arg(long, default_value_t = 256)]
    size: usize,
    /// Number of expansion terms per branch
    #[arg(long, default_value_t = 2000)]
    terms: usize,
    /// Base seed for path sampling
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Fit window as two 1-based indices, e.g. 8,64
    #[arg(long, value_parser = parse_range)]
    fit_range: Option<(usize, usize)>,
    /// Output file path (defaults to fbmkl-<command>.<ext>)
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| "expected lo,hi".to_string())?;
    let lo = a.trim().parse().map_err(|e| format!("bad lower index: {e}"))?;
    let hi = b.trim().parse().map_err(|e| format!("bad upper index: {e}"))?;
    Ok((lo, hi))
}

fn build_config(pipeline: Pipeline, common: Common) -> RunConfig {
    let format = match common.format {
        Format::Csv => OutputFormat::Csv,
        Format::Json => OutputFormat::Json,
    };
    RunConfig {
        hurst: common.hurst,
        size: common.size,
        terms: common.terms,
        seed: common.seed,
        fit_range: common
            .fit_range
            .unwrap_or_else(|| pipeline.default_fit_range(common.size)),
        output_path: common.output.unwrap_or_else(|| {
            PathBuf::from(format!("fbmkl-{}.{}", pipeline.name(), format.extension()))
        }),
        format,
        command: pipeline,
    }
}

fn main() -> ExitCode {
    let parsed = Cli::parse();
    let config = match parsed.command {
        CliCommand::Eigen(c) => build_config(Pipeline::Eigen, c),
        CliCommand::Expand(c) => build_config(Pipeline::Expand, c),
        CliCommand::Project(c) => build_config(Pipeline::Project, c),
        CliCommand::Transfer(c) => build_config(Pipeline::Transfer, c),
        CliCommand::Estimate(c) => build_config(Pipeline::Estimate, c),
    };
    match cli::run(&config) {
        Ok(()) => {
            println!("wrote {}", config.output_path.display());
            ExitCode::SUCCESS
        }
        Err(e @ Error::InvalidConfig(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
