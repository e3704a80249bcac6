//! ASC against γ̄B₀ with γ̄E₀ = 10 dB for M = 2 and 8, as plot-ready CSV.
//!
//! ```text
//! cargo run --release --example sweep_gamma_b > asc_vs_gamma_b.csv
//! ```

use std::io;

use tas_secrecy::cli::write_sweep_csv;
use tas_secrecy::{run_sweep, SweepSpec, SweptAxis, TasScheme};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut spec = SweepSpec::new(SweptAxis::GammaB, -10.0, 40.0, 61, 10.0);
    spec.antennas = vec![2, 8];
    spec.schemes = vec![TasScheme::Otas, TasScheme::Btas, TasScheme::Etas];
    spec.mc_trials = 200_000;
    let rows = run_sweep(&spec)?;
    eprintln!("{} rows", rows.len());
    write_sweep_csv(&mut io::stdout().lock(), &rows)?;
    Ok(())
}
