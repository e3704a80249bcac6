//! ASC normalized by the O-TAS Monte Carlo value against γ̄E₀/γ̄B₀, for
//! γ̄B₀ = 10, 20, 30 dB at M = 8, with the crossover marker for each curve.
//!
//! ```text
//! cargo run --release --example normalized_ratio_sweep
//! ```

use tas_secrecy::experiments::DEFAULT_CROSSOVER_BRACKET_DB;
use tas_secrecy::{find_crossover, run_sweep, SweepSpec, SweptAxis, TasScheme};

fn main() -> Result<(), tas_secrecy::Error> {
    for gamma_b0_db in [10.0, 20.0, 30.0] {
        let mut spec = SweepSpec::new(SweptAxis::Ratio, -30.0, 30.0, 13, gamma_b0_db);
        spec.antennas = vec![8];
        spec.schemes = vec![TasScheme::Otas, TasScheme::Btas, TasScheme::Etas];
        spec.mc_trials = 200_000;
        spec.normalize_to_otas = true;
        let rows = run_sweep(&spec)?;
        let marker = find_crossover(gamma_b0_db, 8, DEFAULT_CROSSOVER_BRACKET_DB)?;

        println!(
            "gamma_b0 = {gamma_b0_db} dB, crossover at {:+.3} dB",
            marker.crossover_ratio_db
        );
        println!("{:>9} {:>8} {:>8}", "ratio_db", "btas", "etas");
        for pair in rows.chunks(3) {
            // Each chunk is (otas, btas, etas) at one ratio.
            println!(
                "{:>9.1} {:>8.4} {:>8.4}",
                pair[1].swept_value_db, pair[1].asc, pair[2].asc
            );
        }
        println!();
    }
    Ok(())
}
