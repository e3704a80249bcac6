//! Locates the SNR ratio γ̄E₀/γ̄B₀ at which E-TAS overtakes B-TAS.
//!
//! ```text
//! cargo run --example crossover
//! ```

use tas_secrecy::experiments::{btas_minus_etas, DEFAULT_CROSSOVER_BRACKET_DB};
use tas_secrecy::find_crossover;

fn main() -> Result<(), tas_secrecy::Error> {
    println!("gamma_b0_db  M  crossover_ratio_db        residual");
    for gamma_b0_db in [10.0, 20.0, 30.0] {
        for m in [2, 4, 8] {
            let c = find_crossover(gamma_b0_db, m, DEFAULT_CROSSOVER_BRACKET_DB)?;
            println!(
                "{:>11} {:>2}  {:>+22.15}  {:+.2e}",
                gamma_b0_db, m, c.crossover_ratio_db, c.residual
            );
        }
    }

    // B-TAS wins below the root and E-TAS above it.
    let c = find_crossover(10.0, 8, DEFAULT_CROSSOVER_BRACKET_DB)?;
    for offset in [-1.0, 1.0] {
        let g = btas_minus_etas(10.0, c.crossover_ratio_db + offset, 8)?;
        println!("root {offset:+} dB: B-TAS - E-TAS = {g:+.6}");
    }
    Ok(())
}
