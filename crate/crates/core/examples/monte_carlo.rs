//! Monte Carlo ASC for every scheme next to the closed forms, with standard
//! errors and the sigma distance between the two routes.
//!
//! ```text
//! cargo run --release --example monte_carlo -- [gamma_b_db] [gamma_e_db] [M] [trials]
//! ```

use std::time::Instant;

use tas_secrecy::experiments::mc_stream_id;
use tas_secrecy::{asc_closed, mc_asc, RngStream, Scenario, TasScheme};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, default: &str| args.get(i).cloned().unwrap_or_else(|| default.to_string());
    let gamma_b_db: f64 = arg(0, "10").parse()?;
    let gamma_e_db: f64 = arg(1, "10").parse()?;
    let m: usize = arg(2, "8").parse()?;
    let trials: u64 = arg(3, "1000000").parse()?;

    let scenario = Scenario::from_db(gamma_b_db, gamma_e_db, m)?;
    println!("gamma_b0 = {gamma_b_db} dB, gamma_e0 = {gamma_e_db} dB, M = {m}, {trials} trials");
    println!(
        "{:<7} {:>12} {:>12} {:>10} {:>8}",
        "scheme", "mc", "closed", "std_err", "sigmas"
    );
    for scheme in TasScheme::ALL {
        let start = Instant::now();
        let rng = RngStream::new(42, mc_stream_id(scheme, m));
        let mc = mc_asc(&scenario, scheme, trials, &rng)?;
        let se = mc.std_error().unwrap_or_default();
        let closed = asc_closed(&scenario, scheme).ok().map(|c| c.value());
        let (closed_txt, sigmas) = match closed {
            Some(c) => (format!("{c:.6}"), format!("{:.2}", (mc.value() - c) / se)),
            None => ("-".to_string(), "-".to_string()),
        };
        println!(
            "{:<7} {:>12.6} {:>12} {:>10.2e} {:>8}   ({:.2?})",
            scheme.as_str(),
            mc.value(),
            closed_txt,
            se,
            sigmas,
            start.elapsed()
        );
    }
    Ok(())
}
