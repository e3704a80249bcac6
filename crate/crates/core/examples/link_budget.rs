//! From transmit power and distances to reference SNRs, then one channel draw
//! and the antenna each selection rule picks.
//!
//! ```text
//! cargo run --example link_budget
//! ```

use tas_secrecy::experiments::linear_to_db;
use tas_secrecy::tas::select;
use tas_secrecy::{
    draw_realization, instantaneous_cs, instantaneous_snrs, LinkBudget, RngStream, TasScheme,
};

fn main() -> Result<(), tas_secrecy::Error> {
    let budget = LinkBudget {
        transmit_power: 1.0,
        distance_bob: 50.0,
        distance_eve: 120.0,
        path_loss_exponent: 3.0,
        noise_density: 1e-6,
    };
    let scenario = budget.scenario(4)?;
    println!(
        "gamma_b0 = {:.2} dB, gamma_e0 = {:.2} dB, M = {}",
        linear_to_db(scenario.gamma_b0()),
        linear_to_db(scenario.gamma_e0()),
        scenario.num_antennas()
    );

    let mut rng = RngStream::new(2024, 0);
    let realization = draw_realization(&scenario, &mut rng);
    println!("\nantenna  |h_B|^2   |h_E|^2");
    for (i, (b, e)) in realization
        .bob_gains()
        .iter()
        .zip(realization.eve_gains())
        .enumerate()
    {
        println!("{i:>7}  {b:8.4}  {e:8.4}");
    }

    println!("\nscheme  antenna  Cs [bit/s/Hz]");
    for scheme in TasScheme::ALL {
        let k = select(scheme, &scenario, &realization, &mut rng).antenna;
        let (gb, ge) = instantaneous_snrs(&scenario, &realization, k)?;
        println!(
            "{:<7} {k:>7}  {:.4}",
            scheme.as_str(),
            instantaneous_cs(gb, ge)?
        );
    }
    Ok(())
}
