//! Average-SNR-driven switching between B-TAS and E-TAS, and what it buys
//! over committing to either scheme.
//!
//! ```text
//! cargo run --example adaptive_switching
//! ```

use tas_secrecy::{adaptive_scheme, asc_btas_closed, asc_etas_closed, Scenario};

fn main() -> Result<(), tas_secrecy::Error> {
    let m = 4;
    println!(
        "{:>6} {:>6}  {:<6} {:>9} {:>9} {:>9}",
        "gB_dB", "gE_dB", "pick", "adaptive", "btas", "etas"
    );
    for gb in [0.0, 10.0, 20.0, 30.0] {
        for ge in [0.0, 10.0, 20.0, 30.0] {
            let s = Scenario::from_db(gb, ge, m)?;
            let (scheme, est) = adaptive_scheme(&s)?;
            println!(
                "{gb:>6} {ge:>6}  {:<6} {:>9.4} {:>9.4} {:>9.4}",
                scheme.as_str(),
                est.value(),
                asc_btas_closed(&s)?.value(),
                asc_etas_closed(&s)?.value()
            );
        }
    }
    Ok(())
}
