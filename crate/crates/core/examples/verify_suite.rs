//! Runs the built-in cross-check suite, then again with a deliberately broken
//! B-TAS formula to show that the suite notices.
//!
//! ```text
//! cargo run --release --example verify_suite -- [trials]
//! ```

use tas_secrecy::secrecy::binomial;
use tas_secrecy::verify::{CheckOutcome, Verifier};
use tas_secrecy::{delta_e, Scenario};

fn print(outcomes: &[CheckOutcome]) {
    for o in outcomes {
        println!(
            "{}  {:<40} {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.detail
        );
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let trials = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(200_000);

    println!("reference formulas, {trials} trials:");
    print(&Verifier::new(trials, 42).run()?);

    // Every term added with a plus sign instead of alternating.
    let broken = |s: &Scenario| -> tas_secrecy::Result<f64> {
        let m = s.num_antennas();
        let mut sum = 0.0;
        for k in 1..=m {
            let a = k as f64 / s.gamma_b0();
            sum += binomial(m, k) * delta_e(a, 1.0 / s.gamma_e0() + a)?;
        }
        Ok(sum / std::f64::consts::LN_2)
    };
    println!("\nbroken B-TAS sum:");
    print(&Verifier::new(trials, 42).with_btas_closed(&broken).run()?);
    Ok(())
}
