//! Exponential integral E₁, its scaled form and the ΔE difference used by the
//! closed-form secrecy capacities.
//!
//! ```text
//! cargo run --example special_functions
//! ```

use tas_secrecy::{delta_e, exp_integral_e1, exp_scaled_e1};

fn main() -> Result<(), tas_secrecy::Error> {
    println!("{:>10} {:>24} {:>24}", "x", "E1(x)", "e^x E1(x)");
    for x in [1e-10, 1e-3, 0.5, 1.0, 2.0, 10.0, 100.0, 700.0, 1e4] {
        println!(
            "{x:>10.0e} {:>24.16e} {:>24.16e}",
            exp_integral_e1(x)?,
            exp_scaled_e1(x)?
        );
    }

    // Scaled values stay representable where E1 itself underflows.
    println!(
        "\nE1(800) = {:e}, e^800 E1(800) = {:.16e}",
        exp_integral_e1(800.0)?,
        exp_scaled_e1(800.0)?
    );

    println!("\nDelta E(1, 2) = {:.16}", delta_e(1.0, 2.0)?);
    println!("Delta E(2, 1) = {:.16}", delta_e(2.0, 1.0)?);
    match exp_integral_e1(-1.0) {
        Err(e) => println!("E1(-1): {e}"),
        Ok(v) => println!("E1(-1) = {v}"),
    }
    Ok(())
}
