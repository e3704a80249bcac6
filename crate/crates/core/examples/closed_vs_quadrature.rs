//! The three analytic routes side by side: closed forms, numerical
//! integration of the ASC integral, and the largest gap between them on a
//! grid of operating points.
//!
//! ```text
//! cargo run --example closed_vs_quadrature
//! ```

use tas_secrecy::{asc_closed, asc_quadrature, Scenario, TasScheme};

fn main() -> Result<(), tas_secrecy::Error> {
    let grid = [-10.0, 0.0, 10.0, 20.0, 30.0];
    println!(
        "{:<7} {:>4} {:>5} {:>5} {:>20} {:>20} {:>10}",
        "scheme", "M", "gB", "gE", "closed", "quadrature", "|diff|"
    );
    let mut worst: f64 = 0.0;
    for scheme in [TasScheme::Btas, TasScheme::Etas, TasScheme::Random] {
        for m in [1, 2, 4, 8] {
            for gb in grid {
                for ge in grid {
                    let s = Scenario::from_db(gb, ge, m)?;
                    let c = asc_closed(&s, scheme)?.value();
                    let q = asc_quadrature(&s, scheme)?.value();
                    worst = worst.max((c - q).abs());
                    if gb == ge && m == 8 {
                        println!(
                            "{:<7} {m:>4} {gb:>5} {ge:>5} {c:>20.15} {q:>20.15} {:>10.2e}",
                            scheme.as_str(),
                            (c - q).abs()
                        );
                    }
                }
            }
        }
    }
    println!("\nlargest |closed - quadrature| over the grid: {worst:.3e}");

    // O-TAS has dependent link SNRs, so neither analytic route applies.
    let s = Scenario::from_db(10.0, 10.0, 8)?;
    if let Err(e) = asc_quadrature(&s, TasScheme::Otas) {
        println!("otas: {e}");
    }
    Ok(())
}
