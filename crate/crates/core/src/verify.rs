//! Self-consistency checks between the closed forms, the quadrature route and
//! Monte Carlo.

use crate::channel::{draw_realization, instantaneous_snrs, RngStream, Scenario};
use crate::error::Result;
use crate::experiments::mc_stream_id;
use crate::secrecy::{asc_btas_closed, asc_etas_closed, asc_quadrature, instantaneous_cs, mc_asc};
use crate::tas::{select_btas, select_etas, select_otas, select_random, TasScheme};

/// Reference SNR grid (dB) shared by the analytic checks.
pub const SNR_GRID_DB: [f64; 5] = [-10.0, 0.0, 10.0, 20.0, 30.0];
/// Antenna counts of the analytic checks.
pub const ANTENNA_GRID: [usize; 4] = [1, 2, 4, 8];
/// Reduced SNR grid (dB) for the Monte Carlo checks.
pub const MC_SNR_GRID_DB: [f64; 3] = [0.0, 10.0, 20.0];
/// Antenna counts of the Monte Carlo checks.
pub const MC_ANTENNA_GRID: [usize; 2] = [2, 8];

pub const QUAD_TOLERANCE: f64 = 1e-6;
pub const IDENTITY_TOLERANCE: f64 = 1e-14;
pub const MC_SIGMAS: f64 = 4.0;
pub const DOMINANCE_REALIZATIONS: usize = 100_000;

/// A closed-form ASC in bits/s/Hz.
type ClosedForm<'a> = dyn Fn(&Scenario) -> Result<f64> + Sync + 'a;

/// Result of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Runs the cross-check suite with a configurable Monte Carlo budget.
///
/// The B-TAS closed form under test can be swapped out, which lets tests
/// confirm that a corrupted formula is caught.
pub struct Verifier<'a> {
    trials: u64,
    seed: u64,
    btas_closed: &'a ClosedForm<'a>,
}

fn btas_closed_value(s: &Scenario) -> Result<f64> {
    Ok(asc_btas_closed(s)?.value())
}

impl Verifier<'static> {
    pub fn new(trials: u64, seed: u64) -> Self {
        Self {
            trials,
            seed,
            btas_closed: &btas_closed_value,
        }
    }
}

impl<'a> Verifier<'a> {
    pub fn with_btas_closed<'b>(self, btas_closed: &'b ClosedForm<'b>) -> Verifier<'b> {
        Verifier {
            trials: self.trials,
            seed: self.seed,
            btas_closed,
        }
    }

    pub fn run(&self) -> Result<Vec<CheckOutcome>> {
        Ok(vec![
            self.closed_vs_quadrature()?,
            self.mc_vs_closed()?,
            self.otas_dominance()?,
            self.factor_m_identity()?,
            self.single_antenna_equivalence()?,
        ])
    }

    fn grid() -> impl Iterator<Item = Scenario> {
        SNR_GRID_DB.into_iter().flat_map(|gb| {
            SNR_GRID_DB.into_iter().flat_map(move |ge| {
                ANTENNA_GRID
                    .into_iter()
                    .map(move |m| Scenario::from_db(gb, ge, m).expect("grid scenarios are valid"))
            })
        })
    }

    fn rng_for(&self, scheme: TasScheme, m: usize, point: usize) -> RngStream {
        RngStream::new(self.seed, mc_stream_id(scheme, m) ^ ((point as u64) << 40))
    }

    pub fn closed_vs_quadrature(&self) -> Result<CheckOutcome> {
        let mut worst: f64 = 0.0;
        let mut failures = 0;
        let mut count = 0;
        for s in Self::grid() {
            for (scheme, closed) in [
                (TasScheme::Btas, (self.btas_closed)(&s)?),
                (TasScheme::Etas, asc_etas_closed(&s)?.value()),
            ] {
                let diff = (asc_quadrature(&s, scheme)?.value() - closed).abs();
                worst = worst.max(diff);
                count += 1;
                if diff > QUAD_TOLERANCE {
                    failures += 1;
                }
            }
        }
        Ok(CheckOutcome {
            name: "closed form vs quadrature",
            passed: failures == 0,
            detail: format!("{count} comparisons, {failures} failures, max |diff| = {worst:.3e}"),
        })
    }

    pub fn mc_vs_closed(&self) -> Result<CheckOutcome> {
        let mut worst_sigmas: f64 = 0.0;
        let mut failures = 0;
        let mut count = 0;
        let mut point = 0;
        for gb in MC_SNR_GRID_DB {
            for ge in MC_SNR_GRID_DB {
                for m in MC_ANTENNA_GRID {
                    let s = Scenario::from_db(gb, ge, m)?;
                    point += 1;
                    for (scheme, closed) in [
                        (TasScheme::Btas, (self.btas_closed)(&s)?),
                        (TasScheme::Etas, asc_etas_closed(&s)?.value()),
                    ] {
                        let mc = mc_asc(&s, scheme, self.trials, &self.rng_for(scheme, m, point))?;
                        let se = mc.std_error().unwrap_or(0.0);
                        let diff = (mc.value() - closed).abs();
                        if se > 0.0 {
                            worst_sigmas = worst_sigmas.max(diff / se);
                        }
                        count += 1;
                        if diff > MC_SIGMAS * se {
                            failures += 1;
                        }
                    }
                }
            }
        }
        Ok(CheckOutcome {
            name: "Monte Carlo vs closed form (4 sigma)",
            passed: failures == 0,
            detail: format!(
                "{count} comparisons at {} trials, {failures} failures, worst = {worst_sigmas:.2} sigma",
                self.trials
            ),
        })
    }

    pub fn otas_dominance(&self) -> Result<CheckOutcome> {
        let s = Scenario::from_db(10.0, 10.0, 8)?;
        let mut rng = RngStream::new(self.seed, 0xD0);
        let mut violations = 0;
        for _ in 0..DOMINANCE_REALIZATIONS {
            let r = draw_realization(&s, &mut rng);
            let cs = |k: usize| -> Result<f64> {
                let (gb, ge) = instantaneous_snrs(&s, &r, k)?;
                instantaneous_cs(gb, ge)
            };
            let best = cs(select_otas(&s, &r).antenna)?;
            let others = [
                select_btas(&r).antenna,
                select_etas(&r).antenna,
                select_random(&s, &mut rng).antenna,
            ];
            for k in others {
                if cs(k)? > best {
                    violations += 1;
                }
            }
        }
        Ok(CheckOutcome {
            name: "O-TAS per-realization dominance",
            passed: violations == 0,
            detail: format!("{DOMINANCE_REALIZATIONS} realizations, {violations} violations"),
        })
    }

    pub fn factor_m_identity(&self) -> Result<CheckOutcome> {
        let mut worst: f64 = 0.0;
        for s in Self::grid() {
            let reduced = Scenario::new(s.gamma_b0(), s.gamma_e0() / s.num_antennas() as f64, 1)?;
            let diff = (asc_etas_closed(&s)?.value() - asc_etas_closed(&reduced)?.value()).abs();
            worst = worst.max(diff);
        }
        Ok(CheckOutcome {
            name: "E-TAS factor-M identity",
            passed: worst <= IDENTITY_TOLERANCE,
            detail: format!("max |diff| = {worst:.3e}"),
        })
    }

    pub fn single_antenna_equivalence(&self) -> Result<CheckOutcome> {
        let mut worst: f64 = 0.0;
        for gb in SNR_GRID_DB {
            for ge in SNR_GRID_DB {
                let s = Scenario::from_db(gb, ge, 1)?;
                let diff = ((self.btas_closed)(&s)? - asc_etas_closed(&s)?.value()).abs();
                worst = worst.max(diff);
            }
        }
        let mut mc_failures = 0;
        let mut point = 0;
        for gb in MC_SNR_GRID_DB {
            for ge in MC_SNR_GRID_DB {
                point += 1;
                let s = Scenario::from_db(gb, ge, 1)?;
                let closed = (self.btas_closed)(&s)?;
                let mc = mc_asc(
                    &s,
                    TasScheme::Otas,
                    self.trials,
                    &self.rng_for(TasScheme::Otas, 1, point),
                )?;
                if (mc.value() - closed).abs() > MC_SIGMAS * mc.std_error().unwrap_or(0.0) {
                    mc_failures += 1;
                }
            }
        }
        Ok(CheckOutcome {
            name: "M = 1 scheme equivalence",
            passed: worst <= IDENTITY_TOLERANCE && mc_failures == 0,
            detail: format!(
                "max |btas - etas| = {worst:.3e}, O-TAS MC failures = {mc_failures}/{point}"
            ),
        })
    }
}
