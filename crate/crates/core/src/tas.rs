//! Transmit antenna selection criteria and the order-statistic CDFs they
//! induce on the selected link.
//!
//! All argmax/argmin selections break ties towards the lowest index.

use std::fmt;
use std::str::FromStr;

use crate::channel::{ChannelRealization, RngStream, Scenario};
use crate::error::{Error, Result};

/// Antenna selection criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TasScheme {
    /// Maximizes the instantaneous secrecy capacity (needs both links' CSI).
    Otas,
    /// Maximizes the legitimate channel gain.
    Btas,
    /// Minimizes the eavesdropper channel gain.
    Etas,
    /// Uniformly random antenna.
    Random,
}

impl TasScheme {
    pub const ALL: [TasScheme; 4] = [Self::Otas, Self::Btas, Self::Etas, Self::Random];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Otas => "otas",
            Self::Btas => "btas",
            Self::Etas => "etas",
            Self::Random => "random",
        }
    }
}

impl fmt::Display for TasScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TasScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "otas" => Ok(Self::Otas),
            "btas" => Ok(Self::Btas),
            "etas" => Ok(Self::Etas),
            "random" => Ok(Self::Random),
            other => Err(Error::Argument(format!("unknown scheme '{other}'"))),
        }
    }
}

/// The antenna chosen by a scheme for one realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Selection {
    pub antenna: usize,
    pub scheme: TasScheme,
}

fn arg_best(values: impl Iterator<Item = f64>, better: impl Fn(f64, f64) -> bool) -> usize {
    let mut best_index = 0;
    let mut best = f64::NAN;
    for (i, v) in values.enumerate() {
        if i == 0 || better(v, best) {
            best_index = i;
            best = v;
        }
    }
    best_index
}

/// Index maximizing `X_i = (1 + γ̄B₀|h_B|²) / (1 + γ̄E₀|h_E|²)`.
///
/// An index is returned even when every `X_i <= 1`; the secrecy capacity
/// clamps to zero downstream.
pub fn select_otas(scenario: &Scenario, realization: &ChannelRealization) -> Selection {
    let (gb, ge) = (scenario.gamma_b0(), scenario.gamma_e0());
    let ratios = realization
        .bob_gains()
        .iter()
        .zip(realization.eve_gains())
        .map(|(&b, &e)| (1.0 + gb * b) / (1.0 + ge * e));
    Selection {
        antenna: arg_best(ratios, |v, best| v > best),
        scheme: TasScheme::Otas,
    }
}

pub fn select_btas(realization: &ChannelRealization) -> Selection {
    Selection {
        antenna: arg_best(realization.bob_gains().iter().copied(), |v, best| v > best),
        scheme: TasScheme::Btas,
    }
}

pub fn select_etas(realization: &ChannelRealization) -> Selection {
    Selection {
        antenna: arg_best(realization.eve_gains().iter().copied(), |v, best| v < best),
        scheme: TasScheme::Etas,
    }
}

pub fn select_random(scenario: &Scenario, rng: &mut RngStream) -> Selection {
    let m = scenario.num_antennas();
    let antenna = if m == 1 { 0 } else { rng.uniform_index(m) };
    Selection {
        antenna,
        scheme: TasScheme::Random,
    }
}

/// Dispatches to the selector of `scheme`. `rng` is only consumed by
/// [`TasScheme::Random`].
pub fn select(
    scheme: TasScheme,
    scenario: &Scenario,
    realization: &ChannelRealization,
    rng: &mut RngStream,
) -> Selection {
    match scheme {
        TasScheme::Otas => select_otas(scenario, realization),
        TasScheme::Btas => select_btas(realization),
        TasScheme::Etas => select_etas(realization),
        TasScheme::Random => select_random(scenario, rng),
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "beta",
            value: beta,
        })
    }
}

fn check_order(m: usize) -> Result<()> {
    if m == 0 {
        Err(Error::Argument("order statistic needs m >= 1".into()))
    } else {
        Ok(())
    }
}

/// CDF of an exponential variable with mean `beta`.
pub fn cdf_exponential(x: f64, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    if x <= 0.0 {
        return Ok(0.0);
    }
    Ok(-(-x / beta).exp_m1())
}

/// CDF of the maximum of `m` i.i.d. exponentials with mean `beta`.
pub fn cdf_max_order(x: f64, beta: f64, m: usize) -> Result<f64> {
    check_order(m)?;
    Ok(cdf_exponential(x, beta)?.powi(m as i32))
}

/// CDF of the minimum of `m` i.i.d. exponentials with mean `beta`.
pub fn cdf_min_order(x: f64, beta: f64, m: usize) -> Result<f64> {
    check_order(m)?;
    check_beta(beta)?;
    if x <= 0.0 {
        return Ok(0.0);
    }
    // 1 - (1 - F)^m = 1 - e^(-m x / beta)
    Ok(-(-(m as f64) * x / beta).exp_m1())
}
