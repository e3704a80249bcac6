//! Instantaneous and average secrecy capacity.
//!
//! The average secrecy capacity (ASC) is available through three routes:
//! closed forms for B-TAS and E-TAS, adaptive quadrature of
//! `(1/ln 2) ∫₀^∞ F_E(x)[1 - F_B(x)]/(1+x) dx` for any scheme whose selected
//! SNRs are independent, and Monte Carlo for every scheme. O-TAS is evaluated
//! by Monte Carlo only.

use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::channel::{draw_realization, RngStream, Scenario};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_semi_infinite, DEFAULT_MAX_INTERVALS, DEFAULT_TOLERANCE};
use crate::special::delta_e;
use crate::tas::{cdf_exponential, cdf_max_order, cdf_min_order, select, TasScheme};

/// Trials per Monte Carlo chunk. Each chunk consumes its own substream, so
/// results do not depend on how chunks are spread over workers.
pub const MC_CHUNK_SIZE: u64 = 65_536;

/// Largest antenna count accepted by the B-TAS closed form.
pub const MAX_CLOSED_FORM_ANTENNAS: usize = 64;

/// How an [`AscEstimate`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Closed,
    Quad,
    Mc,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Closed => "closed",
            Self::Quad => "quad",
            Self::Mc => "mc",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Self::Closed),
            "quad" => Ok(Self::Quad),
            "mc" => Ok(Self::Mc),
            other => Err(Error::Argument(format!("unknown method '{other}'"))),
        }
    }
}

/// Sampling statistics attached to Monte Carlo estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McStats {
    pub trials: u64,
    pub std_error: f64,
}

/// An average secrecy capacity in bits/s/Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AscEstimate {
    value: f64,
    method: Method,
    mc: Option<McStats>,
}

impl AscEstimate {
    fn analytic(value: f64, method: Method) -> Self {
        // Rounding in the alternating B-TAS sum can dip a hair below zero.
        Self {
            value: value.max(0.0),
            method,
            mc: None,
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn trials(&self) -> Option<u64> {
        self.mc.map(|s| s.trials)
    }

    pub fn std_error(&self) -> Option<f64> {
        self.mc.map(|s| s.std_error)
    }

    pub fn mc_stats(&self) -> Option<McStats> {
        self.mc
    }
}

/// `[log₂(1+γ_B) - log₂(1+γ_E)]⁺`.
pub fn instantaneous_cs(gamma_b: f64, gamma_e: f64) -> Result<f64> {
    for (name, v) in [("gamma_b", gamma_b), ("gamma_e", gamma_e)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::Domain { name, value: v });
        }
    }
    Ok(secrecy_rate(gamma_b, gamma_e))
}

#[inline]
fn secrecy_rate(gamma_b: f64, gamma_e: f64) -> f64 {
    ((1.0 + gamma_b) / (1.0 + gamma_e)).log2().max(0.0)
}

/// Single-pass mean/variance accumulator.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Welford {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Combines two accumulators (Chan et al. pairwise update).
    pub fn merge(self, other: Self) -> Self {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let (na, nb, n) = (self.count as f64, other.count as f64, count as f64);
        Self {
            count,
            mean: self.mean + delta * nb / n,
            m2: self.m2 + other.m2 + delta * delta * na * nb / n,
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn std_error(&self) -> f64 {
        (self.variance() / self.count as f64).sqrt()
    }
}

fn mc_chunk(scenario: &Scenario, scheme: TasScheme, trials: u64, mut rng: RngStream) -> Welford {
    let mut acc = Welford::default();
    let mut realization = draw_realization(scenario, &mut rng);
    for i in 0..trials {
        if i > 0 {
            realization.redraw(&mut rng);
        }
        let k = select(scheme, scenario, &realization, &mut rng).antenna;
        let gamma_b = scenario.gamma_b0() * realization.bob_gains()[k];
        let gamma_e = scenario.gamma_e0() * realization.eve_gains()[k];
        acc.push(secrecy_rate(gamma_b, gamma_e));
    }
    acc
}

/// Monte Carlo ASC over `trials` independent fading realizations.
///
/// Trials are split into chunks of [`MC_CHUNK_SIZE`]; chunk `c` draws from
/// `rng.substream(c)`. Chunks run on the current rayon pool and are merged in
/// chunk order, so the estimate is a pure function of the scenario, scheme,
/// trial count and stream.
pub fn mc_asc(
    scenario: &Scenario,
    scheme: TasScheme,
    trials: u64,
    rng: &RngStream,
) -> Result<AscEstimate> {
    if trials < 2 {
        return Err(Error::Argument(format!(
            "Monte Carlo needs at least 2 trials (got {trials})"
        )));
    }
    let chunks = trials.div_ceil(MC_CHUNK_SIZE);
    let partials: Vec<Welford> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let n = MC_CHUNK_SIZE.min(trials - c * MC_CHUNK_SIZE);
            mc_chunk(scenario, scheme, n, rng.substream(c))
        })
        .collect();
    let acc = partials
        .into_iter()
        .fold(Welford::default(), Welford::merge);
    Ok(AscEstimate {
        value: acc.mean(),
        method: Method::Mc,
        mc: Some(McStats {
            trials: acc.count(),
            std_error: acc.std_error(),
        }),
    })
}

/// Monte Carlo is the only evaluation path for O-TAS.
pub fn asc_otas_mc(scenario: &Scenario, trials: u64, rng: &RngStream) -> Result<AscEstimate> {
    mc_asc(scenario, TasScheme::Otas, trials, rng)
}

type Cdf = Box<dyn Fn(f64) -> Result<f64>>;

/// Numerical ASC integral for schemes whose selected Bob and Eve SNRs are
/// independent (B-TAS, E-TAS, random). O-TAS is rejected.
pub fn asc_quadrature(scenario: &Scenario, scheme: TasScheme) -> Result<AscEstimate> {
    let (gb, ge, m) = (
        scenario.gamma_b0(),
        scenario.gamma_e0(),
        scenario.num_antennas(),
    );
    let cdfs: (Cdf, Cdf) = match scheme {
        TasScheme::Btas => (
            Box::new(move |x| cdf_max_order(x, gb, m)),
            Box::new(move |x| cdf_exponential(x, ge)),
        ),
        TasScheme::Etas => (
            Box::new(move |x| cdf_exponential(x, gb)),
            Box::new(move |x| cdf_min_order(x, ge, m)),
        ),
        TasScheme::Random => (
            Box::new(move |x| cdf_exponential(x, gb)),
            Box::new(move |x| cdf_exponential(x, ge)),
        ),
        TasScheme::Otas => return Err(Error::UnsupportedScheme(scheme)),
    };
    let (cdf_bob, cdf_eve) = cdfs;
    let integrand = |x: f64| match (cdf_bob(x), cdf_eve(x)) {
        (Ok(fb), Ok(fe)) => fe * (1.0 - fb) / (1.0 + x),
        _ => f64::NAN,
    };
    let result = integrate_semi_infinite(integrand, DEFAULT_TOLERANCE, DEFAULT_MAX_INTERVALS)?;
    Ok(AscEstimate::analytic(result.value / LN_2, Method::Quad))
}

/// `C(n, k)` in floating point by the multiplicative recurrence.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (1..=k).fold(1.0, |c, i| c * (n - k + i) as f64 / i as f64)
}

/// Closed-form B-TAS ASC:
/// `(1/ln 2) Σ_{k=1}^{M} C(M,k) (-1)^(k+1) ΔE(k/γ̄B₀, 1/γ̄E₀ + k/γ̄B₀)`.
pub fn asc_btas_closed(scenario: &Scenario) -> Result<AscEstimate> {
    let m = scenario.num_antennas();
    if m > MAX_CLOSED_FORM_ANTENNAS {
        return Err(Error::Argument(format!(
            "B-TAS closed form supports at most {MAX_CLOSED_FORM_ANTENNAS} antennas (got {m})"
        )));
    }
    let inv_b = 1.0 / scenario.gamma_b0();
    let inv_e = 1.0 / scenario.gamma_e0();
    let mut sum = 0.0;
    let mut coefficient = 1.0;
    for k in 1..=m {
        coefficient *= (m - k + 1) as f64 / k as f64;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let a = k as f64 * inv_b;
        sum += sign * coefficient * delta_e(a, inv_e + a)?;
    }
    Ok(AscEstimate::analytic(sum / LN_2, Method::Closed))
}

/// Closed-form E-TAS ASC: `(1/ln 2) ΔE(1/γ̄B₀, M/γ̄E₀ + 1/γ̄B₀)`.
///
/// This is the single-antenna expression with the eavesdropper SNR divided by `M`.
pub fn asc_etas_closed(scenario: &Scenario) -> Result<AscEstimate> {
    let inv_b = 1.0 / scenario.gamma_b0();
    let b = scenario.num_antennas() as f64 / scenario.gamma_e0() + inv_b;
    Ok(AscEstimate::analytic(
        delta_e(inv_b, b)? / LN_2,
        Method::Closed,
    ))
}

/// Closed form for any scheme that has one. Random selection uses the
/// single-antenna expression; O-TAS has none.
pub fn asc_closed(scenario: &Scenario, scheme: TasScheme) -> Result<AscEstimate> {
    match scheme {
        TasScheme::Btas => asc_btas_closed(scenario),
        TasScheme::Etas => asc_etas_closed(scenario),
        TasScheme::Random => asc_etas_closed(&scenario.with_antennas(1)?),
        TasScheme::Otas => Err(Error::UnsupportedScheme(scheme)),
    }
}

/// Evaluates the ASC of `scheme` with `method`. `trials` and `rng` are only
/// used by [`Method::Mc`].
pub fn asc(
    scenario: &Scenario,
    scheme: TasScheme,
    method: Method,
    trials: u64,
    rng: &RngStream,
) -> Result<AscEstimate> {
    match method {
        Method::Closed => asc_closed(scenario, scheme),
        Method::Quad => asc_quadrature(scenario, scheme),
        Method::Mc => mc_asc(scenario, scheme, trials, rng),
    }
}

/// Runs `f` on a dedicated pool of `threads` workers (0 = rayon default).
pub fn with_worker_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Argument(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}
