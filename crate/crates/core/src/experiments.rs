//! Parameter sweeps, B-TAS/E-TAS crossover search and the adaptive
//! scheme-switching policy.

use std::fmt;
use std::str::FromStr;

use crate::channel::{RngStream, Scenario};
use crate::error::{Error, Result};
use crate::secrecy::{
    asc_btas_closed, asc_etas_closed, asc_quadrature, mc_asc, AscEstimate, Method,
};
use crate::tas::TasScheme;

/// Converts a power ratio in dB to linear scale.
pub fn db_to_linear(x_db: f64) -> f64 {
    10f64.powf(x_db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Which reference SNR a sweep moves along.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweptAxis {
    /// γ̄B₀ varies, γ̄E₀ is fixed.
    GammaB,
    /// γ̄E₀ varies, γ̄B₀ is fixed.
    GammaE,
    /// γ̄E₀/γ̄B₀ varies, γ̄B₀ is fixed.
    Ratio,
}

impl SweptAxis {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::GammaB => "gamma-b",
            Self::GammaE => "gamma-e",
            Self::Ratio => "ratio",
        }
    }

    /// `(γ̄B₀, γ̄E₀)` in dB for a swept value.
    fn reference_snrs_db(self, swept_db: f64, fixed_db: f64) -> (f64, f64) {
        match self {
            Self::GammaB => (swept_db, fixed_db),
            Self::GammaE => (fixed_db, swept_db),
            Self::Ratio => (fixed_db, fixed_db + swept_db),
        }
    }
}

impl fmt::Display for SweptAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweptAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma-b" => Ok(Self::GammaB),
            "gamma-e" => Ok(Self::GammaE),
            "ratio" => Ok(Self::Ratio),
            other => Err(Error::Argument(format!("unknown swept axis '{other}'"))),
        }
    }
}

/// Definition of a sweep over one reference SNR (or their ratio).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub swept: SweptAxis,
    pub start_db: f64,
    pub stop_db: f64,
    pub points: usize,
    /// γ̄E₀ when sweeping γ̄B₀, otherwise γ̄B₀.
    pub fixed_gamma_db: f64,
    pub antennas: Vec<usize>,
    pub schemes: Vec<TasScheme>,
    pub mc_trials: u64,
    pub seed: u64,
    /// Divide every ASC by the O-TAS Monte Carlo value at the same point.
    pub normalize_to_otas: bool,
    /// Evaluation route for B-TAS/E-TAS rows: [`Method::Closed`] or [`Method::Quad`].
    pub analytic_method: Method,
    /// Also emit Monte Carlo rows for B-TAS/E-TAS (validation markers).
    pub mc_overlay: bool,
}

impl SweepSpec {
    pub fn new(
        swept: SweptAxis,
        start_db: f64,
        stop_db: f64,
        points: usize,
        fixed_gamma_db: f64,
    ) -> Self {
        Self {
            swept,
            start_db,
            stop_db,
            points,
            fixed_gamma_db,
            antennas: vec![2],
            schemes: vec![TasScheme::Btas, TasScheme::Etas],
            mc_trials: 1_000_000,
            seed: 42,
            normalize_to_otas: false,
            analytic_method: Method::Closed,
            mc_overlay: false,
        }
    }

    fn needs_mc(&self) -> bool {
        self.normalize_to_otas
            || self.mc_overlay
            || self
                .schemes
                .iter()
                .any(|s| matches!(s, TasScheme::Otas | TasScheme::Random))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Argument(msg));
        if !(self.start_db.is_finite()
            && self.stop_db.is_finite()
            && self.fixed_gamma_db.is_finite())
        {
            return bad("sweep bounds must be finite".into());
        }
        if self.start_db >= self.stop_db {
            return bad(format!(
                "sweep start {} dB must be below stop {} dB",
                self.start_db, self.stop_db
            ));
        }
        if self.points < 2 {
            return bad(format!(
                "sweep needs at least 2 points (got {})",
                self.points
            ));
        }
        if self.antennas.is_empty() || self.antennas.contains(&0) {
            return bad("antenna list must be non-empty with every M >= 1".into());
        }
        if self.schemes.is_empty() {
            return bad("scheme list must not be empty".into());
        }
        if self.needs_mc() && self.mc_trials < 2 {
            return bad(format!(
                "Monte Carlo rows need at least 2 trials (got {})",
                self.mc_trials
            ));
        }
        if self.analytic_method == Method::Mc {
            return bad("analytic method must be closed or quad".into());
        }
        Ok(())
    }

    /// Swept values in dB, linearly spaced and including both ends.
    pub fn grid_db(&self) -> Vec<f64> {
        let step = (self.stop_db - self.start_db) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.stop_db
                } else {
                    self.start_db + step * i as f64
                }
            })
            .collect()
    }
}

/// One plotted point; the CSV record of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub swept_value_db: f64,
    pub gamma_b0_db: f64,
    pub gamma_e0_db: f64,
    pub antennas: usize,
    pub scheme: TasScheme,
    pub method: Method,
    pub asc: f64,
    pub std_error: Option<f64>,
    pub trials: Option<u64>,
}

/// Stream used for every Monte Carlo estimate of `scheme` at `antennas`.
///
/// It does not depend on the grid point, so neighbouring points share common
/// random numbers and MC curves come out smooth.
pub fn mc_stream_id(scheme: TasScheme, antennas: usize) -> u64 {
    let scheme_tag = match scheme {
        TasScheme::Otas => 1u64,
        TasScheme::Btas => 2,
        TasScheme::Etas => 3,
        TasScheme::Random => 4,
    };
    (scheme_tag << 32) | antennas as u64
}

fn sorted_unique<T: Ord + Copy>(items: &[T]) -> Vec<T> {
    let mut v = items.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Evaluates every (grid point, M, scheme) combination of `spec`.
///
/// B-TAS/E-TAS use the analytic route, O-TAS and random selection use Monte
/// Carlo. Rows are ordered by swept value, then M, then scheme
/// (otas, btas, etas, random), then method (closed, quad, mc).
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let antennas = sorted_unique(&spec.antennas);
    let schemes = sorted_unique(&spec.schemes);
    let mut rows = Vec::new();

    for swept_db in spec.grid_db() {
        let (gb_db, ge_db) = spec.swept.reference_snrs_db(swept_db, spec.fixed_gamma_db);
        for &m in &antennas {
            let scenario = Scenario::from_db(gb_db, ge_db, m)?;
            let mc = |scheme: TasScheme| {
                let rng = RngStream::new(spec.seed, mc_stream_id(scheme, m));
                mc_asc(&scenario, scheme, spec.mc_trials, &rng)
            };
            let otas = if spec.normalize_to_otas || schemes.contains(&TasScheme::Otas) {
                Some(mc(TasScheme::Otas)?)
            } else {
                None
            };

            let mut point_rows: Vec<(TasScheme, AscEstimate)> = Vec::new();
            for &scheme in &schemes {
                match scheme {
                    TasScheme::Otas => point_rows.push((scheme, otas.expect("computed above"))),
                    TasScheme::Random => point_rows.push((scheme, mc(scheme)?)),
                    TasScheme::Btas | TasScheme::Etas => {
                        let analytic = match (spec.analytic_method, scheme) {
                            (Method::Quad, _) => asc_quadrature(&scenario, scheme)?,
                            (_, TasScheme::Btas) => asc_btas_closed(&scenario)?,
                            _ => asc_etas_closed(&scenario)?,
                        };
                        point_rows.push((scheme, analytic));
                        if spec.mc_overlay {
                            point_rows.push((scheme, mc(scheme)?));
                        }
                    }
                }
            }

            let denominator = match (spec.normalize_to_otas, otas) {
                (true, Some(o)) if o.value() > 0.0 => Some(o.value()),
                (true, _) => {
                    return Err(Error::DegenerateNormalization {
                        swept_value_db: swept_db,
                        antennas: m,
                    })
                }
                (false, _) => None,
            };

            for (scheme, est) in point_rows {
                let normalize = |v: f64| denominator.map_or(v, |d| v / d);
                rows.push(SweepRow {
                    swept_value_db: swept_db,
                    gamma_b0_db: gb_db,
                    gamma_e0_db: ge_db,
                    antennas: m,
                    scheme,
                    method: est.method(),
                    asc: normalize(est.value()),
                    std_error: est.std_error().map(normalize),
                    trials: est.trials(),
                });
            }
        }
    }
    Ok(rows)
}

/// Root of `asc_btas_closed - asc_etas_closed` in the SNR ratio γ̄E₀/γ̄B₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverResult {
    pub gamma_b0_db: f64,
    pub antennas: usize,
    pub crossover_ratio_db: f64,
    pub residual: f64,
}

/// Default search bracket for the crossover ratio, in dB.
pub const DEFAULT_CROSSOVER_BRACKET_DB: (f64, f64) = (-30.0, 30.0);

const CROSSOVER_RESIDUAL_TOL: f64 = 1e-9;
const CROSSOVER_WIDTH_TOL_DB: f64 = 1e-10;

/// `asc_btas_closed - asc_etas_closed` at `γ̄E₀ = γ̄B₀ · ratio`.
pub fn btas_minus_etas(gamma_b0_db: f64, ratio_db: f64, antennas: usize) -> Result<f64> {
    let scenario = Scenario::from_db(gamma_b0_db, gamma_b0_db + ratio_db, antennas)?;
    Ok(asc_btas_closed(&scenario)?.value() - asc_etas_closed(&scenario)?.value())
}

/// Bisects the SNR ratio (dB) at which B-TAS and E-TAS have equal closed-form
/// ASC. B-TAS is the better scheme below the root, E-TAS above it.
pub fn find_crossover(
    gamma_b0_db: f64,
    antennas: usize,
    bracket_db: (f64, f64),
) -> Result<CrossoverResult> {
    if antennas < 2 {
        return Err(Error::Argument(format!(
            "crossover needs M >= 2; with M = {antennas} both schemes coincide"
        )));
    }
    let (mut lo, mut hi) = bracket_db;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Argument(format!("invalid bracket [{lo}, {hi}] dB")));
    }
    let g = |r: f64| btas_minus_etas(gamma_b0_db, r, antennas);
    let mut g_lo = g(lo)?;
    let g_hi = g(hi)?;
    let result = |r: f64, residual: f64| CrossoverResult {
        gamma_b0_db,
        antennas,
        crossover_ratio_db: r,
        residual,
    };
    if g_lo == 0.0 {
        return Ok(result(lo, 0.0));
    }
    if g_hi == 0.0 {
        return Ok(result(hi, 0.0));
    }
    if g_lo.signum() == g_hi.signum() {
        return Err(Error::NoCrossover {
            lo_db: bracket_db.0,
            hi_db: bracket_db.1,
        });
    }

    for iteration in 1.. {
        let mid = 0.5 * (lo + hi);
        let g_mid = g(mid)?;
        if g_mid == 0.0 || hi - lo <= CROSSOVER_WIDTH_TOL_DB {
            if g_mid.abs() > CROSSOVER_RESIDUAL_TOL {
                return Err(Error::Convergence {
                    routine: "crossover bisection",
                    iterations: iteration,
                });
            }
            return Ok(result(mid, g_mid));
        }
        if g_mid.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    unreachable!("bisection loop only exits by returning")
}

/// Picks whichever of B-TAS and E-TAS has the larger closed-form ASC for
/// the average SNRs of `scenario`; ties go to B-TAS.
pub fn adaptive_scheme(scenario: &Scenario) -> Result<(TasScheme, AscEstimate)> {
    let btas = asc_btas_closed(scenario)?;
    let etas = asc_etas_closed(scenario)?;
    if btas.value() >= etas.value() {
        Ok((TasScheme::Btas, btas))
    } else {
        Ok((TasScheme::Etas, etas))
    }
}
