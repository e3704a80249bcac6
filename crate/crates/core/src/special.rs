//! Exponential integral E₁ and the ΔE difference used by the closed-form
//! secrecy capacities.
//!
//! Two evaluation regions are used:
//!
//! * `x <= 1`: the convergent power series
//!   `E₁(x) = -γ - ln x + Σ_{k≥1} (-1)^(k+1) x^k / (k·k!)`
//! * `x > 1`: the continued fraction for `e^x E₁(x)`, evaluated with the
//!   modified Lentz method. The `e^(-x)` prefactor is applied only when the
//!   unscaled value is requested, so the scaled form never overflows.

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const MAX_ITERATIONS: usize = 10_000;
const TINY: f64 = 1.0e-300;

/// A strictly positive, finite real.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PositiveReal(f64);

impl PositiveReal {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Self(value))
        } else {
            Err(Error::Domain { name: "x", value })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for PositiveReal {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

/// Exponential integral `E₁(x) = ∫ₓ^∞ e^(-t)/t dt` for `x > 0`.
///
/// Underflows towards zero beyond `x ≈ 708`.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    let x = PositiveReal::new(x)?.get();
    if x <= 1.0 {
        e1_series(x)
    } else {
        Ok(scaled_e1_continued_fraction(x)? * (-x).exp())
    }
}

/// Scaled exponential integral `e^x · E₁(x)` for `x > 0`.
///
/// Bounded by `1/(x+1) < e^x E₁(x) < 1/x` and strictly decreasing.
pub fn exp_scaled_e1(x: f64) -> Result<f64> {
    let x = PositiveReal::new(x)?.get();
    if x <= 1.0 {
        Ok(e1_series(x)? * x.exp())
    } else {
        scaled_e1_continued_fraction(x)
    }
}

/// `ΔE(a, b) = e^a E₁(a) - e^b E₁(b)`.
///
/// Positive iff `b > a`.
pub fn delta_e(a: f64, b: f64) -> Result<f64> {
    if a == b {
        PositiveReal::new(a)?;
        return Ok(0.0);
    }
    Ok(exp_scaled_e1(a)? - exp_scaled_e1(b)?)
}

fn e1_series(x: f64) -> Result<f64> {
    // term_k = (-1)^(k+1) x^k / k!
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 1..=MAX_ITERATIONS {
        let kf = k as f64;
        term *= -x / kf;
        let contribution = -term / kf;
        sum += contribution;
        if contribution.abs() < f64::EPSILON * sum.abs() {
            return Ok(-EULER_GAMMA - x.ln() + sum);
        }
    }
    Err(Error::Convergence {
        routine: "E1 power series",
        iterations: MAX_ITERATIONS,
    })
}

/// Even contraction of the E₁ continued fraction,
/// `e^x E₁(x) = 1/(x+1- 1²/(x+3- 2²/(x+5- ...)))`.
fn scaled_e1_continued_fraction(x: f64) -> Result<f64> {
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=MAX_ITERATIONS {
        let an = -((i * i) as f64);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).abs() <= f64::EPSILON {
            return Ok(h);
        }
    }
    Err(Error::Convergence {
        routine: "E1 continued fraction",
        iterations: MAX_ITERATIONS,
    })
}
