//! Globally adaptive 15-point Gauss–Kronrod quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Default absolute tolerance for secrecy-capacity integrals.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Default subdivision cap.
pub const DEFAULT_MAX_INTERVALS: usize = 2_000;

// Kronrod abscissae (non-negative half); odd indices are the 7-point Gauss nodes.
// Tabulated to more digits than f64 holds.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Applies the G7/K15 pair on `[a, b]`; returns the Kronrod value and `|K - G|`.
fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Integrates `f` over the finite interval `[a, b]` to absolute tolerance `tol`,
/// bisecting the segment with the largest error estimate until the summed
/// estimate drops below `tol` or `max_intervals` segments exist.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_intervals: usize,
) -> Result<QuadratureResult> {
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(Error::Argument(format!("invalid interval [{a}, {b}]")));
    }
    if tol.is_nan() || tol <= 0.0 || max_intervals == 0 {
        return Err(Error::Argument(
            "tolerance and interval cap must be positive".into(),
        ));
    }
    let (value, error) = gauss_kronrod_15(&f, a, b);
    if !value.is_finite() {
        return Err(Error::Domain {
            name: "integrand",
            value,
        });
    }
    let mut heap = BinaryHeap::with_capacity(max_intervals + 1);
    heap.push(Segment { a, b, value, error });
    let mut total_error = error;

    while total_error > tol {
        if heap.len() >= max_intervals {
            return Err(Error::Convergence {
                routine: "adaptive Gauss-Kronrod quadrature",
                iterations: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let (lv, le) = gauss_kronrod_15(&f, worst.a, mid);
        let (rv, re) = gauss_kronrod_15(&f, mid, worst.b);
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: lv,
            error: le,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: rv,
            error: re,
        });
        if !(lv + rv).is_finite() {
            return Err(Error::Domain {
                name: "integrand",
                value: lv + rv,
            });
        }
        // Re-summing avoids drift from repeated incremental updates.
        total_error = heap.iter().map(|s| s.error).sum();
    }

    // Sum in position order so the result does not depend on heap layout.
    let mut segments = heap.into_vec();
    segments.sort_by(|l, r| l.a.total_cmp(&r.a));
    Ok(QuadratureResult {
        value: segments.iter().map(|s| s.value).sum(),
        abs_error: total_error,
        intervals: segments.len(),
    })
}

/// Integrates `f` over `[0, ∞)` through the substitution `x = t/(1-t)`,
/// `dx = dt/(1-t)²`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    tol: f64,
    max_intervals: usize,
) -> Result<QuadratureResult> {
    integrate(
        |t| {
            let s = 1.0 - t;
            f(t / s) / (s * s)
        },
        0.0,
        1.0,
        tol,
        max_intervals,
    )
}
