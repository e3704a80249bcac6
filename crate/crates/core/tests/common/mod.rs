//! Test-only oracles. Nothing here calls into the crate's numerics.

#![allow(dead_code)]

/// Adaptive Simpson quadrature with Richardson correction on `[a, b]`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
    }

    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, m, fm, whole, tol, 48)
}

/// `e^x E₁(x)` from `∫₀^∞ exp(-x (e^u - 1)) du` (substitution `t = x e^u`).
pub fn scaled_e1_oracle(x: f64) -> f64 {
    let upper = (1.0 + 745.0 / x).ln();
    let tol = 1e-15 / (x + 1.0);
    adaptive_simpson(&|u: f64| (-x * u.exp_m1()).exp(), 0.0, upper, tol)
}

pub fn e1_oracle(x: f64) -> f64 {
    scaled_e1_oracle(x) * (-x).exp()
}

/// `ΔE(a, b)` from the oracle.
pub fn delta_e_oracle(a: f64, b: f64) -> f64 {
    scaled_e1_oracle(a) - scaled_e1_oracle(b)
}

/// Kolmogorov–Smirnov distance between a sample and a continuous CDF.
pub fn ks_statistic(mut sample: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    sample.sort_by(f64::total_cmp);
    let n = sample.len() as f64;
    sample
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Critical KS distance at 1% significance for large samples.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.628 / (n as f64).sqrt()
}

pub fn exp_cdf(x: f64, mean: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        1.0 - (-x / mean).exp()
    }
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (l, h) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (l + (h - l) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// `(1/ln2) ∫₀^∞ F_E(x)(1 - F_B(x))/(1 + x) dx` by Simpson on `x = u/(1-u)`.
pub fn asc_oracle(cdf_bob: impl Fn(f64) -> f64, cdf_eve: impl Fn(f64) -> f64) -> f64 {
    let f = |u: f64| {
        if u >= 1.0 {
            return 0.0;
        }
        let x = u / (1.0 - u);
        cdf_eve(x) * (1.0 - cdf_bob(x)) / (1.0 + x) / ((1.0 - u) * (1.0 - u))
    };
    adaptive_simpson(&f, 0.0, 1.0, 1e-13) / std::f64::consts::LN_2
}

/// Bob's selected-gain CDF under B-TAS, for mean SNR `g` and `m` antennas.
pub fn max_of_exp_cdf(x: f64, g: f64, m: usize) -> f64 {
    exp_cdf(x, g).powi(m as i32)
}

/// Eve's gain CDF under E-TAS: the minimum of `m` exponentials.
pub fn min_of_exp_cdf(x: f64, g: f64, m: usize) -> f64 {
    exp_cdf(x, g / m as f64)
}
