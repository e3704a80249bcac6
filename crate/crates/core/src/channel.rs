//! Link budget, scenario definition and Rayleigh-fading channel draws.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

fn positive_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain { name, value })
    }
}

/// Physical parameters of the downlink towards Bob and Eve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub transmit_power: f64,
    pub distance_bob: f64,
    pub distance_eve: f64,
    pub path_loss_exponent: f64,
    pub noise_density: f64,
}

impl LinkBudget {
    pub fn validate(&self) -> Result<()> {
        positive_finite("transmit_power", self.transmit_power)?;
        positive_finite("distance_bob", self.distance_bob)?;
        positive_finite("distance_eve", self.distance_eve)?;
        positive_finite("path_loss_exponent", self.path_loss_exponent)?;
        positive_finite("noise_density", self.noise_density)?;
        Ok(())
    }

    /// Single-antenna reference average SNRs `(γ̄B₀, γ̄E₀)`, i.e.
    /// `P_T R^(-α) / N₀` for each receiver.
    pub fn reference_snrs(&self) -> Result<(f64, f64)> {
        self.validate()?;
        let snr = |distance: f64| {
            self.transmit_power * distance.powf(-self.path_loss_exponent) / self.noise_density
        };
        Ok((snr(self.distance_bob), snr(self.distance_eve)))
    }

    pub fn scenario(&self, num_antennas: usize) -> Result<Scenario> {
        let (gamma_b0, gamma_e0) = self.reference_snrs()?;
        Scenario::new(gamma_b0, gamma_e0, num_antennas)
    }
}

/// Reference average SNRs (linear) and transmit antenna count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    gamma_b0: f64,
    gamma_e0: f64,
    num_antennas: usize,
}

impl Scenario {
    pub fn new(gamma_b0: f64, gamma_e0: f64, num_antennas: usize) -> Result<Self> {
        positive_finite("gamma_b0", gamma_b0)?;
        positive_finite("gamma_e0", gamma_e0)?;
        if num_antennas == 0 {
            return Err(Error::Argument(
                "number of antennas must be at least 1".into(),
            ));
        }
        Ok(Self {
            gamma_b0,
            gamma_e0,
            num_antennas,
        })
    }

    /// Builds a scenario from SNRs given in dB.
    pub fn from_db(gamma_b0_db: f64, gamma_e0_db: f64, num_antennas: usize) -> Result<Self> {
        Self::new(
            crate::experiments::db_to_linear(gamma_b0_db),
            crate::experiments::db_to_linear(gamma_e0_db),
            num_antennas,
        )
    }

    pub fn gamma_b0(&self) -> f64 {
        self.gamma_b0
    }

    pub fn gamma_e0(&self) -> f64 {
        self.gamma_e0
    }

    pub fn num_antennas(&self) -> usize {
        self.num_antennas
    }

    pub fn with_antennas(&self, num_antennas: usize) -> Result<Self> {
        Self::new(self.gamma_b0, self.gamma_e0, num_antennas)
    }

    pub fn with_gamma_e0(&self, gamma_e0: f64) -> Result<Self> {
        Self::new(self.gamma_b0, gamma_e0, self.num_antennas)
    }
}

/// Seeded, splittable random stream.
///
/// The ChaCha key is built from `(seed, stream_id)`; the 64-bit ChaCha stream
/// selector picks the substream. Substream 0 is the stream itself and
/// [`RngStream::substream`] hands out the others, so chunks drawn in parallel
/// never overlap and do not depend on scheduling.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self::at(seed, stream_id, 0)
    }

    fn at(seed: u64, stream_id: u64, substream: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        key[8..16].copy_from_slice(&stream_id.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(substream);
        Self {
            seed,
            stream_id,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Independent child stream `index` (fresh state, disjoint from `self`).
    pub fn substream(&self, index: u64) -> Self {
        Self::at(self.seed, self.stream_id, index.wrapping_add(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform index in `[0, n)`.
    pub fn uniform_index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    /// `|h|²` of a unit-power circularly-symmetric complex Gaussian: the sum
    /// of squares of two N(0, 1/2) variates, exponential with unit mean.
    pub fn rayleigh_gain(&mut self) -> f64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        0.5 * (re * re + im * im)
    }
}

/// One draw of the squared channel magnitudes from every antenna to Bob and Eve.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    bob_gains: Vec<f64>,
    eve_gains: Vec<f64>,
}

impl ChannelRealization {
    pub fn new(bob_gains: Vec<f64>, eve_gains: Vec<f64>) -> Result<Self> {
        if bob_gains.is_empty() || bob_gains.len() != eve_gains.len() {
            return Err(Error::Argument(format!(
                "gain vectors must be non-empty and equally long (got {} and {})",
                bob_gains.len(),
                eve_gains.len()
            )));
        }
        for &g in bob_gains.iter().chain(&eve_gains) {
            if !(g.is_finite() && g >= 0.0) {
                return Err(Error::Domain {
                    name: "channel gain",
                    value: g,
                });
            }
        }
        Ok(Self {
            bob_gains,
            eve_gains,
        })
    }

    pub fn bob_gains(&self) -> &[f64] {
        &self.bob_gains
    }

    pub fn eve_gains(&self) -> &[f64] {
        &self.eve_gains
    }

    pub fn num_antennas(&self) -> usize {
        self.bob_gains.len()
    }

    /// Overwrites the gains in place with a fresh independent draw.
    pub fn redraw(&mut self, rng: &mut RngStream) {
        for g in self.bob_gains.iter_mut() {
            *g = rng.rayleigh_gain();
        }
        for g in self.eve_gains.iter_mut() {
            *g = rng.rayleigh_gain();
        }
    }
}

/// Draws `M` Bob gains followed by `M` Eve gains, all i.i.d. Exp(1).
pub fn draw_realization(scenario: &Scenario, rng: &mut RngStream) -> ChannelRealization {
    let m = scenario.num_antennas();
    let mut realization = ChannelRealization {
        bob_gains: vec![0.0; m],
        eve_gains: vec![0.0; m],
    };
    realization.redraw(rng);
    realization
}

/// Instantaneous SNRs `(γ_B, γ_E)` when transmitting from `antenna`, with
/// unit-power symbols.
pub fn instantaneous_snrs(
    scenario: &Scenario,
    realization: &ChannelRealization,
    antenna: usize,
) -> Result<(f64, f64)> {
    let len = realization.num_antennas().min(scenario.num_antennas());
    if antenna >= len {
        return Err(Error::IndexOutOfRange {
            index: antenna,
            len: scenario.num_antennas(),
        });
    }
    Ok((
        scenario.gamma_b0 * realization.bob_gains[antenna],
        scenario.gamma_e0 * realization.eve_gains[antenna],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget(tp: f64, rb: f64, re: f64, alpha: f64, n0: f64) -> LinkBudget {
        LinkBudget {
            transmit_power: tp,
            distance_bob: rb,
            distance_eve: re,
            path_loss_exponent: alpha,
            noise_density: n0,
        }
    }

    #[test]
    fn reference_snr_examples() {
        assert_eq!(
            budget(1.0, 1.0, 1.0, 2.0, 1.0).reference_snrs().unwrap(),
            (1.0, 1.0)
        );
        let (gb, _) = budget(10.0, 10.0, 1.0, 2.0, 0.01).reference_snrs().unwrap();
        assert!((gb - 10.0).abs() < 1e-12);
        let (_, ge) = budget(1.0, 1.0, 2.0, 3.0, 1.0).reference_snrs().unwrap();
        assert_eq!(ge, 0.125);
        assert!(budget(0.0, 1.0, 1.0, 2.0, 1.0).reference_snrs().is_err());
        assert!(budget(1.0, 1.0, f64::NAN, 2.0, 1.0)
            .reference_snrs()
            .is_err());
    }

    #[test]
    fn scenario_invariants() {
        assert!(Scenario::new(1.0, 1.0, 0).is_err());
        assert!(Scenario::new(0.0, 1.0, 1).is_err());
        assert!(Scenario::new(1.0, f64::INFINITY, 1).is_err());
        let s = Scenario::from_db(10.0, 0.0, 4).unwrap();
        assert!((s.gamma_b0() - 10.0).abs() < 1e-12);
        assert_eq!(s.gamma_e0(), 1.0);
    }

    #[test]
    fn instantaneous_snr_examples() {
        let s = Scenario::new(10.0, 1.0, 2).unwrap();
        let r = ChannelRealization::new(vec![0.5, 1.0], vec![0.0, 2.0]).unwrap();
        assert_eq!(instantaneous_snrs(&s, &r, 0).unwrap(), (5.0, 0.0));
        let s3 = Scenario::new(1.0, 1.0, 3).unwrap();
        let r3 = ChannelRealization::new(vec![1.0; 3], vec![1.0; 3]).unwrap();
        assert!(matches!(
            instantaneous_snrs(&s3, &r3, 3),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        ));
    }

    #[test]
    fn snr_is_linear_in_gain() {
        let s = Scenario::new(3.3, 0.7, 1).unwrap();
        let r1 = ChannelRealization::new(vec![0.37], vec![1.9]).unwrap();
        let r2 = ChannelRealization::new(vec![0.74], vec![3.8]).unwrap();
        let (b1, e1) = instantaneous_snrs(&s, &r1, 0).unwrap();
        let (b2, e2) = instantaneous_snrs(&s, &r2, 0).unwrap();
        assert_eq!(2.0 * b1, b2);
        assert_eq!(2.0 * e1, e2);
    }

    #[test]
    fn realization_validation() {
        assert!(ChannelRealization::new(vec![], vec![]).is_err());
        assert!(ChannelRealization::new(vec![1.0], vec![1.0, 2.0]).is_err());
        assert!(ChannelRealization::new(vec![-1.0], vec![1.0]).is_err());
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let s = Scenario::new(1.0, 1.0, 4).unwrap();
        let a = draw_realization(&s, &mut RngStream::new(7, 3));
        let b = draw_realization(&s, &mut RngStream::new(7, 3));
        let c = draw_realization(&s, &mut RngStream::new(7, 4));
        let d = draw_realization(&s, &mut RngStream::new(7, 3).substream(0));
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
        assert_eq!(a.num_antennas(), 4);
    }
}
