use crate::tas::TasScheme;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{name} = {value} is outside the domain of the operation")]
    Domain { name: &'static str, value: f64 },

    #[error("antenna index {index} out of range for {len} antennas")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("{routine} did not converge after {iterations} iterations")]
    Convergence {
        routine: &'static str,
        iterations: usize,
    },

    #[error("scheme {0} is not supported by this evaluation method")]
    UnsupportedScheme(TasScheme),

    #[error("no B-TAS/E-TAS crossover in bracket [{lo_db}, {hi_db}] dB")]
    NoCrossover { lo_db: f64, hi_db: f64 },

    #[error("O-TAS estimate is zero at swept value {swept_value_db} dB (M = {antennas}); cannot normalize")]
    DegenerateNormalization {
        swept_value_db: f64,
        antennas: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
