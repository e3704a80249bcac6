//! Average secrecy capacity (ASC) of a multi-antenna transmitter that uses
//! transmit antenna selection over Rayleigh fading, with a legitimate
//! receiver (Bob) and an eavesdropper (Eve).
//!
//! Four selection criteria are modelled:
//!
//! * **O-TAS** picks the antenna that maximizes the instantaneous secrecy
//!   capacity and needs both links' CSI. Evaluated by Monte Carlo.
//! * **B-TAS** picks the strongest antenna towards Bob.
//! * **E-TAS** picks the weakest antenna towards Eve.
//! * **Random** selection, the single-antenna baseline.
//!
//! B-TAS and E-TAS have closed forms built on `ΔE(a, b) = e^a E₁(a) - e^b E₁(b)`
//! and can also be integrated numerically; every scheme can be simulated.
//!
//! ```
//! use tas_secrecy::{asc_btas_closed, asc_etas_closed, Scenario};
//!
//! // γ̄B₀ = 10 dB, γ̄E₀ = 30 dB, 8 antennas: a strong eavesdropper.
//! let s = Scenario::from_db(10.0, 30.0, 8).unwrap();
//! let btas = asc_btas_closed(&s).unwrap().value();
//! let etas = asc_etas_closed(&s).unwrap().value();
//! assert!(etas > btas);
//! ```
//!
//! See the `examples/` directory of this crate for one program per capability.

pub mod channel;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod quadrature;
pub mod secrecy;
pub mod special;
pub mod tas;
pub mod verify;

pub use channel::{
    draw_realization, instantaneous_snrs, ChannelRealization, LinkBudget, RngStream, Scenario,
};
pub use error::{Error, Result};
pub use experiments::{
    adaptive_scheme, db_to_linear, find_crossover, run_sweep, CrossoverResult, SweepRow, SweepSpec,
    SweptAxis,
};
pub use secrecy::{
    asc_btas_closed, asc_closed, asc_etas_closed, asc_otas_mc, asc_quadrature, instantaneous_cs,
    mc_asc, AscEstimate, Method,
};
pub use special::{delta_e, exp_integral_e1, exp_scaled_e1, PositiveReal};
pub use tas::{
    cdf_exponential, cdf_max_order, cdf_min_order, select_btas, select_etas, select_otas,
    select_random, Selection, TasScheme,
};
