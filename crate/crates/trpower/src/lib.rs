//! Monte Carlo study of time-reversal precoding over a maximum-diversity
//! massive MIMO channel.
//!
//! The library simulates an `M` antenna base station transmitting towards a
//! single user over an `N` tap Rayleigh fading channel with rectangular power
//! delay profile. Time-reversal precoding weights are formed from the
//! conjugated, time-reversed channel impulse response and normalised in one of
//! three ways ([`NormalizationKind`]): per-realisation unit gain (TR), the
//! deterministic constant `sqrt(M)` (DTR) or power inversion (PI). For every
//! channel draw three relative power measures are evaluated: the per-antenna
//! transmit power, the total base station transmit power and the effective
//! received power at the user.
//!
//! Modules:
//! - [`channel`]: channel realisations and energy summaries,
//! - [`precoder`]: normalisation coefficients, weights and the effective
//!   channel impulse response,
//! - [`powers`]: the three relative power measures,
//! - [`analytic`]: Gamma-family reference distributions and moment tables,
//! - [`montecarlo`]: the deterministic, parallelisable ensemble runner with
//!   empirical distributions and tail quantiles.
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion CLI
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analytic;
pub mod channel;
mod error;
mod kahan;
pub mod montecarlo;
pub mod powers;
pub mod precoder;

pub use analytic::Tail;
pub use channel::{ChannelDims, ChannelRealization};
pub use error::Error;
pub use montecarlo::{EmpiricalDistribution, PowerSamples, SimConfig};
pub use powers::{Measure, RelativePowers};
pub use precoder::NormalizationKind;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
