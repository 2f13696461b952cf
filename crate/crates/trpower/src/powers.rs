//! The three relative power measures.
//!
//! All measures are normalised so that their nominal value is one (0 dB):
//! per-antenna transmit power `M * sum_j |w_m[-j]|^2`, base station transmit
//! power `sum_m sum_j |w_m[-j]|^2`, and effective received power
//! `(1/M) * h_eff[0]^2`. Statistics accumulate in linear scale; decibels are
//! a presentation-boundary conversion only.

use alloc::vec::Vec;

use crate::channel::{per_antenna_energies, total_energy, ChannelRealization};
use crate::precoder::{coefficient_from_energy, zero_delay_tap, NormalizationKind, PrecoderWeights};
use crate::Result;

/// Which of the three relative powers a sample array or report row refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    /// Per-antenna transmit power.
    Ant,
    /// Whole base station transmit power.
    Bs,
    /// Effective received power at the user.
    Rx,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Self::Ant, Self::Bs, Self::Rx];

    pub fn label(&self) -> &'static str {
        match self {
            Self::Ant => "ant",
            Self::Bs => "bs",
            Self::Rx => "rx",
        }
    }
}

impl core::fmt::Display for Measure {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.label())
    }
}

/// Relative transmit power of antenna `m`: `M * sum_j |w_m[-j]|^2`.
///
/// Panics if `m` is out of range.
pub fn relative_antenna_power(w: &PrecoderWeights, m: usize) -> f64 {
    let energy: f64 = w.antenna_weights(m).iter().map(|v| v.norm_sqr()).sum();
    w.dims().antennas() as f64 * energy
}

/// Relative base station transmit power: the sum over all squared weights.
///
/// Under TR this is one up to rounding for every realisation.
pub fn relative_bs_power(w: &PrecoderWeights) -> f64 {
    (0..w.dims().antennas())
        .map(|m| w.antenna_weights(m).iter().map(|v| v.norm_sqr()).sum::<f64>())
        .sum()
}

/// Relative effective received power: `(1/M) * (S/c)^2`.
///
/// PI yields one for every realisation, TR yields `S/M` and DTR `(S/M)^2`.
pub fn relative_rx_power(ch: &ChannelRealization, kind: NormalizationKind) -> Result<f64> {
    let zdt = zero_delay_tap(ch, kind)?;
    Ok(zdt * zdt / ch.dims().antennas() as f64)
}

/// Linear-to-decibel conversion, `10 log10(p)`.
///
/// Panics for non-positive input.
pub fn to_decibel(p: f64) -> f64 {
    assert!(p > 0.0, "decibel conversion requires a positive power, got {p}");
    10.0 * libm::log10(p)
}

/// All three measures evaluated for one realisation under one normalisation.
///
/// `p_bs` is constructed as the mean of the `p_ant` entries, which makes the
/// identity between the per-antenna and base station measures hold exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct RelativePowers {
    p_ant: Vec<f64>,
    p_bs: f64,
    p_rx: f64,
}

impl RelativePowers {
    /// Evaluates the measures for a channel realisation.
    pub fn compute(ch: &ChannelRealization, kind: NormalizationKind) -> Result<Self> {
        Self::from_energies(&per_antenna_energies(ch), kind)
    }

    /// Fast path from precomputed per-antenna energies.
    ///
    /// This is what the ensemble loop uses: the powers only depend on the
    /// per-antenna energies and their sum, so the weight matrix is never
    /// materialised. The full convolution stays available as a test oracle.
    pub fn from_energies(energies: &[f64], kind: NormalizationKind) -> Result<Self> {
        let antennas = energies.len();
        let m = antennas as f64;
        let s = total_energy(energies);
        let c = coefficient_from_energy(s, antennas, kind)?;
        let c_squared = match kind {
            NormalizationKind::Tr => s,
            NormalizationKind::Dtr => m,
            NormalizationKind::Pi => s * s / m,
        };
        // For DTR the scale is m/m = 1 exactly, so p_ant reproduces the
        // per-antenna energies bit for bit.
        let scale = m / c_squared;
        let p_ant: Vec<f64> = energies.iter().map(|&e| scale * e).collect();
        let p_bs = p_ant.iter().sum::<f64>() / m;
        let zdt = s / c;
        let p_rx = zdt * zdt / m;
        Ok(Self { p_ant, p_bs, p_rx })
    }

    /// Per-antenna relative powers, length `M`.
    pub fn p_ant(&self) -> &[f64] {
        &self.p_ant
    }

    /// Base station relative power; the mean of [`Self::p_ant`].
    pub fn p_bs(&self) -> f64 {
        self.p_bs
    }

    /// Effective received relative power.
    pub fn p_rx(&self) -> f64 {
        self.p_rx
    }
}
