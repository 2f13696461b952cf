//! Maximum-diversity channel model.
//!
//! Channel realisations hold the complex impulse response taps `h[m][n]` of a
//! single user towards `M` base station antennas over `N` delay taps. Taps are
//! drawn i.i.d. from a zero-mean circular symmetric complex normal
//! distribution with variance `1/N`, the rectangular power delay profile that
//! makes the expected per-antenna energy equal to one.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::kahan::{compensated_sum, CompensatedSum};
use crate::{Error, Result};

/// Antenna and tap counts of a channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChannelDims {
    antennas: usize,
    taps: usize,
}

impl ChannelDims {
    /// Both counts must be at least one.
    pub fn new(antennas: usize, taps: usize) -> Result<Self> {
        if antennas == 0 || taps == 0 {
            return Err(Error::InvalidDims { antennas, taps });
        }
        Ok(Self { antennas, taps })
    }

    pub fn antennas(&self) -> usize {
        self.antennas
    }

    pub fn taps(&self) -> usize {
        self.taps
    }

    /// Total number of complex taps, `M * N`.
    pub fn tap_count(&self) -> usize {
        self.antennas * self.taps
    }
}

/// One draw of the channel: an `M x N` complex tap matrix.
///
/// Delay indices are zero based; only the relative delay support matters for
/// the precoding math. Realisations are immutable after construction and safe
/// to share between workers.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelRealization {
    dims: ChannelDims,
    /// Row-major `M x N`: `taps[m * N + n] = h_m[n]`.
    taps: Vec<Complex64>,
}

impl ChannelRealization {
    /// Builds a realisation from explicit taps (row-major, `M * N` entries).
    pub fn from_taps(dims: ChannelDims, taps: Vec<Complex64>) -> Result<Self> {
        if taps.len() != dims.tap_count() {
            return Err(Error::TapCountMismatch {
                expected: dims.tap_count(),
                got: taps.len(),
            });
        }
        if !taps.iter().all(|t| t.re.is_finite() && t.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dims, taps })
    }

    pub fn dims(&self) -> ChannelDims {
        self.dims
    }

    /// Tap `h_m[n]`.
    pub fn tap(&self, m: usize, n: usize) -> Complex64 {
        self.antenna_taps(m)[n]
    }

    /// All `N` taps of antenna `m`.
    pub fn antenna_taps(&self, m: usize) -> &[Complex64] {
        let n = self.dims.taps;
        assert!(
            m < self.dims.antennas,
            "antenna index {m} out of range for {} antennas",
            self.dims.antennas
        );
        &self.taps[m * n..(m + 1) * n]
    }
}

/// Draws one channel realisation from the maximum-diversity model.
///
/// Each tap takes two independent normal draws (real part first) with
/// variance `1/(2N)` each, so the complex tap variance is `1/N`. The draw
/// order is row-major over antennas and delays, which makes the output a
/// bit-for-bit deterministic function of the RNG stream.
pub fn generate_channel<R: Rng + ?Sized>(dims: ChannelDims, rng: &mut R) -> ChannelRealization {
    let sigma = libm::sqrt(1.0 / (2.0 * dims.taps as f64));
    let mut taps = Vec::with_capacity(dims.tap_count());
    for _ in 0..dims.tap_count() {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        taps.push(Complex64::new(re * sigma, im * sigma));
    }
    ChannelRealization { dims, taps }
}

/// Total channel energy `S = sum_m sum_n |h_m[n]|^2`.
pub fn channel_energy(ch: &ChannelRealization) -> f64 {
    compensated_sum(ch.taps.iter().map(|t| t.norm_sqr()))
}

/// Energy of antenna `m`: `sum_n |h_m[n]|^2`.
///
/// Panics if `m` is out of range.
pub fn per_antenna_energy(ch: &ChannelRealization, m: usize) -> f64 {
    compensated_sum(ch.antenna_taps(m).iter().map(|t| t.norm_sqr()))
}

/// Energies of all antennas in one pass.
pub fn per_antenna_energies(ch: &ChannelRealization) -> Vec<f64> {
    (0..ch.dims.antennas)
        .map(|m| per_antenna_energy(ch, m))
        .collect()
}

/// Sum of precomputed per-antenna energies; the `S` used by the fast
/// ensemble path.
pub(crate) fn total_energy(energies: &[f64]) -> f64 {
    let mut acc = CompensatedSum::new();
    for &e in energies {
        acc.add(e);
    }
    acc.total()
}
