//! Time-reversal precoding.
//!
//! Weights are the conjugated, time-reversed channel taps scaled by a
//! normalisation coefficient: `w_m[-j] = conj(h_m[j]) / c`. The reversal is an
//! indexing convention recorded in [`PrecoderWeights`]; arrays are stored in
//! forward order so the defining identity stays testable entry by entry.
//!
//! Summing the per-antenna convolutions of channel and weights gives the
//! effective channel impulse response seen by the user. Its zero-delay tap has
//! the closed form `S / c` with `S` the total channel energy; the full
//! convolution here is deliberately direct (`O(N^2)` per antenna) so it can
//! double as the oracle for that closed form.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::channel::{channel_energy, ChannelRealization};
use crate::{ChannelDims, Error, Result};

/// The three normalisations of the time-reversal weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormalizationKind {
    /// Per-realisation unit gain: `c = sqrt(S)`.
    Tr,
    /// Distributed time reversal, the deterministic constant `c = sqrt(M)`.
    Dtr,
    /// Power inversion: `c = S / sqrt(M)`, more power for weaker channels.
    Pi,
}

impl NormalizationKind {
    /// Canonical ordering used everywhere samples or rows are emitted.
    pub const ALL: [NormalizationKind; 3] = [Self::Tr, Self::Dtr, Self::Pi];

    pub fn label(&self) -> &'static str {
        match self {
            Self::Tr => "tr",
            Self::Dtr => "dtr",
            Self::Pi => "pi",
        }
    }
}

impl core::fmt::Display for NormalizationKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.label())
    }
}

/// Normalisation coefficient from a precomputed channel energy.
///
/// Shared by the channel-level operation and the ensemble fast path so both
/// produce identical floating point values.
pub(crate) fn coefficient_from_energy(
    energy: f64,
    antennas: usize,
    kind: NormalizationKind,
) -> Result<f64> {
    let m = antennas as f64;
    match kind {
        NormalizationKind::Tr | NormalizationKind::Pi if energy <= 0.0 => {
            Err(Error::DegenerateChannel { kind: kind.label() })
        }
        NormalizationKind::Tr => Ok(libm::sqrt(energy)),
        NormalizationKind::Dtr => Ok(libm::sqrt(m)),
        NormalizationKind::Pi => Ok(energy / libm::sqrt(m)),
    }
}

/// Computes the normalisation coefficient `c` for a channel realisation.
///
/// TR and PI divide by the realised energy and reject a zero-energy channel;
/// DTR is defined for any realisation.
pub fn normalization_coefficient(ch: &ChannelRealization, kind: NormalizationKind) -> Result<f64> {
    coefficient_from_energy(channel_energy(ch), ch.dims().antennas(), kind)
}

/// Precoding weight matrix for one channel realisation.
///
/// Entry `(m, j)` is the weight at delay `-j`, i.e. `w_m[-j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrecoderWeights {
    dims: ChannelDims,
    kind: NormalizationKind,
    coefficient: f64,
    /// Row-major `M x N`: `weights[m * N + j] = w_m[-j]`.
    weights: Vec<Complex64>,
}

impl PrecoderWeights {
    pub fn dims(&self) -> ChannelDims {
        self.dims
    }

    pub fn kind(&self) -> NormalizationKind {
        self.kind
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    /// Weight at delay `-j` for antenna `m`.
    pub fn weight(&self, m: usize, j: usize) -> Complex64 {
        self.antenna_weights(m)[j]
    }

    /// All weights of antenna `m` in delay order `0, -1, ..., -(N-1)`.
    pub fn antenna_weights(&self, m: usize) -> &[Complex64] {
        let n = self.dims.taps();
        assert!(
            m < self.dims.antennas(),
            "antenna index {m} out of range for {} antennas",
            self.dims.antennas()
        );
        &self.weights[m * n..(m + 1) * n]
    }
}

/// Builds the time-reversal weights `w_m[-j] = conj(h_m[j]) / c`.
pub fn compute_weights(ch: &ChannelRealization, kind: NormalizationKind) -> Result<PrecoderWeights> {
    let c = normalization_coefficient(ch, kind)?;
    let dims = ch.dims();
    let mut weights = Vec::with_capacity(dims.tap_count());
    for m in 0..dims.antennas() {
        for tap in ch.antenna_taps(m) {
            weights.push(tap.conj() / c);
        }
    }
    Ok(PrecoderWeights {
        dims,
        kind,
        coefficient: c,
        weights,
    })
}

/// Effective channel impulse response on the delay support `-(N-1)..=(N-1)`.
///
/// The zero-delay value is the coherent sum of the per-antenna autocorrelation
/// peaks: real, nonnegative, and at least as large in magnitude as every other
/// tap.
#[derive(Clone, Debug, PartialEq)]
pub struct EffectiveChannelIR {
    /// `values[i]` is the tap at delay `i - (N - 1)`.
    values: Vec<Complex64>,
}

impl EffectiveChannelIR {
    /// Largest delay magnitude, `N - 1`.
    pub fn max_delay(&self) -> isize {
        (self.values.len() / 2) as isize
    }

    /// Tap at `delay`, which must lie in `-(N-1)..=(N-1)`.
    pub fn value(&self, delay: isize) -> Complex64 {
        let idx = delay + self.max_delay();
        assert!(
            (0..self.values.len() as isize).contains(&idx),
            "delay {delay} outside support"
        );
        self.values[idx as usize]
    }

    /// The coherent peak at delay zero.
    pub fn zero_delay(&self) -> Complex64 {
        self.values[self.values.len() / 2]
    }

    /// Taps in delay order from `-(N-1)` to `N-1`.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// Sums the per-antenna convolutions of channel and weights.
///
/// Panics if the weights were computed for different dimensions.
pub fn effective_channel(ch: &ChannelRealization, w: &PrecoderWeights) -> EffectiveChannelIR {
    assert_eq!(ch.dims(), w.dims(), "channel and weight dimensions differ");
    let n = ch.dims().taps() as isize;
    let mut values = Vec::with_capacity(2 * n as usize - 1);
    for delay in -(n - 1)..=(n - 1) {
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 0..ch.dims().antennas() {
            let taps = ch.antenna_taps(m);
            let weights = w.antenna_weights(m);
            // (h * w)[delay] = sum_k h[k] w[delay - k]; w[delay - k] is stored
            // at index j = k - delay.
            for k in 0..n {
                let j = k - delay;
                if (0..n).contains(&j) {
                    acc += taps[k as usize] * weights[j as usize];
                }
            }
        }
        values.push(acc);
    }
    EffectiveChannelIR { values }
}

/// Closed form of the effective zero-delay tap, `S / c`.
///
/// No convolution is evaluated; the value matches
/// `effective_channel(..).zero_delay()` to within 1e-10 relative.
pub fn zero_delay_tap(ch: &ChannelRealization, kind: NormalizationKind) -> Result<f64> {
    let s = channel_energy(ch);
    let c = coefficient_from_energy(s, ch.dims().antennas(), kind)?;
    Ok(s / c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::generate_channel;
    use crate::montecarlo::substream;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn from_rows(rows: &[&[Complex64]]) -> ChannelRealization {
        let dims = ChannelDims::new(rows.len(), rows[0].len()).unwrap();
        ChannelRealization::from_taps(dims, rows.concat()).unwrap()
    }

    fn sample_2x2() -> ChannelRealization {
        from_rows(&[
            &[c(1.0, 0.0), c(1.0, 0.0)],
            &[c(1.0, 0.0), c(0.0, 0.0)],
        ])
    }

    #[test]
    fn coefficients_coincide_for_unit_channel() {
        let ch = from_rows(&[&[c(1.0, 0.0)]]);
        for kind in NormalizationKind::ALL {
            assert_eq!(normalization_coefficient(&ch, kind).unwrap(), 1.0);
        }
    }

    #[test]
    fn coefficients_direct_arithmetic() {
        let ch = sample_2x2();
        assert_relative_eq!(
            normalization_coefficient(&ch, NormalizationKind::Tr).unwrap(),
            3.0_f64.sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            normalization_coefficient(&ch, NormalizationKind::Dtr).unwrap(),
            2.0_f64.sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            normalization_coefficient(&ch, NormalizationKind::Pi).unwrap(),
            3.0 / 2.0_f64.sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn coefficients_equal_when_energy_matches_antenna_count() {
        // |h|^2 = 1/N exactly for every tap, so S = M exactly.
        let dims = ChannelDims::new(3, 4).unwrap();
        let ch =
            ChannelRealization::from_taps(dims, alloc::vec![c(0.5, 0.0); 12]).unwrap();
        let tr = normalization_coefficient(&ch, NormalizationKind::Tr).unwrap();
        let dtr = normalization_coefficient(&ch, NormalizationKind::Dtr).unwrap();
        let pi = normalization_coefficient(&ch, NormalizationKind::Pi).unwrap();
        assert_relative_eq!(tr, dtr, max_relative = 1e-15);
        assert_relative_eq!(pi, dtr, max_relative = 1e-15);
    }

    #[test]
    fn zero_energy_channel_is_degenerate_for_tr_and_pi() {
        let dims = ChannelDims::new(2, 2).unwrap();
        let ch = ChannelRealization::from_taps(dims, alloc::vec![c(0.0, 0.0); 4]).unwrap();
        assert!(matches!(
            normalization_coefficient(&ch, NormalizationKind::Tr),
            Err(Error::DegenerateChannel { .. })
        ));
        assert!(matches!(
            normalization_coefficient(&ch, NormalizationKind::Pi),
            Err(Error::DegenerateChannel { .. })
        ));
        assert_relative_eq!(
            normalization_coefficient(&ch, NormalizationKind::Dtr).unwrap(),
            2.0_f64.sqrt()
        );
    }

    #[test]
    fn weights_conjugate_reverse() {
        // M=1, N=2, taps [1, i], DTR (c = 1): w[0] = 1, w[-1] = -i.
        let ch = from_rows(&[&[c(1.0, 0.0), c(0.0, 1.0)]]);
        let w = compute_weights(&ch, NormalizationKind::Dtr).unwrap();
        assert_eq!(w.weight(0, 0), c(1.0, 0.0));
        assert_eq!(w.weight(0, 1), c(0.0, -1.0));
        assert_eq!(w.coefficient(), 1.0);
    }

    #[test]
    fn weights_phase_conjugation_is_unit_magnitude() {
        for k in 0..8 {
            let theta = k as f64 * core::f64::consts::PI / 4.0;
            let tap = c(theta.cos(), theta.sin());
            let ch = from_rows(&[&[tap]]);
            let w = compute_weights(&ch, NormalizationKind::Tr).unwrap();
            assert_relative_eq!(w.weight(0, 0).norm_sqr(), 1.0, max_relative = 1e-12);
            assert_relative_eq!(w.weight(0, 0).re, tap.re, epsilon = 1e-12);
            assert_relative_eq!(w.weight(0, 0).im, -tap.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn weights_satisfy_defining_identity() {
        let ch = sample_2x2();
        let w = compute_weights(&ch, NormalizationKind::Tr).unwrap();
        for m in 0..2 {
            for j in 0..2 {
                let lhs = w.weight(m, j) * w.coefficient();
                let rhs = ch.tap(m, j).conj();
                assert_relative_eq!(lhs.re, rhs.re, epsilon = 1e-12);
                assert_relative_eq!(lhs.im, rhs.im, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn effective_channel_hand_convolution() {
        // M=1, N=2, taps [1, i], DTR: values [-i, 2, i] at delays -1, 0, 1.
        let ch = from_rows(&[&[c(1.0, 0.0), c(0.0, 1.0)]]);
        let w = compute_weights(&ch, NormalizationKind::Dtr).unwrap();
        let eff = effective_channel(&ch, &w);
        assert_eq!(eff.max_delay(), 1);
        assert_eq!(eff.value(-1), c(0.0, -1.0));
        assert_eq!(eff.value(0), c(2.0, 0.0));
        assert_eq!(eff.value(1), c(0.0, 1.0));
        assert_eq!(eff.zero_delay(), c(2.0, 0.0));
    }

    #[test]
    fn effective_channel_identity_case() {
        let ch = from_rows(&[&[c(1.0, 0.0)]]);
        for kind in NormalizationKind::ALL {
            let w = compute_weights(&ch, kind).unwrap();
            let eff = effective_channel(&ch, &w);
            assert_eq!(eff.values().len(), 1);
            assert_eq!(eff.value(0), c(1.0, 0.0));
        }
    }

    #[test]
    fn tr_peak_is_sqrt_energy() {
        let dims = ChannelDims::new(3, 5).unwrap();
        let ch = generate_channel(dims, &mut substream(42, 0));
        let w = compute_weights(&ch, NormalizationKind::Tr).unwrap();
        let eff = effective_channel(&ch, &w);
        let s = channel_energy(&ch);
        assert_relative_eq!(eff.zero_delay().re, s.sqrt(), max_relative = 1e-12);
        assert!(eff.zero_delay().im.abs() <= 1e-12 * s.sqrt());
    }

    #[test]
    fn zero_delay_tap_closed_forms() {
        let ch = from_rows(&[&[c(1.0, 0.0), c(0.0, 1.0)]]);
        assert_relative_eq!(
            zero_delay_tap(&ch, NormalizationKind::Dtr).unwrap(),
            2.0,
            max_relative = 1e-15
        );

        let ch = sample_2x2();
        let s = channel_energy(&ch);
        assert_relative_eq!(
            zero_delay_tap(&ch, NormalizationKind::Tr).unwrap(),
            s.sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            zero_delay_tap(&ch, NormalizationKind::Pi).unwrap(),
            2.0_f64.sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    #[should_panic(expected = "dimensions differ")]
    fn effective_channel_rejects_mismatched_dims() {
        let ch = sample_2x2();
        let other = from_rows(&[&[c(1.0, 0.0), c(0.0, 1.0)]]);
        let w = compute_weights(&other, NormalizationKind::Dtr).unwrap();
        effective_channel(&ch, &w);
    }

    #[test]
    fn ordering_switches_at_energy_equal_antennas() {
        let dims = ChannelDims::new(4, 4).unwrap();
        let m = dims.antennas() as f64;
        for r in 0..200 {
            let ch = generate_channel(dims, &mut substream(9, r));
            let s = channel_energy(&ch);
            let tr = normalization_coefficient(&ch, NormalizationKind::Tr).unwrap();
            let dtr = normalization_coefficient(&ch, NormalizationKind::Dtr).unwrap();
            let pi = normalization_coefficient(&ch, NormalizationKind::Pi).unwrap();
            if s < m {
                assert!(pi <= tr && tr <= dtr, "s={s} pi={pi} tr={tr} dtr={dtr}");
            } else {
                assert!(pi >= tr && tr >= dtr, "s={s} pi={pi} tr={tr} dtr={dtr}");
            }
        }
    }
}
