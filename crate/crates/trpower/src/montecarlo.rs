//! Deterministic, parallelisable ensemble runner.
//!
//! Every realisation index `r` owns an independent RNG substream derived from
//! `(seed, r)` via the ChaCha stream counter, and writes its samples into a
//! preallocated slot indexed by `r`. The output is therefore a bit-identical
//! function of the configuration no matter how the batches are scheduled: a
//! single thread, a rayon pool of any width, or even a reversed execution
//! order all produce the same arrays. Work is handed to an [`Executor`] in
//! fixed-size batches so schedulers have something to chew on without
//! touching the sample layout.
//!
//! Samples are materialised in full (no histogram binning) so tail quantiles
//! are exact order statistics; the runner refuses configurations beyond
//! [`MAX_MATERIALIZED_SAMPLES`] per measure instead of silently degrading.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analytic::Tail;
use crate::channel::{generate_channel, per_antenna_energies};
use crate::kahan::{compensated_sum, CompensatedSum};
use crate::powers::{to_decibel, Measure, RelativePowers};
use crate::precoder::NormalizationKind;
use crate::{ChannelDims, Error, Result};

/// Hard cap on the number of materialised samples per measure array.
pub const MAX_MATERIALIZED_SAMPLES: u64 = 100_000_000;

/// Realisations per work item handed to the executor.
const BATCH_SIZE: u64 = 8_192;

/// Minimum number of samples that must carry a requested tail probability.
const MIN_TAIL_MASS: f64 = 10.0;

/// The independent RNG substream of realisation `index` under `seed`.
///
/// ChaCha8 with the stream counter set to the realisation index: cheap to
/// construct, and statistically independent across indices.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Runs batches of mutable work items, sequentially or on a thread pool.
///
/// Implementations must call `f` exactly once per item; because items are
/// disjoint slots any execution order yields the same result.
pub trait Executor {
    fn run<T, F>(&self, items: &mut [T], f: F)
    where
        T: Send,
        F: Fn(&mut T) + Sync + Send;
}

/// Single-threaded executor; the default.
pub struct Sequential;

impl Executor for Sequential {
    fn run<T, F>(&self, items: &mut [T], f: F)
    where
        T: Send,
        F: Fn(&mut T) + Sync + Send,
    {
        for item in items.iter_mut() {
            f(item);
        }
    }
}

/// Ensemble configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    dims: ChannelDims,
    realizations: u64,
    seed: u64,
    kinds: Vec<NormalizationKind>,
    pool_antennas: bool,
}

impl SimConfig {
    /// A configuration covering all three normalisations with antenna
    /// pooling enabled.
    ///
    /// Pooling records the per-antenna power of all `M` antennas (they are
    /// identically distributed), multiplying the tail resolution of the
    /// antenna measure by `M`.
    pub fn new(dims: ChannelDims, realizations: u64, seed: u64) -> Result<Self> {
        if realizations == 0 {
            return Err(Error::InvalidConfig {
                reason: "at least one realization required",
            });
        }
        Ok(Self {
            dims,
            realizations,
            seed,
            kinds: NormalizationKind::ALL.to_vec(),
            pool_antennas: true,
        })
    }

    /// Restricts the run to the given normalisations (canonical order is
    /// enforced, duplicates collapse).
    pub fn with_kinds(mut self, kinds: &[NormalizationKind]) -> Result<Self> {
        let canonical: Vec<NormalizationKind> = NormalizationKind::ALL
            .into_iter()
            .filter(|k| kinds.contains(k))
            .collect();
        if canonical.is_empty() {
            return Err(Error::InvalidConfig {
                reason: "at least one normalisation kind required",
            });
        }
        self.kinds = canonical;
        Ok(self)
    }

    /// Record only antenna 0 instead of pooling all antennas.
    pub fn without_pooling(mut self) -> Self {
        self.pool_antennas = false;
        self
    }

    /// Same configuration with a different antenna count.
    pub fn with_antennas(&self, antennas: usize) -> Result<Self> {
        Ok(Self {
            dims: ChannelDims::new(antennas, self.dims.taps())?,
            ..self.clone()
        })
    }

    pub fn dims(&self) -> ChannelDims {
        self.dims
    }

    pub fn realizations(&self) -> u64 {
        self.realizations
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn kinds(&self) -> &[NormalizationKind] {
        &self.kinds
    }

    pub fn pool_antennas(&self) -> bool {
        self.pool_antennas
    }

    /// Length of the per-antenna sample array this configuration produces.
    pub fn ant_sample_count(&self) -> u64 {
        if self.pool_antennas {
            self.realizations * self.dims.antennas() as u64
        } else {
            self.realizations
        }
    }
}

/// Per-kind sample arrays of one ensemble run.
///
/// For every realisation all requested kinds are evaluated on the same
/// channel draw, so samples are paired across kinds at equal index.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSamples {
    dims: ChannelDims,
    realizations: u64,
    pooled: bool,
    per_kind: Vec<(NormalizationKind, MeasureArrays)>,
}

#[derive(Clone, Debug, PartialEq)]
struct MeasureArrays {
    ant: Vec<f64>,
    bs: Vec<f64>,
    rx: Vec<f64>,
}

impl MeasureArrays {
    fn get(&self, measure: Measure) -> &Vec<f64> {
        match measure {
            Measure::Ant => &self.ant,
            Measure::Bs => &self.bs,
            Measure::Rx => &self.rx,
        }
    }

    fn get_mut(&mut self, measure: Measure) -> &mut Vec<f64> {
        match measure {
            Measure::Ant => &mut self.ant,
            Measure::Bs => &mut self.bs,
            Measure::Rx => &mut self.rx,
        }
    }
}

impl PowerSamples {
    pub fn dims(&self) -> ChannelDims {
        self.dims
    }

    pub fn realizations(&self) -> u64 {
        self.realizations
    }

    pub fn pooled(&self) -> bool {
        self.pooled
    }

    /// Kinds present, in canonical order.
    pub fn kinds(&self) -> impl Iterator<Item = NormalizationKind> + '_ {
        self.per_kind.iter().map(|(k, _)| *k)
    }

    /// Sample array of one (kind, measure) pair.
    pub fn samples(&self, kind: NormalizationKind, measure: Measure) -> Option<&[f64]> {
        self.per_kind
            .iter()
            .find(|(k, _)| *k == kind)
            .map(|(_, arrays)| arrays.get(measure).as_slice())
    }

    /// Moves one sample array out, leaving an empty one behind. Lets callers
    /// sort large arrays without copying them.
    pub fn take(&mut self, kind: NormalizationKind, measure: Measure) -> Option<Vec<f64>> {
        self.per_kind
            .iter_mut()
            .find(|(k, _)| *k == kind)
            .map(|(_, arrays)| core::mem::take(arrays.get_mut(measure)))
    }
}

struct KindSlot<'a> {
    kind: NormalizationKind,
    ant: &'a mut [f64],
    bs: &'a mut [f64],
    rx: &'a mut [f64],
}

struct BatchSlot<'a> {
    first_realization: u64,
    len: usize,
    per_kind: Vec<KindSlot<'a>>,
}

/// Runs the ensemble on the current thread.
pub fn run_ensemble(cfg: &SimConfig) -> Result<PowerSamples> {
    run_ensemble_with(cfg, &Sequential)
}

/// Runs the ensemble on the given executor.
///
/// Output is bit-identical for a fixed configuration regardless of the
/// executor or its worker count.
pub fn run_ensemble_with<E: Executor>(cfg: &SimConfig, exec: &E) -> Result<PowerSamples> {
    let r = cfg.realizations;
    let ant_total = cfg.ant_sample_count();
    if ant_total.max(r) > MAX_MATERIALIZED_SAMPLES {
        return Err(Error::EnsembleTooLarge {
            samples: ant_total.max(r),
            cap: MAX_MATERIALIZED_SAMPLES,
        });
    }

    let mut per_kind: Vec<(NormalizationKind, MeasureArrays)> = cfg
        .kinds
        .iter()
        .map(|&kind| {
            (
                kind,
                MeasureArrays {
                    ant: vec![0.0; ant_total as usize],
                    bs: vec![0.0; r as usize],
                    rx: vec![0.0; r as usize],
                },
            )
        })
        .collect();

    let ant_stride = if cfg.pool_antennas {
        cfg.dims.antennas()
    } else {
        1
    };

    {
        // Carve the arrays into per-batch slots; each slot owns a disjoint
        // mutable window so batches may run in any order.
        struct Remaining<'a> {
            kind: NormalizationKind,
            ant: &'a mut [f64],
            bs: &'a mut [f64],
            rx: &'a mut [f64],
        }
        let mut remaining: Vec<Remaining<'_>> = per_kind
            .iter_mut()
            .map(|(kind, arrays)| Remaining {
                kind: *kind,
                ant: arrays.ant.as_mut_slice(),
                bs: arrays.bs.as_mut_slice(),
                rx: arrays.rx.as_mut_slice(),
            })
            .collect();

        let mut slots = Vec::with_capacity(r.div_ceil(BATCH_SIZE) as usize);
        let mut start = 0u64;
        while start < r {
            let len = BATCH_SIZE.min(r - start) as usize;
            let per_kind_slots = remaining
                .iter_mut()
                .map(|rem| {
                    let (ant, ant_rest) =
                        core::mem::take(&mut rem.ant).split_at_mut(len * ant_stride);
                    rem.ant = ant_rest;
                    let (bs, bs_rest) = core::mem::take(&mut rem.bs).split_at_mut(len);
                    rem.bs = bs_rest;
                    let (rx, rx_rest) = core::mem::take(&mut rem.rx).split_at_mut(len);
                    rem.rx = rx_rest;
                    KindSlot {
                        kind: rem.kind,
                        ant,
                        bs,
                        rx,
                    }
                })
                .collect();
            slots.push(BatchSlot {
                first_realization: start,
                len,
                per_kind: per_kind_slots,
            });
            start += len as u64;
        }

        let dims = cfg.dims;
        let seed = cfg.seed;
        let pooled = cfg.pool_antennas;
        exec.run(&mut slots, move |slot| {
            fill_batch(dims, seed, pooled, slot);
        });
    }

    Ok(PowerSamples {
        dims: cfg.dims,
        realizations: r,
        pooled: cfg.pool_antennas,
        per_kind,
    })
}

fn fill_batch(dims: ChannelDims, seed: u64, pooled: bool, slot: &mut BatchSlot<'_>) {
    let antennas = dims.antennas();
    for i in 0..slot.len {
        let index = slot.first_realization + i as u64;
        let mut rng = substream(seed, index);
        let ch = generate_channel(dims, &mut rng);
        let energies = per_antenna_energies(&ch);
        for kind_slot in slot.per_kind.iter_mut() {
            let powers = RelativePowers::from_energies(&energies, kind_slot.kind)
                .expect("zero-energy channel drawn; RNG is broken");
            if pooled {
                kind_slot.ant[i * antennas..(i + 1) * antennas].copy_from_slice(powers.p_ant());
            } else {
                kind_slot.ant[i] = powers.p_ant()[0];
            }
            kind_slot.bs[i] = powers.p_bs();
            kind_slot.rx[i] = powers.p_rx();
        }
    }
}

/// A sorted sample array with step-function distribution estimates.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalDistribution {
    samples: Vec<f64>,
}

impl EmpiricalDistribution {
    /// Sorts the samples; rejects empty or non-finite input.
    pub fn from_samples(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySamples);
        }
        if !samples.iter().all(|s| s.is_finite()) {
            return Err(Error::NonFinite);
        }
        samples.sort_unstable_by(f64::total_cmp);
        Ok(Self { samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.samples[0]
    }

    pub fn max(&self) -> f64 {
        self.samples[self.samples.len() - 1]
    }

    pub fn sorted(&self) -> &[f64] {
        &self.samples
    }

    /// Fraction of samples `<= x` (right-continuous step function).
    pub fn cdf(&self, x: f64) -> f64 {
        let below = self.samples.partition_point(|&s| s <= x);
        below as f64 / self.samples.len() as f64
    }

    /// Fraction of samples `> x`; complements [`Self::cdf`] by counting.
    pub fn ccdf(&self, x: f64) -> f64 {
        let below = self.samples.partition_point(|&s| s <= x);
        (self.samples.len() - below) as f64 / self.samples.len() as f64
    }

    /// Order statistic at rank `ceil(p * n)` from the requested end.
    ///
    /// Requires a tail mass of at least ten samples; tie handling is by rank,
    /// so the result is deterministic.
    pub fn tail_quantile(&self, tail_prob: f64, tail: Tail) -> Result<f64> {
        if !(tail_prob > 0.0 && tail_prob < 1.0) {
            return Err(Error::InvalidProbability { value: tail_prob });
        }
        let n = self.samples.len();
        let mass = tail_prob * n as f64;
        if mass < MIN_TAIL_MASS - 1e-9 {
            return Err(Error::InsufficientTailSamples {
                tail_prob,
                needed: MIN_TAIL_MASS as u64,
                available: mass,
            });
        }
        // Guard the ceiling against float fuzz in p * n (1e-4 * 1e6 must
        // rank as 100, not 101).
        let rank = (libm::ceil(mass - 1e-9) as usize).clamp(1, n);
        Ok(match tail {
            Tail::Upper => self.samples[n - rank],
            Tail::Lower => self.samples[rank - 1],
        })
    }

    /// Kolmogorov-Smirnov distance against a reference CDF.
    pub fn ks_distance<F: Fn(f64) -> f64>(&self, cdf: F) -> f64 {
        let n = self.samples.len() as f64;
        let mut sup: f64 = 0.0;
        for (i, &x) in self.samples.iter().enumerate() {
            let reference = cdf(x);
            let above = (i + 1) as f64 / n - reference;
            let below = reference - i as f64 / n;
            sup = sup.max(above).max(below);
        }
        sup
    }
}

/// One-pass summary statistics of a sample array.
#[derive(Clone, Copy, Debug)]
pub struct SampleMoments {
    count: usize,
    mean: f64,
    variance: f64,
    fourth_central: f64,
}

impl SampleMoments {
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn fourth_central(&self) -> f64 {
        self.fourth_central
    }

    /// Standard error of the mean.
    pub fn mean_std_error(&self) -> f64 {
        libm::sqrt(self.variance / self.count as f64)
    }

    /// Large-sample standard error of the variance estimate,
    /// `sqrt((m4 - s^4) / n)`.
    pub fn variance_std_error(&self) -> f64 {
        let s4 = self.variance * self.variance;
        libm::sqrt((self.fourth_central - s4).max(0.0) / self.count as f64)
    }
}

/// Mean, unbiased variance and fourth central moment (two compensated
/// passes).
pub fn sample_moments(samples: &[f64]) -> SampleMoments {
    let n = samples.len();
    assert!(n > 0, "moments of an empty sample set");
    let mean = compensated_sum(samples.iter().copied()) / n as f64;
    let mut m2 = CompensatedSum::new();
    let mut m4 = CompensatedSum::new();
    for &x in samples {
        let d = x - mean;
        let d2 = d * d;
        m2.add(d2);
        m4.add(d2 * d2);
    }
    let variance = if n > 1 {
        m2.total() / (n - 1) as f64
    } else {
        0.0
    };
    SampleMoments {
        count: n,
        mean,
        variance,
        fourth_central: m4.total() / n as f64,
    }
}

/// One output row of [`scaling_sweep`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub antennas: usize,
    pub kind: NormalizationKind,
    pub measure: Measure,
    pub quantile_db: f64,
}

/// The tail end used for each measure in sweeps and curve exports: excess
/// transmit power is an upper-tail event, received-power shortfall a
/// lower-tail one.
pub fn measure_tail(measure: Measure) -> Tail {
    match measure {
        Measure::Ant | Measure::Bs => Tail::Upper,
        Measure::Rx => Tail::Lower,
    }
}

/// Tail quantiles in dB for every (kind, measure) pair over a range of
/// antenna counts.
pub fn scaling_sweep(
    base: &SimConfig,
    m_values: &[usize],
    tail_prob: f64,
) -> Result<Vec<SweepRow>> {
    scaling_sweep_with(base, m_values, tail_prob, &Sequential)
}

/// [`scaling_sweep`] on a caller-provided executor.
///
/// Each antenna count reruns the full ensemble. If pooling would exceed the
/// materialisation cap for some `M`, that step falls back to recording
/// antenna 0 only; the remaining tail mass is still checked by
/// [`EmpiricalDistribution::tail_quantile`].
pub fn scaling_sweep_with<E: Executor>(
    base: &SimConfig,
    m_values: &[usize],
    tail_prob: f64,
    exec: &E,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(m_values.len() * base.kinds.len() * 3);
    for &antennas in m_values {
        let mut cfg = base.with_antennas(antennas)?;
        if cfg.ant_sample_count() > MAX_MATERIALIZED_SAMPLES {
            cfg = cfg.without_pooling();
        }
        let mut samples = run_ensemble_with(&cfg, exec)?;
        for kind in cfg.kinds().to_vec() {
            for measure in Measure::ALL {
                let data = samples.take(kind, measure).expect("kind was requested");
                let dist = EmpiricalDistribution::from_samples(data)?;
                let quantile = dist.tail_quantile(tail_prob, measure_tail(measure))?;
                rows.push(SweepRow {
                    antennas,
                    kind,
                    measure,
                    quantile_db: to_decibel(quantile),
                });
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn dims(m: usize, n: usize) -> ChannelDims {
        ChannelDims::new(m, n).unwrap()
    }

    /// Runs batches back to front; output must not change.
    struct Reversed;

    impl Executor for Reversed {
        fn run<T, F>(&self, items: &mut [T], f: F)
        where
            T: Send,
            F: Fn(&mut T) + Sync + Send,
        {
            for item in items.iter_mut().rev() {
                f(item);
            }
        }
    }

    #[test]
    fn substreams_are_reproducible_and_distinct() {
        use rand::RngCore;
        assert_eq!(substream(1, 5).next_u64(), substream(1, 5).next_u64());
        assert_ne!(substream(1, 5).next_u64(), substream(1, 6).next_u64());
        assert_ne!(substream(1, 5).next_u64(), substream(2, 5).next_u64());
    }

    #[test]
    fn config_canonicalizes_kinds() {
        let cfg = SimConfig::new(dims(2, 2), 10, 0)
            .unwrap()
            .with_kinds(&[
                NormalizationKind::Pi,
                NormalizationKind::Tr,
                NormalizationKind::Tr,
            ])
            .unwrap();
        assert_eq!(
            cfg.kinds(),
            &[NormalizationKind::Tr, NormalizationKind::Pi]
        );
        assert!(SimConfig::new(dims(2, 2), 10, 0)
            .unwrap()
            .with_kinds(&[])
            .is_err());
        assert!(SimConfig::new(dims(2, 2), 0, 0).is_err());
    }

    #[test]
    fn ensemble_too_large_is_refused() {
        let cfg = SimConfig::new(dims(4, 4), 2 * MAX_MATERIALIZED_SAMPLES, 0).unwrap();
        assert!(matches!(
            run_ensemble(&cfg),
            Err(Error::EnsembleTooLarge { .. })
        ));
        // Pooling multiplies the antenna count in.
        let cfg = SimConfig::new(dims(200, 4), MAX_MATERIALIZED_SAMPLES / 100, 0).unwrap();
        assert!(matches!(
            run_ensemble(&cfg),
            Err(Error::EnsembleTooLarge { .. })
        ));
    }

    #[test]
    fn single_realization_matches_single_shot() {
        let cfg = SimConfig::new(dims(3, 4), 1, 99).unwrap();
        let samples = run_ensemble(&cfg).unwrap();
        let ch = generate_channel(cfg.dims(), &mut substream(99, 0));
        for kind in NormalizationKind::ALL {
            let rp = RelativePowers::compute(&ch, kind).unwrap();
            assert_eq!(samples.samples(kind, Measure::Ant).unwrap(), rp.p_ant());
            assert_eq!(samples.samples(kind, Measure::Bs).unwrap(), &[rp.p_bs()]);
            assert_eq!(samples.samples(kind, Measure::Rx).unwrap(), &[rp.p_rx()]);
        }
    }

    #[test]
    fn deterministic_across_executors_and_batch_order() {
        let cfg = SimConfig::new(dims(3, 2), 20_000, 7).unwrap();
        let a = run_ensemble(&cfg).unwrap();
        let b = run_ensemble_with(&cfg, &Reversed).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sample_layout_and_pooling() {
        let cfg = SimConfig::new(dims(4, 2), 100, 1).unwrap();
        let samples = run_ensemble(&cfg).unwrap();
        assert_eq!(
            samples
                .samples(NormalizationKind::Tr, Measure::Ant)
                .unwrap()
                .len(),
            400
        );
        let cfg = cfg.without_pooling();
        let samples = run_ensemble(&cfg).unwrap();
        assert_eq!(
            samples
                .samples(NormalizationKind::Tr, Measure::Ant)
                .unwrap()
                .len(),
            100
        );
        assert_eq!(
            samples
                .samples(NormalizationKind::Tr, Measure::Bs)
                .unwrap()
                .len(),
            100
        );
    }

    #[test]
    fn degenerate_kinds_are_constant() {
        let cfg = SimConfig::new(dims(4, 4), 2_000, 3).unwrap();
        let samples = run_ensemble(&cfg).unwrap();
        for &x in samples.samples(NormalizationKind::Pi, Measure::Rx).unwrap() {
            assert!((x - 1.0).abs() <= 1e-12);
        }
        for &x in samples.samples(NormalizationKind::Tr, Measure::Bs).unwrap() {
            assert!((x - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn empirical_distribution_counting() {
        let d = EmpiricalDistribution::from_samples(vec![4.0, 2.0, 1.0, 3.0]).unwrap();
        assert_eq!(d.cdf(2.0), 0.5);
        assert_eq!(d.ccdf(2.0), 0.5);
        assert_eq!(d.cdf(0.5), 0.0);
        assert_eq!(d.ccdf(0.5), 1.0);
        assert_eq!(d.cdf(4.0), 1.0);
        assert_eq!(d.ccdf(4.0), 0.0);
        for x in [0.5, 1.0, 2.5, 4.0, 9.0] {
            assert_relative_eq!(d.cdf(x) + d.ccdf(x), 1.0, epsilon = 1e-15);
        }
        assert!(EmpiricalDistribution::from_samples(vec![]).is_err());
        assert!(EmpiricalDistribution::from_samples(vec![f64::NAN]).is_err());
    }

    #[test]
    fn tail_quantile_rank_arithmetic() {
        let d =
            EmpiricalDistribution::from_samples((1..=10_000).map(f64::from).collect()).unwrap();
        // Upper 1e-3 of 10^4 samples: the 10th value from the top.
        assert_eq!(d.tail_quantile(1e-3, Tail::Upper).unwrap(), 9_991.0);
        assert_eq!(d.tail_quantile(1e-3, Tail::Lower).unwrap(), 10.0);
        assert!(matches!(
            d.tail_quantile(1e-4, Tail::Upper),
            Err(Error::InsufficientTailSamples { .. })
        ));
        assert!(d.tail_quantile(0.0, Tail::Upper).is_err());
    }

    #[test]
    fn ks_distance_uniform_grid() {
        let d = EmpiricalDistribution::from_samples(vec![0.25, 0.5, 0.75, 1.0]).unwrap();
        assert_relative_eq!(d.ks_distance(|x| x.clamp(0.0, 1.0)), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn moments_of_known_samples() {
        let m = sample_moments(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m.mean(), 2.5);
        assert_relative_eq!(m.variance(), 5.0 / 3.0, max_relative = 1e-15);
        // Central fourth moment: mean of {1.5^4, 0.5^4, 0.5^4, 1.5^4}.
        assert_relative_eq!(m.fourth_central(), 2.5625, max_relative = 1e-15);
    }

    #[test]
    fn sweep_rows_are_deterministic_and_ordered() {
        let base = SimConfig::new(dims(1, 4), 200_000, 11).unwrap();
        let rows = scaling_sweep(&base, &[1, 2], 1e-3).unwrap();
        let again = scaling_sweep(&base, &[1, 2], 1e-3).unwrap();
        assert_eq!(rows, again);
        assert_eq!(rows.len(), 18);
        assert_eq!(rows[0].antennas, 1);
        assert_eq!(rows[0].kind, NormalizationKind::Tr);
        assert_eq!(rows[0].measure, Measure::Ant);
        assert_eq!(rows[17].antennas, 2);
        assert_eq!(rows[17].kind, NormalizationKind::Pi);
        assert_eq!(rows[17].measure, Measure::Rx);
        // TR BS and PI RX are pinned at 0 dB.
        for row in &rows {
            if (row.kind, row.measure) == (NormalizationKind::Tr, Measure::Bs)
                || (row.kind, row.measure) == (NormalizationKind::Pi, Measure::Rx)
            {
                assert!(row.quantile_db.abs() < 1e-10, "row {row:?}");
            }
        }
    }
}
