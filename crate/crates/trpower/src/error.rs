use thiserror::Error;

/// Errors surfaced by the simulator.
///
/// Programmer errors (out-of-range antenna index, non-positive argument to a
/// decibel conversion, mismatched dimensions) panic instead; everything that
/// depends on runtime data is reported through this enum.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Channel dimensions must have at least one antenna and one tap.
    #[error("invalid channel dimensions: {antennas} antennas x {taps} taps")]
    InvalidDims { antennas: usize, taps: usize },

    /// Tap matrix length does not match the declared dimensions.
    #[error("tap count mismatch: expected {expected}, got {got}")]
    TapCountMismatch { expected: usize, got: usize },

    /// A tap or sample was NaN or infinite.
    #[error("non-finite value encountered")]
    NonFinite,

    /// Zero-energy channel under a normalisation that divides by the energy.
    #[error("degenerate zero-energy channel for {kind} normalisation")]
    DegenerateChannel { kind: &'static str },

    /// Gamma distribution parameters must be positive and finite.
    #[error("invalid gamma parameters: shape {shape}, scale {scale}")]
    InvalidGammaParams { shape: f64, scale: f64 },

    /// A probability argument was outside its open interval.
    #[error("probability {value} outside (0, 1)")]
    InvalidProbability { value: f64 },

    /// An iterative numeric routine did not converge within its cap.
    #[error("{what} failed to converge after {iterations} iterations")]
    Convergence {
        what: &'static str,
        iterations: usize,
    },

    /// Ensemble configuration invalid (no realizations or no kinds).
    #[error("invalid simulation config: {reason}")]
    InvalidConfig { reason: &'static str },

    /// Requested ensemble would materialise more samples than the cap allows.
    #[error("ensemble too large: {samples} samples per measure exceeds cap {cap}")]
    EnsembleTooLarge { samples: u64, cap: u64 },

    /// Empirical distribution requested from an empty sample set.
    #[error("empty sample set")]
    EmptySamples,

    /// Too few samples carry the requested tail probability.
    #[error("insufficient samples for tail probability {tail_prob}: need {needed} in the tail, have {available:.1}")]
    InsufficientTailSamples {
        tail_prob: f64,
        needed: u64,
        available: f64,
    },
}
