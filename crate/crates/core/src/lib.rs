//! Powerline interference (PLI) removal for intracardiac electrograms.
//!
//! The joint method estimates the interference with a zero-phase notch,
//! measures its power in each Coiflet-2 detail scale and soft-thresholds the
//! noisy signal's wavelet coefficients by the matching amplitude. A plain
//! forward/backward notch is provided as the reference method, together with
//! the signed correlation index (SCI) used to compare both against the clean
//! signal, and a surrogate electrogram / interference synthesizer.

pub mod denoise;
pub mod error;
pub mod iir;
pub mod io;
pub mod metrics;
pub mod rng;
pub mod signal;
pub mod synthesis;
pub mod wavelet;

pub use denoise::{
    denoise_notch, denoise_wavelet, estimate_pli, estimate_scale_powers, soft_threshold,
    DenoiseConfig, ScaleThresholds,
};
pub use error::{Error, Result};
pub use iir::{design_notch, filtfilt, frequency_response, BiquadNotch, NotchCascade};
pub use metrics::{sci_freq, sci_time, ReportMode, SciConfig, SciResult};
pub use rng::Rng;
pub use signal::{amplitude_spectrum, power, Signal, Spectrum};
pub use synthesis::{mix_at_sir, synth_egm, synth_pli, EgmSynthParams, PliParams};
pub use wavelet::{coif2_filters, dwt, idwt, scale_band, QuadFilterBank, WaveletDecomposition};

/// Sample rate used when none is given.
pub const DEFAULT_SAMPLE_RATE: f64 = 1000.0;
