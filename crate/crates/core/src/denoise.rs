//! Joint notch + wavelet interference removal, and the plain notch reference.
//!
//! Pipeline for [`denoise_wavelet`]:
//!
//! 1. subtract the zero-phase notch output from the input, leaving the
//!    interference plus whatever electrogram content sat inside the notch;
//! 2. decompose that estimate and, per detail scale, integrate its
//!    periodogram around the images of the interference harmonics;
//! 3. soft-threshold each detail scale of the noisy input by the amplitude of
//!    a sinusoid with that power, `lambda = gain * sqrt(2 P)`;
//! 4. reconstruct.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iir::NotchCascade;
use crate::signal::{periodogram, Signal};
use crate::wavelet::{dwt, idwt, image_frequency, WaveletFamily};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DenoiseConfig {
    pub notch_center_hz: f64,
    pub notch_bw_hz: f64,
    /// Interference components considered, fundamental included.
    pub harmonics: usize,
    pub levels: usize,
    pub threshold_gain: f64,
    pub pli_band_halfwidth_hz: f64,
    pub wavelet_family: WaveletFamily,
    pub threshold_approximation: bool,
    /// Notch every harmonic when estimating the interference (otherwise the
    /// fundamental only).
    pub estimate_harmonics: bool,
    /// Notch every harmonic in the reference method (otherwise the
    /// fundamental only).
    pub reference_harmonics: bool,
}

impl Default for DenoiseConfig {
    fn default() -> Self {
        Self {
            notch_center_hz: 50.0,
            notch_bw_hz: 2.0,
            harmonics: 3,
            levels: 5,
            threshold_gain: 1.0,
            pli_band_halfwidth_hz: 1.5,
            wavelet_family: WaveletFamily::Coiflet2,
            threshold_approximation: false,
            estimate_harmonics: true,
            reference_harmonics: true,
        }
    }
}

impl DenoiseConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1..=8).contains(&self.levels) {
            return Err(Error::param(format!(
                "levels must be in 1..=8, got {}",
                self.levels
            )));
        }
        if self.harmonics == 0 {
            return Err(Error::param("harmonics must be at least 1"));
        }
        for (name, v) in [
            ("notch_center_hz", self.notch_center_hz),
            ("notch_bw_hz", self.notch_bw_hz),
            ("threshold_gain", self.threshold_gain),
            ("pli_band_halfwidth_hz", self.pli_band_halfwidth_hz),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::param(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    fn cascade(&self, fs: f64, all_harmonics: bool) -> Result<NotchCascade> {
        let count = if all_harmonics { self.harmonics } else { 1 };
        NotchCascade::harmonics(self.notch_center_hz, self.notch_bw_hz, fs, count)
    }

    /// Harmonic frequencies below Nyquist.
    fn pli_frequencies(&self, fs: f64) -> Vec<f64> {
        (1..=self.harmonics)
            .map(|h| self.notch_center_hz * h as f64)
            .filter(|f| *f < fs / 2.0)
            .collect()
    }
}

/// Per-scale thresholds; index 0 is scale 1 (finest).
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleThresholds {
    pub lambda: Vec<f64>,
    pub source_power: Vec<f64>,
    pub levels: usize,
}

/// The component the notch removes: `noisy - filtfilt(notch, noisy)`.
pub fn estimate_pli(noisy: &Signal, cfg: &DenoiseConfig) -> Result<Signal> {
    cfg.validate()?;
    let notched = cfg
        .cascade(noisy.sample_rate(), cfg.estimate_harmonics)?
        .filtfilt(noisy)?;
    noisy.sub(&notched)
}

/// Interference power per detail scale of `pli_estimate`, read from the
/// periodogram of each coefficient vector inside `±pli_band_halfwidth_hz` of
/// the aliased image of every harmonic. Overlapping bands are counted once.
pub fn estimate_scale_powers(
    pli_estimate: &Signal,
    cfg: &DenoiseConfig,
) -> Result<ScaleThresholds> {
    cfg.validate()?;
    let fs = pli_estimate.sample_rate();
    let bank = cfg.wavelet_family.filter_bank();
    let decomp = dwt(pli_estimate, &bank, cfg.levels)?;
    let freqs = cfg.pli_frequencies(fs);

    let source_power: Vec<f64> = (1..=cfg.levels)
        .map(|j| {
            let images: Vec<f64> = freqs.iter().map(|&f| image_frequency(f, j, fs)).collect();
            band_power(
                decomp.detail(j),
                decomp.scale_rate(j),
                &images,
                cfg.pli_band_halfwidth_hz,
            )
        })
        .collect();
    let lambda = source_power
        .iter()
        .map(|p| cfg.threshold_gain * (2.0 * p).sqrt())
        .collect();
    Ok(ScaleThresholds {
        lambda,
        source_power,
        levels: cfg.levels,
    })
}

/// Periodogram power of `coeffs` (sampled at `rate`) within `halfwidth` of
/// any of `images`.
fn band_power(coeffs: &[f64], rate: f64, images: &[f64], halfwidth: f64) -> f64 {
    let (powers, bin_width) = periodogram(coeffs, rate);
    powers
        .iter()
        .enumerate()
        .filter(|(k, _)| {
            let f = *k as f64 * bin_width;
            images.iter().any(|img| (f - img).abs() <= halfwidth)
        })
        .map(|(_, p)| p)
        .sum()
}

/// `sign(w) * max(|w| - lambda, 0)` element-wise.
pub fn soft_threshold(coeffs: &[f64], lambda: f64) -> Result<Vec<f64>> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::param(format!(
            "threshold must be non-negative, got {lambda}"
        )));
    }
    Ok(coeffs.iter().map(|&w| shrink(w, lambda)).collect())
}

fn shrink(w: f64, lambda: f64) -> f64 {
    let mag = w.abs() - lambda;
    if mag > 0.0 {
        mag.copysign(w)
    } else {
        0.0
    }
}

/// Output of the wavelet pipeline with its intermediate products.
#[derive(Debug, Clone)]
pub struct WaveletDenoising {
    pub output: Signal,
    pub pli_estimate: Signal,
    pub thresholds: ScaleThresholds,
}

pub fn denoise_wavelet(noisy: &Signal, cfg: &DenoiseConfig) -> Result<Signal> {
    Ok(denoise_wavelet_detailed(noisy, cfg)?.output)
}

pub fn denoise_wavelet_detailed(noisy: &Signal, cfg: &DenoiseConfig) -> Result<WaveletDenoising> {
    let pli_estimate = estimate_pli(noisy, cfg)?;
    let thresholds = estimate_scale_powers(&pli_estimate, cfg)?;
    let bank = cfg.wavelet_family.filter_bank();
    let mut decomp = dwt(noisy, &bank, cfg.levels)?;
    for (detail, &lambda) in decomp.details.iter_mut().zip(&thresholds.lambda) {
        detail.iter_mut().for_each(|w| *w = shrink(*w, lambda));
    }
    if cfg.threshold_approximation {
        let fs = noisy.sample_rate();
        let estimate = dwt(&pli_estimate, &bank, cfg.levels)?;
        let images: Vec<f64> = cfg
            .pli_frequencies(fs)
            .iter()
            .map(|&f| image_frequency(f, cfg.levels, fs))
            .collect();
        let p = band_power(
            &estimate.approximation,
            estimate.scale_rate(cfg.levels),
            &images,
            cfg.pli_band_halfwidth_hz,
        );
        let lambda = cfg.threshold_gain * (2.0 * p).sqrt();
        decomp
            .approximation
            .iter_mut()
            .for_each(|w| *w = shrink(*w, lambda));
    }
    let output = idwt(&decomp, &bank)?;
    Ok(WaveletDenoising {
        output,
        pli_estimate,
        thresholds,
    })
}

/// Reference method: zero-phase notch (cascaded over harmonics when
/// `reference_harmonics` is set).
pub fn denoise_notch(noisy: &Signal, cfg: &DenoiseConfig) -> Result<Signal> {
    cfg.validate()?;
    cfg.cascade(noisy.sample_rate(), cfg.reference_harmonics)?
        .filtfilt(noisy)
}
