//! Signed correlation index (SCI).
//!
//! Each sample pair scores `+1` when `|x(k) - y(k)| <= xi` and `-1` otherwise;
//! SCI is the mean score. `xi` is a fraction of the *reference* standard
//! deviation, so the index is not symmetric in its arguments: pass the clean
//! signal first.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::{amplitude_spectrum, std_dev, Signal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportMode {
    /// Mean score in `[-1, 1]`.
    Raw,
    /// `100 * (raw + 1) / 2`: percentage of samples within `xi`.
    #[default]
    MatchPercent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SciConfig {
    pub xi_fraction: f64,
    pub report_mode: ReportMode,
}

impl Default for SciConfig {
    fn default() -> Self {
        Self {
            xi_fraction: 0.05,
            report_mode: ReportMode::MatchPercent,
        }
    }
}

impl SciConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.xi_fraction.is_finite() && self.xi_fraction > 0.0) {
            return Err(Error::param(format!(
                "xi_fraction must be positive, got {}",
                self.xi_fraction
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SciResult {
    pub raw: f64,
    pub match_percent: f64,
    pub xi_used: f64,
    pub n_samples: usize,
}

impl SciResult {
    /// Value selected by `mode`.
    pub fn value(&self, mode: ReportMode) -> f64 {
        match mode {
            ReportMode::Raw => self.raw,
            ReportMode::MatchPercent => self.match_percent,
        }
    }
}

/// SCI of two equally long sequences with an explicit threshold.
pub fn sci_sequences(reference: &[f64], test: &[f64], xi: f64) -> SciResult {
    debug_assert_eq!(reference.len(), test.len());
    let n = reference.len();
    let within = reference
        .iter()
        .zip(test)
        .filter(|(x, y)| (*x - *y).abs() <= xi)
        .count();
    let raw = (2.0 * within as f64 - n as f64) / n as f64;
    SciResult {
        raw,
        match_percent: 100.0 * within as f64 / n as f64,
        xi_used: xi,
        n_samples: n,
    }
}

fn threshold(reference: &[f64], cfg: &SciConfig) -> Result<f64> {
    cfg.validate()?;
    let sd = std_dev(reference);
    if sd <= 0.0 {
        return Err(Error::invalid("reference has zero variance"));
    }
    Ok(cfg.xi_fraction * sd)
}

pub fn sci_time(reference: &Signal, test: &Signal, cfg: &SciConfig) -> Result<SciResult> {
    reference.check_compatible(test)?;
    let xi = threshold(reference.samples(), cfg)?;
    Ok(sci_sequences(reference.samples(), test.samples(), xi))
}

/// SCI between the single-sided amplitude spectra, DC to Nyquist, with `xi`
/// taken from the reference spectrum's magnitudes.
pub fn sci_freq(reference: &Signal, test: &Signal, cfg: &SciConfig) -> Result<SciResult> {
    reference.check_compatible(test)?;
    let r = amplitude_spectrum(reference).magnitudes;
    let t = amplitude_spectrum(test).magnitudes;
    let xi = threshold(&r, cfg)?;
    Ok(sci_sequences(&r, &t, xi))
}
