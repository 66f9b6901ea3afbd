//! Surrogate AF electrograms, drifting powerline interference, and mixing at a
//! prescribed signal-to-interference ratio.
//!
//! The electrogram model is a train of biphasic deflections at uniformly
//! random activation intervals. Each deflection is a first derivative of a
//! Gaussian: a positive lobe peaking `sigma` before the activation instant
//! followed by a negative lobe `sigma` after it, with `sigma` equal to half the
//! configured half-width.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iir::Biquad;
use crate::rng::Rng;
use crate::signal::{power, Signal};

const MIN_SAMPLE_RATE: f64 = 500.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EgmSynthParams {
    pub duration_s: f64,
    /// Activation interval range, `[min, max]` in ms.
    pub activation_interval_ms: [f64; 2],
    pub deflection_width_ms: f64,
    /// Relative jitter of the width, uniform in `±width_jitter`.
    pub width_jitter: f64,
    pub amplitude_mv: f64,
    pub amplitude_jitter: f64,
    pub polarity_flip_prob: f64,
}

impl Default for EgmSynthParams {
    fn default() -> Self {
        Self {
            duration_s: 10.0,
            activation_interval_ms: [120.0, 200.0],
            deflection_width_ms: 8.0,
            width_jitter: 0.2,
            amplitude_mv: 1.0,
            amplitude_jitter: 0.3,
            polarity_flip_prob: 0.1,
        }
    }
}

impl EgmSynthParams {
    pub fn validate(&self) -> Result<()> {
        let [lo, hi] = self.activation_interval_ms;
        if !(self.duration_s.is_finite() && self.duration_s > 0.0) {
            return Err(Error::param(format!(
                "duration_s must be positive, got {}",
                self.duration_s
            )));
        }
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(Error::param(format!(
                "activation interval [{lo}, {hi}] ms is not a positive ordered range"
            )));
        }
        if !(self.deflection_width_ms.is_finite() && self.deflection_width_ms > 0.0) {
            return Err(Error::param("deflection_width_ms must be positive"));
        }
        for (name, v) in [
            ("width_jitter", self.width_jitter),
            ("amplitude_jitter", self.amplitude_jitter),
        ] {
            if !(0.0..1.0).contains(&v) {
                return Err(Error::param(format!("{name} must be in [0, 1), got {v}")));
            }
        }
        if !(self.amplitude_mv.is_finite() && self.amplitude_mv >= 0.0) {
            return Err(Error::param("amplitude_mv must be non-negative"));
        }
        if !(0.0..=1.0).contains(&self.polarity_flip_prob) {
            return Err(Error::param(format!(
                "polarity_flip_prob must be in [0, 1], got {}",
                self.polarity_flip_prob
            )));
        }
        Ok(())
    }

    /// Gaussian scale of the narrowest possible deflection, in seconds.
    fn min_sigma_s(&self) -> f64 {
        0.5e-3 * self.deflection_width_ms * (1.0 - self.width_jitter)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PliParams {
    pub base_freq_hz: f64,
    /// Number of components including the fundamental.
    pub n_harmonics: usize,
    /// Maximum fractional amplitude excursion.
    pub amp_mod_depth: f64,
    /// Maximum instantaneous frequency excursion in Hz.
    pub freq_dev_hz: f64,
    pub mod_bandwidth_hz: f64,
    pub harmonic_rel_amps: Vec<f64>,
}

impl Default for PliParams {
    fn default() -> Self {
        Self {
            base_freq_hz: 50.0,
            n_harmonics: 3,
            amp_mod_depth: 0.10,
            freq_dev_hz: 0.1,
            mod_bandwidth_hz: 0.5,
            harmonic_rel_amps: vec![1.0, 0.4, 0.2],
        }
    }
}

impl PliParams {
    /// Static sinusoid: one component, no modulation.
    pub fn pure_tone(freq_hz: f64) -> Self {
        Self {
            base_freq_hz: freq_hz,
            n_harmonics: 1,
            amp_mod_depth: 0.0,
            freq_dev_hz: 0.0,
            harmonic_rel_amps: vec![1.0],
            ..Self::default()
        }
    }

    pub fn validate(&self, fs: f64) -> Result<()> {
        if !(self.base_freq_hz.is_finite() && self.base_freq_hz > 0.0) {
            return Err(Error::param("base_freq_hz must be positive"));
        }
        if self.n_harmonics == 0 {
            return Err(Error::param("n_harmonics must be at least 1"));
        }
        let top = self.base_freq_hz * self.n_harmonics as f64 + self.freq_dev_hz;
        if top >= fs / 2.0 {
            return Err(Error::param(format!(
                "harmonic {} of {} Hz reaches {top} Hz, at or above Nyquist {} Hz",
                self.n_harmonics,
                self.base_freq_hz,
                fs / 2.0
            )));
        }
        if !(0.0..1.0).contains(&self.amp_mod_depth) {
            return Err(Error::param(format!(
                "amp_mod_depth must be in [0, 1), got {}",
                self.amp_mod_depth
            )));
        }
        if !(self.freq_dev_hz.is_finite() && self.freq_dev_hz >= 0.0) {
            return Err(Error::param("freq_dev_hz must be non-negative"));
        }
        if !(self.mod_bandwidth_hz > 0.0 && self.mod_bandwidth_hz < fs / 2.0) {
            return Err(Error::param("mod_bandwidth_hz must be in (0, fs/2)"));
        }
        if self.harmonic_rel_amps.len() < self.n_harmonics {
            return Err(Error::param(format!(
                "{} harmonic amplitudes given for {} harmonics",
                self.harmonic_rel_amps.len(),
                self.n_harmonics
            )));
        }
        if self
            .harmonic_rel_amps
            .iter()
            .any(|a| !(a.is_finite() && *a >= 0.0))
        {
            return Err(Error::param(
                "harmonic amplitudes must be finite and non-negative",
            ));
        }
        Ok(())
    }
}

fn check_rate(fs: f64) -> Result<()> {
    if !(fs.is_finite() && fs >= MIN_SAMPLE_RATE) {
        return Err(Error::param(format!(
            "sample rate must be at least {MIN_SAMPLE_RATE} Hz, got {fs}"
        )));
    }
    Ok(())
}

fn sample_count(duration_s: f64, fs: f64) -> Result<usize> {
    let n = (duration_s * fs).round();
    if n < 1.0 {
        return Err(Error::param("duration shorter than one sample"));
    }
    Ok(n as usize)
}

/// Clean surrogate electrogram, mean removed.
pub fn synth_egm(params: &EgmSynthParams, fs: f64, rng: &mut Rng) -> Result<Signal> {
    params.validate()?;
    check_rate(fs)?;
    if params.min_sigma_s() * fs < 1.0 {
        return Err(Error::param(format!(
            "deflection width {} ms is under-resolved at {fs} Hz",
            params.deflection_width_ms
        )));
    }
    let n = sample_count(params.duration_s, fs)?;
    let mut x = vec![0.0; n];
    let [lo, hi] = params.activation_interval_ms.map(|v| v * 1e-3);
    let base_sigma = 0.5e-3 * params.deflection_width_ms;

    let mut t0 = rng.uniform(0.0, hi);
    while t0 < params.duration_s {
        let sigma = base_sigma * (1.0 + rng.uniform(-params.width_jitter, params.width_jitter));
        let mut amp = params.amplitude_mv
            * (1.0 + rng.uniform(-params.amplitude_jitter, params.amplitude_jitter));
        if rng.chance(params.polarity_flip_prob) {
            amp = -amp;
        }
        add_deflection(&mut x, fs, t0, sigma, amp);
        t0 += rng.uniform(lo, hi);
    }

    let mean = x.iter().sum::<f64>() / n as f64;
    x.iter_mut().for_each(|v| *v -= mean);
    Signal::new(x, fs)
}

/// Adds `amp * (-u) * exp((1 - u^2) / 2)`, `u = (t - t0) / sigma`: peaks of
/// `+amp` at `u = -1` and `-amp` at `u = +1`. Truncated at 8 sigma.
fn add_deflection(x: &mut [f64], fs: f64, t0: f64, sigma: f64, amp: f64) {
    let reach = 8.0 * sigma;
    let first = ((t0 - reach) * fs).floor().max(0.0) as usize;
    let last = (((t0 + reach) * fs).ceil().max(0.0) as usize).min(x.len());
    for (i, v) in x.iter_mut().enumerate().take(last).skip(first) {
        let u = (i as f64 / fs - t0) / sigma;
        *v += amp * (-u) * (0.5 * (1.0 - u * u)).exp();
    }
}

/// Band-limited random walk: white Gaussian noise through a second-order
/// low-pass at `bandwidth_hz`, scaled to a standard deviation of `limit / 3`
/// and clamped to `±limit`.
fn modulator(rng: &mut Rng, n: usize, fs: f64, bandwidth_hz: f64, limit: f64) -> Result<Vec<f64>> {
    if limit == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let lp = Biquad::butterworth_lowpass(bandwidth_hz, fs)?;
    let warmup = (4.0 * fs / bandwidth_hz).ceil() as usize;
    let noise: Vec<f64> = (0..warmup + n).map(|_| rng.normal()).collect();
    let filtered = lp.lfilter(&noise);
    let walk = &filtered[warmup..];
    let mean = walk.iter().sum::<f64>() / n as f64;
    let std = (walk.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64).sqrt();
    let gain = if std > 0.0 { limit / (3.0 * std) } else { 0.0 };
    Ok(walk
        .iter()
        .map(|v| ((v - mean) * gain).clamp(-limit, limit))
        .collect())
}

/// Quasi-sinusoidal interference: each harmonic has its own amplitude and
/// frequency random walks and a random initial phase. Phase integrates the
/// instantaneous frequency, so frequency drift never produces phase jumps.
pub fn synth_pli(params: &PliParams, duration_s: f64, fs: f64, rng: &mut Rng) -> Result<Signal> {
    if !(fs.is_finite() && fs > 0.0) {
        return Err(Error::param(format!(
            "sample rate must be positive, got {fs}"
        )));
    }
    params.validate(fs)?;
    let n = sample_count(duration_s, fs)?;
    let mut out = vec![0.0; n];
    for h in 1..=params.n_harmonics {
        let rel = params.harmonic_rel_amps[h - 1];
        let am = modulator(rng, n, fs, params.mod_bandwidth_hz, params.amp_mod_depth)?;
        let fm = modulator(rng, n, fs, params.mod_bandwidth_hz, params.freq_dev_hz)?;
        let nominal = params.base_freq_hz * h as f64;
        let mut phase = rng.uniform(0.0, 2.0 * PI);
        for i in 0..n {
            out[i] += rel * (1.0 + am[i]) * phase.sin();
            phase += 2.0 * PI * (nominal + fm[i]) / fs;
        }
    }
    Signal::new(out, fs)
}

/// Scales `pli` so that `10 log10(P(clean) / P(scaled))` equals `sir_db` and
/// returns `(clean + scaled, scaled)`. `sir_db = +inf` yields a zero
/// interference.
pub fn mix_at_sir(clean: &Signal, pli: &Signal, sir_db: f64) -> Result<(Signal, Signal)> {
    clean.check_compatible(pli)?;
    if sir_db.is_nan() || sir_db == f64::NEG_INFINITY {
        return Err(Error::param(format!(
            "SIR must be a number or +inf, got {sir_db}"
        )));
    }
    let pc = power(clean);
    let pp = power(pli);
    if pc <= 0.0 {
        return Err(Error::param("clean signal has zero power"));
    }
    if pp <= 0.0 {
        return Err(Error::param("interference has zero power"));
    }
    let gain = if sir_db == f64::INFINITY {
        0.0
    } else {
        (pc / (pp * 10f64.powf(sir_db / 10.0))).sqrt()
    };
    let scaled = pli.scaled(gain)?;
    let noisy = clean.add(&scaled)?;
    Ok((noisy, scaled))
}

/// `10 log10(P(clean) / P(interference))`.
pub fn measured_sir_db(clean: &Signal, interference: &Signal) -> f64 {
    10.0 * (power(clean) / power(interference)).log10()
}
