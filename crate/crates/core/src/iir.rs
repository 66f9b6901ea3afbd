//! Second-order IIR sections: the Butterworth notch, zero-phase
//! forward/backward filtering, and the low-pass used to band-limit random
//! modulators.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::Signal;

/// Transfer function `(b0 + b1 z^-1 + b2 z^-2) / (1 + a1 z^-1 + a2 z^-2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Biquad {
    pub b: [f64; 3],
    pub a: [f64; 3],
}

impl Biquad {
    /// Normalizes so that `a[0] == 1`.
    pub fn new(b: [f64; 3], a: [f64; 3]) -> Self {
        let a0 = a[0];
        Self {
            b: b.map(|v| v / a0),
            a: [1.0, a[1] / a0, a[2] / a0],
        }
    }

    /// Second-order Butterworth low-pass with -3 dB point at `cutoff_hz`.
    pub fn butterworth_lowpass(cutoff_hz: f64, fs: f64) -> Result<Self> {
        if !(cutoff_hz > 0.0 && cutoff_hz < fs / 2.0) {
            return Err(Error::param(format!(
                "low-pass cutoff {cutoff_hz} Hz outside (0, {}) Hz",
                fs / 2.0
            )));
        }
        let k = (PI * cutoff_hz / fs).tan();
        let k2 = k * k;
        let norm = 1.0 / (1.0 + SQRT_2 * k + k2);
        let b0 = k2 * norm;
        Ok(Self {
            b: [b0, 2.0 * b0, b0],
            a: [1.0, 2.0 * (k2 - 1.0) * norm, (1.0 - SQRT_2 * k + k2) * norm],
        })
    }

    pub fn response_at(&self, freq: f64, fs: f64) -> Complex64 {
        let z1 = Complex64::from_polar(1.0, -2.0 * PI * freq / fs);
        let z2 = z1 * z1;
        let num = self.b[0] + z1 * self.b[1] + z2 * self.b[2];
        let den = self.a[0] + z1 * self.a[1] + z2 * self.a[2];
        num / den
    }

    /// Roots of `z^2 + a1 z + a2`.
    pub fn poles(&self) -> [Complex64; 2] {
        let (p, q) = (self.a[1], self.a[2]);
        let disc = Complex64::new(p * p - 4.0 * q, 0.0).sqrt();
        [(-p + disc) / 2.0, (-p - disc) / 2.0]
    }

    pub fn dc_gain(&self) -> f64 {
        self.b.iter().sum::<f64>() / self.a.iter().sum::<f64>()
    }

    /// Transposed direct-form II state for a unit-step steady state.
    pub fn steady_state(&self) -> [f64; 2] {
        let g = self.dc_gain();
        let z1 = self.b[2] - self.a[2] * g;
        let z0 = self.b[1] - self.a[1] * g + z1;
        [z0, z1]
    }

    /// Filters `x` in place starting from state `zi`.
    pub fn run(&self, x: &mut [f64], zi: [f64; 2]) {
        let [b0, b1, b2] = self.b;
        let [_, a1, a2] = self.a;
        let [mut z0, mut z1] = zi;
        for v in x.iter_mut() {
            let input = *v;
            let y = b0 * input + z0;
            z0 = b1 * input - a1 * y + z1;
            z1 = b2 * input - a2 * y;
            *v = y;
        }
    }

    /// Causal filtering from rest.
    pub fn lfilter(&self, x: &[f64]) -> Vec<f64> {
        let mut y = x.to_vec();
        self.run(&mut y, [0.0, 0.0]);
        y
    }

    pub const PAD_LEN: usize = 3 * (3 - 1);
    pub const MIN_FILTFILT_LEN: usize = 6 * 2 + 1;

    /// Forward/backward filtering with odd extension and steady-state initial
    /// conditions. Output has zero phase and the squared magnitude response.
    pub fn filtfilt(&self, x: &[f64]) -> Result<Vec<f64>> {
        let n = x.len();
        if n < Self::MIN_FILTFILT_LEN {
            return Err(Error::param(format!(
                "filtfilt needs more than {} samples, got {n}",
                Self::MIN_FILTFILT_LEN - 1
            )));
        }
        let pad = Self::PAD_LEN;
        let mut ext = Vec::with_capacity(n + 2 * pad);
        ext.extend((1..=pad).rev().map(|k| 2.0 * x[0] - x[k]));
        ext.extend_from_slice(x);
        ext.extend((1..=pad).map(|k| 2.0 * x[n - 1] - x[n - 1 - k]));

        let zi = self.steady_state();
        let scaled = |s: f64| [zi[0] * s, zi[1] * s];

        let first = ext[0];
        self.run(&mut ext, scaled(first));
        ext.reverse();
        let first = ext[0];
        self.run(&mut ext, scaled(first));
        ext.reverse();
        Ok(ext[pad..pad + n].to_vec())
    }
}

/// Butterworth band-stop biquad (2 poles, 2 zeros).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiquadNotch {
    pub b: [f64; 3],
    pub a: [f64; 3],
    pub center_hz: f64,
    /// Digital -3 dB bandwidth.
    pub bandwidth_hz: f64,
    pub sample_rate: f64,
}

impl BiquadNotch {
    pub fn biquad(&self) -> Biquad {
        Biquad {
            b: self.b,
            a: self.a,
        }
    }

    pub fn poles(&self) -> [Complex64; 2] {
        self.biquad().poles()
    }

    /// Largest pole modulus.
    pub fn pole_radius(&self) -> f64 {
        self.poles().iter().map(|p| p.norm()).fold(0.0, f64::max)
    }
}

/// Designs a notch at `center_hz` with digital -3 dB bandwidth `bandwidth_hz`.
///
/// The first-order Butterworth low-pass prototype is mapped to the band-stop
/// `(s^2 + w0^2) / (s^2 + B s + w0^2)` and discretized with the bilinear
/// transform, prewarped so the zeros land exactly on `center_hz` and the -3 dB
/// edges are `bandwidth_hz` apart.
pub fn design_notch(center_hz: f64, bandwidth_hz: f64, fs: f64) -> Result<BiquadNotch> {
    if !(fs.is_finite() && fs > 0.0) {
        return Err(Error::param(format!(
            "sample rate must be positive, got {fs}"
        )));
    }
    let nyquist = fs / 2.0;
    if !(center_hz > 0.0 && center_hz < nyquist) {
        return Err(Error::param(format!(
            "notch center {center_hz} Hz outside (0, {nyquist}) Hz"
        )));
    }
    let max_bw = 2.0 * center_hz.min(nyquist - center_hz);
    if !(bandwidth_hz > 0.0 && bandwidth_hz < max_bw) {
        return Err(Error::param(format!(
            "notch bandwidth {bandwidth_hz} Hz outside (0, {max_bw}) Hz for center {center_hz} Hz"
        )));
    }
    let w0 = 2.0 * PI * center_hz / fs;
    let beta = (PI * bandwidth_hz / fs).tan();
    let gain = 1.0 / (1.0 + beta);
    let cos_w0 = w0.cos();
    Ok(BiquadNotch {
        b: [gain, -2.0 * gain * cos_w0, gain],
        a: [1.0, -2.0 * gain * cos_w0, 2.0 * gain - 1.0],
        center_hz,
        bandwidth_hz,
        sample_rate: fs,
    })
}

/// Zero-phase forward/backward application of `filter`.
pub fn filtfilt(filter: &BiquadNotch, signal: &Signal) -> Result<Signal> {
    check_rate(filter, signal)?;
    signal.with_samples(filter.biquad().filtfilt(signal.samples())?)
}

/// `H(e^{j 2 pi f / fs})` at each frequency in `[0, fs/2]`.
pub fn frequency_response(filter: &BiquadNotch, freqs: &[f64]) -> Result<Vec<Complex64>> {
    let nyquist = filter.sample_rate / 2.0;
    freqs
        .iter()
        .map(|&f| {
            if (0.0..=nyquist).contains(&f) {
                Ok(filter.biquad().response_at(f, filter.sample_rate))
            } else {
                Err(Error::param(format!(
                    "frequency {f} Hz outside [0, {nyquist}] Hz"
                )))
            }
        })
        .collect()
}

fn check_rate(filter: &BiquadNotch, signal: &Signal) -> Result<()> {
    if filter.sample_rate != signal.sample_rate() {
        return Err(Error::param(format!(
            "filter designed for {} Hz applied to a {} Hz signal",
            filter.sample_rate,
            signal.sample_rate()
        )));
    }
    Ok(())
}

/// Notches at a base frequency and its harmonics, each applied zero-phase in
/// turn.
#[derive(Debug, Clone, PartialEq)]
pub struct NotchCascade {
    pub sections: Vec<BiquadNotch>,
}

impl NotchCascade {
    /// Notches at `base_hz * h` for `h = 1..=harmonics`, skipping any that
    /// would not fit below Nyquist with the requested bandwidth.
    pub fn harmonics(base_hz: f64, bandwidth_hz: f64, fs: f64, harmonics: usize) -> Result<Self> {
        let mut sections = vec![design_notch(base_hz, bandwidth_hz, fs)?];
        for h in 2..=harmonics {
            if let Ok(n) = design_notch(base_hz * h as f64, bandwidth_hz, fs) {
                sections.push(n);
            }
        }
        Ok(Self { sections })
    }

    pub fn filtfilt(&self, signal: &Signal) -> Result<Signal> {
        let mut out = signal.clone();
        for section in &self.sections {
            out = filtfilt(section, &out)?;
        }
        Ok(out)
    }
}
