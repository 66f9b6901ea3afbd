//! Sampled signals, power and spectra.

use std::cell::RefCell;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Uniformly sampled, real-valued, finite waveform.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    samples: Vec<f64>,
    sample_rate: f64,
}

impl Signal {
    pub fn new(samples: Vec<f64>, sample_rate: f64) -> Result<Self> {
        if !(sample_rate.is_finite() && sample_rate > 0.0) {
            return Err(Error::invalid(format!(
                "sample rate must be positive, got {sample_rate}"
            )));
        }
        if samples.is_empty() {
            return Err(Error::invalid("signal has no samples"));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("non-finite sample at index {i}")));
        }
        Ok(Self {
            samples,
            sample_rate,
        })
    }

    pub fn zeros(len: usize, sample_rate: f64) -> Result<Self> {
        Self::new(vec![0.0; len], sample_rate)
    }

    /// Samples `f(t)` at `t = n / sample_rate` for `n` in `0..len`.
    pub fn from_fn(len: usize, sample_rate: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(
            (0..len).map(|n| f(n as f64 / sample_rate)).collect(),
            sample_rate,
        )
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration(&self) -> f64 {
        self.len() as f64 / self.sample_rate
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.len() as f64
    }

    /// Population standard deviation.
    pub fn std(&self) -> f64 {
        std_dev(&self.samples)
    }

    pub fn rms(&self) -> f64 {
        power(self).sqrt()
    }

    /// Same sample rate, new samples. The result is validated.
    pub fn with_samples(&self, samples: Vec<f64>) -> Result<Self> {
        Self::new(samples, self.sample_rate)
    }

    pub fn scaled(&self, gain: f64) -> Result<Self> {
        self.with_samples(self.samples.iter().map(|v| v * gain).collect())
    }

    pub fn add(&self, other: &Signal) -> Result<Self> {
        self.check_compatible(other)?;
        self.with_samples(
            self.samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Signal) -> Result<Self> {
        self.check_compatible(other)?;
        self.with_samples(
            self.samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn check_compatible(&self, other: &Signal) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::invalid(format!(
                "length mismatch: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        if self.sample_rate != other.sample_rate {
            return Err(Error::invalid(format!(
                "sample rate mismatch: {} vs {}",
                self.sample_rate, other.sample_rate
            )));
        }
        Ok(())
    }
}

/// Mean of squared samples.
pub fn power(signal: &Signal) -> f64 {
    mean_square(signal.samples())
}

pub(crate) fn mean_square(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64
}

pub(crate) fn std_dev(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    (x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n).sqrt()
}

/// Single-sided amplitude spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub magnitudes: Vec<f64>,
    /// Hz per bin.
    pub bin_width: f64,
}

impl Spectrum {
    pub fn frequency(&self, bin: usize) -> f64 {
        bin as f64 * self.bin_width
    }

    pub fn bin_of(&self, freq: f64) -> usize {
        ((freq / self.bin_width).round() as usize).min(self.magnitudes.len() - 1)
    }

    /// Largest magnitude among bins whose frequency lies in `[lo, hi]`.
    pub fn peak_in(&self, lo: f64, hi: f64) -> Option<(usize, f64)> {
        self.magnitudes
            .iter()
            .enumerate()
            .filter(|(k, _)| {
                let f = self.frequency(*k);
                f >= lo && f <= hi
            })
            .map(|(k, &m)| (k, m))
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Unnormalized forward DFT of a real sequence, all `len` bins.
pub fn dft(x: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_forward(buf.len()));
    fft.process(&mut buf);
    buf
}

/// Full two-sided transform of a signal.
pub fn two_sided_transform(signal: &Signal) -> Vec<Complex64> {
    dft(signal.samples())
}

/// Full-length, unwindowed, single-sided amplitude spectrum. Bin `k` sits at
/// `k * sample_rate / len`; DC and Nyquist are scaled by `1/N`, interior bins
/// by `2/N`, so an on-bin sinusoid of amplitude `A` shows up as `A`.
pub fn amplitude_spectrum(signal: &Signal) -> Spectrum {
    let n = signal.len();
    let x = two_sided_transform(signal);
    let half = n / 2;
    let magnitudes = (0..=half)
        .map(|k| {
            let scale = if k == 0 || (n.is_multiple_of(2) && k == half) {
                1.0
            } else {
                2.0
            };
            scale * x[k].norm() / n as f64
        })
        .collect();
    Spectrum {
        magnitudes,
        bin_width: signal.sample_rate() / n as f64,
    }
}

/// Single-sided periodogram of a real sequence sampled at `rate`. Bin powers
/// sum to the mean square of `x`; returns `(powers, bin_width)`.
pub fn periodogram(x: &[f64], rate: f64) -> (Vec<f64>, f64) {
    let n = x.len();
    let spec = dft(x);
    let half = n / 2;
    let norm = (n * n) as f64;
    let powers = (0..=half)
        .map(|k| {
            let p = spec[k].norm_sqr() / norm;
            if k == 0 || (n.is_multiple_of(2) && k == half) {
                p
            } else {
                2.0 * p
            }
        })
        .collect();
    (powers, rate / n as f64)
}
