//! Decimating two-channel filter bank (DWT / IDWT) with Coiflet-2 filters.
//!
//! Analysis computes `c[i] = <x, h(. - 2i)>` and `d[i] = <x, g(. - 2i)>` on
//! the half-sample symmetric extension of `x`, for every `i` whose basis
//! function overlaps the signal. Keeping those boundary coefficients makes the
//! inverse exact for any length, at the cost of a few redundant coefficients
//! per level: a level with `n` inputs yields `ceil((n + taps - 1) / 2)`
//! coefficients per channel.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::Signal;

/// Coiflet-2 scaling filter, normalized to sum to sqrt(2).
#[allow(clippy::excessive_precision)]
const COIF2_SCALING: [f64; 12] = [
    0.016387336463203640,
    -0.041464936786871780,
    -0.067372554723725600,
    0.386110066822762900,
    0.812723635449413500,
    0.417005184423239100,
    -0.076488599078280760,
    -0.059434418646431090,
    0.023680171946847770,
    0.005611434819368834,
    -0.001823208870911032,
    -0.000720549445520347,
];

pub const BOUNDARY_MODE: &str = "symmetric-half-sample";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum WaveletFamily {
    #[default]
    #[serde(rename = "coif2")]
    Coiflet2,
}

impl WaveletFamily {
    pub fn filter_bank(self) -> QuadFilterBank {
        match self {
            WaveletFamily::Coiflet2 => coif2_filters(),
        }
    }
}

/// Analysis and synthesis taps of an orthogonal two-channel bank.
///
/// Analysis taps are in convolution order (time-reversed synthesis taps).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadFilterBank {
    pub analysis_lp: Vec<f64>,
    pub analysis_hp: Vec<f64>,
    pub synthesis_lp: Vec<f64>,
    pub synthesis_hp: Vec<f64>,
    pub family_name: String,
}

/// Numerical checks run on every bank at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct BankCheck {
    /// `sum(analysis_lp) - sqrt(2)`.
    pub lp_sum_error: f64,
    pub hp_sum: f64,
    /// Worst deviation of `sum_k h[k] h[k + 2m]` from `delta(m)`.
    pub orthogonality_error: f64,
    /// `sum_k k^p hp[k]` for `p = 0..4`.
    pub hp_moments: Vec<f64>,
    pub quadrature_mirror: bool,
}

impl BankCheck {
    pub fn passes(&self, vanishing_moments: usize) -> bool {
        self.lp_sum_error.abs() <= 1e-12
            && self.hp_sum.abs() <= 1e-12
            && self.orthogonality_error <= 1e-10
            && self
                .hp_moments
                .iter()
                .take(vanishing_moments)
                .all(|m| m.abs() <= 1e-8)
            && self.quadrature_mirror
    }
}

impl QuadFilterBank {
    /// Builds the orthogonal bank generated by `scaling` and checks it.
    pub fn from_scaling(
        family_name: &str,
        scaling: &[f64],
        vanishing_moments: usize,
    ) -> Result<Self> {
        let len = scaling.len();
        if len < 2 || !len.is_multiple_of(2) {
            return Err(Error::param(format!(
                "scaling filter needs an even tap count, got {len}"
            )));
        }
        let synthesis_lp = scaling.to_vec();
        let synthesis_hp: Vec<f64> = (0..len)
            .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } * scaling[len - 1 - k])
            .collect();
        let bank = Self {
            analysis_lp: synthesis_lp.iter().rev().copied().collect(),
            analysis_hp: synthesis_hp.iter().rev().copied().collect(),
            synthesis_lp,
            synthesis_hp,
            family_name: family_name.to_string(),
        };
        let check = bank.check();
        if !check.passes(vanishing_moments) {
            return Err(Error::param(format!(
                "{family_name} taps fail verification: {check:?}"
            )));
        }
        Ok(bank)
    }

    pub fn taps(&self) -> usize {
        self.synthesis_lp.len()
    }

    pub fn check(&self) -> BankCheck {
        let h = &self.analysis_lp;
        let g = &self.analysis_hp;
        let len = h.len();
        let orthogonality_error = (0..len / 2)
            .map(|m| {
                let s: f64 = (0..len - 2 * m).map(|k| h[k] * h[k + 2 * m]).sum();
                (s - if m == 0 { 1.0 } else { 0.0 }).abs()
            })
            .fold(0.0, f64::max);
        let hp_moments = (0..5)
            .map(|p| {
                g.iter()
                    .enumerate()
                    .map(|(k, v)| (k as f64).powi(p) * v)
                    .sum()
            })
            .collect();
        let quadrature_mirror = (0..len).all(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            self.synthesis_hp[k] == sign * self.synthesis_lp[len - 1 - k]
                && self.analysis_lp[k] == self.synthesis_lp[len - 1 - k]
                && self.analysis_hp[k] == self.synthesis_hp[len - 1 - k]
        });
        BankCheck {
            lp_sum_error: h.iter().sum::<f64>() - std::f64::consts::SQRT_2,
            hp_sum: g.iter().sum(),
            orthogonality_error,
            hp_moments,
            quadrature_mirror,
        }
    }

    /// Coefficients per channel produced from `n` inputs.
    pub fn output_len(&self, n: usize) -> usize {
        (n + self.taps()) / 2
    }

    fn first_index(&self) -> isize {
        1 - (self.taps() / 2) as isize
    }

    /// One analysis level: `(approximation, detail)`.
    pub fn analyze(&self, x: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let n = x.len();
        let m = self.output_len(n);
        let start = self.first_index();
        let mut approx = Vec::with_capacity(m);
        let mut detail = Vec::with_capacity(m);
        for p in 0..m {
            let base = 2 * (p as isize + start);
            let (mut a, mut d) = (0.0, 0.0);
            for (k, (h, g)) in self.synthesis_lp.iter().zip(&self.synthesis_hp).enumerate() {
                let v = x[reflect(base + k as isize, n)];
                a += h * v;
                d += g * v;
            }
            approx.push(a);
            detail.push(d);
        }
        (approx, detail)
    }

    /// One synthesis level producing `n_out` samples.
    pub fn synthesize(&self, approx: &[f64], detail: &[f64], n_out: usize) -> Vec<f64> {
        let start = self.first_index();
        let mut out = vec![0.0; n_out];
        for (p, (a, d)) in approx.iter().zip(detail).enumerate() {
            let base = 2 * (p as isize + start);
            for (k, (h, g)) in self.synthesis_lp.iter().zip(&self.synthesis_hp).enumerate() {
                let n = base + k as isize;
                if n >= 0 && (n as usize) < n_out {
                    out[n as usize] += a * h + d * g;
                }
            }
        }
        out
    }
}

/// Half-sample symmetric extension: `x[-1] = x[0]`, `x[n] = x[n-1]`, period `2n`.
fn reflect(idx: isize, n: usize) -> usize {
    let period = 2 * n as isize;
    let m = idx.rem_euclid(period) as usize;
    if m < n {
        m
    } else {
        2 * n - 1 - m
    }
}

/// The 12-tap Coiflet-2 bank, verified for normalization, double-shift
/// orthogonality, quadrature mirror structure and four vanishing moments.
pub fn coif2_filters() -> QuadFilterBank {
    QuadFilterBank::from_scaling("coif2", &COIF2_SCALING, 4)
        .expect("tabulated Coiflet-2 taps pass verification")
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveletDecomposition {
    /// `details[0]` is scale 1 (finest).
    pub details: Vec<Vec<f64>>,
    pub approximation: Vec<f64>,
    pub levels: usize,
    pub original_length: usize,
    pub sample_rate: f64,
    pub boundary_mode: &'static str,
}

impl WaveletDecomposition {
    /// Detail coefficients of scale `j` (1-based).
    pub fn detail(&self, j: usize) -> &[f64] {
        &self.details[j - 1]
    }

    /// Sum of squared coefficients per scale, finest detail first and the
    /// approximation last.
    pub fn energies(&self) -> Vec<f64> {
        self.details
            .iter()
            .chain(std::iter::once(&self.approximation))
            .map(|c| c.iter().map(|v| v * v).sum())
            .collect()
    }

    pub fn total_energy(&self) -> f64 {
        self.energies().iter().sum()
    }

    /// Coefficient rate of scale `j` in Hz.
    pub fn scale_rate(&self, j: usize) -> f64 {
        self.sample_rate / 2f64.powi(j as i32)
    }

    fn expected_lengths(&self, bank: &QuadFilterBank) -> Vec<usize> {
        let mut lens = vec![self.original_length];
        for _ in 0..self.levels {
            lens.push(bank.output_len(*lens.last().unwrap()));
        }
        lens
    }
}

pub fn dwt(signal: &Signal, bank: &QuadFilterBank, levels: usize) -> Result<WaveletDecomposition> {
    if levels == 0 {
        return Err(Error::param("decomposition needs at least one level"));
    }
    let n = signal.len();
    if levels >= usize::BITS as usize || n < 1usize << levels {
        return Err(Error::param(format!(
            "{n} samples is too short for {levels} levels"
        )));
    }
    let mut details = Vec::with_capacity(levels);
    let mut approx = signal.samples().to_vec();
    for _ in 0..levels {
        let (a, d) = bank.analyze(&approx);
        details.push(d);
        approx = a;
    }
    Ok(WaveletDecomposition {
        details,
        approximation: approx,
        levels,
        original_length: n,
        sample_rate: signal.sample_rate(),
        boundary_mode: BOUNDARY_MODE,
    })
}

pub fn idwt(decomp: &WaveletDecomposition, bank: &QuadFilterBank) -> Result<Signal> {
    if decomp.details.len() != decomp.levels || decomp.levels == 0 {
        return Err(Error::Structural(format!(
            "{} detail vectors for {} levels",
            decomp.details.len(),
            decomp.levels
        )));
    }
    let lens = decomp.expected_lengths(bank);
    for (j, d) in decomp.details.iter().enumerate() {
        if d.len() != lens[j + 1] {
            return Err(Error::Structural(format!(
                "scale {} has {} coefficients, expected {}",
                j + 1,
                d.len(),
                lens[j + 1]
            )));
        }
    }
    if decomp.approximation.len() != lens[decomp.levels] {
        return Err(Error::Structural(format!(
            "approximation has {} coefficients, expected {}",
            decomp.approximation.len(),
            lens[decomp.levels]
        )));
    }
    let mut approx = decomp.approximation.clone();
    for j in (0..decomp.levels).rev() {
        approx = bank.synthesize(&approx, &decomp.details[j], lens[j]);
    }
    Signal::new(approx, decomp.sample_rate)
}

/// Nominal dyadic band `(fs / 2^(j+1), fs / 2^j)` of detail scale `j >= 1`.
pub fn scale_band(j: usize, fs: f64) -> (f64, f64) {
    assert!(j >= 1, "detail scales start at 1");
    let hi = fs / 2f64.powi(j as i32);
    (hi / 2.0, hi)
}

/// Frequency at which a real tone of `freq` Hz appears in the scale-`j`
/// coefficient sequence (rate `fs / 2^j`). Each decimation stage folds the
/// upper half of its band onto the lower half.
pub fn image_frequency(freq: f64, j: usize, fs: f64) -> f64 {
    let mut rate = fs;
    let mut f = freq.rem_euclid(fs);
    if f > fs / 2.0 {
        f = fs - f;
    }
    for _ in 0..j {
        rate /= 2.0;
        if f > rate / 2.0 {
            f = rate - f;
        }
    }
    f
}
