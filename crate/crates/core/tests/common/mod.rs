#![allow(dead_code)]

use std::f64::consts::PI;

use pliwave_core::{Rng, Signal};

pub const FS: f64 = 1000.0;

pub fn noise(n: usize, seed: u64) -> Signal {
    let mut rng = Rng::new(seed);
    Signal::new((0..n).map(|_| rng.normal()).collect(), FS).unwrap()
}

pub fn tone(freq: f64, amp: f64, n: usize) -> Signal {
    Signal::from_fn(n, FS, |t| amp * (2.0 * PI * freq * t).sin()).unwrap()
}

pub fn rms(x: &[f64]) -> f64 {
    (x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64).sqrt()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn diff(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Lag in `-max_lag..=max_lag` maximizing the cross-correlation of `a` and `b`.
pub fn xcorr_peak(a: &[f64], b: &[f64], max_lag: isize) -> isize {
    let n = a.len() as isize;
    (-max_lag..=max_lag)
        .map(|lag| {
            let s: f64 = (0..n)
                .filter(|&i| (0..n).contains(&(i + lag)))
                .map(|i| a[i as usize] * b[(i + lag) as usize])
                .sum();
            (lag, s)
        })
        .max_by(|x, y| x.1.total_cmp(&y.1))
        .unwrap()
        .0
}
