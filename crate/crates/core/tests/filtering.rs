mod common;

use common::{max_abs_diff, noise, rms, tone, xcorr_peak, FS};
use pliwave_core::iir::NotchCascade;
use pliwave_core::{design_notch, filtfilt, frequency_response, Signal};

/// One second of transient at each end is excluded from residual checks.
fn interior(x: &[f64]) -> &[f64] {
    &x[1000..x.len() - 1000]
}

#[test]
fn reference_response_points() {
    let n = design_notch(50.0, 2.0, FS).unwrap();
    let h = frequency_response(&n, &[0.0, 49.0, 50.0, 51.0, 499.0]).unwrap();
    let half = std::f64::consts::FRAC_1_SQRT_2;
    assert!(h[2].norm() <= 1e-6);
    assert!((h[0].re - 1.0).abs() < 1e-12 && h[0].im.abs() < 1e-12);
    assert!(h[4].norm() >= 0.999);
    for z in [h[1], h[3]] {
        assert!((z.norm() / half - 1.0).abs() <= 0.005, "{}", z.norm());
    }
}

#[test]
fn sweep_never_exceeds_unity() {
    for (f0, bw) in [
        (50.0, 2.0),
        (60.0, 1.0),
        (100.0, 4.0),
        (150.0, 2.0),
        (400.0, 10.0),
    ] {
        let n = design_notch(f0, bw, FS).unwrap();
        let freqs: Vec<f64> = (0..=5000).map(|k| k as f64 * 0.1).collect();
        let h = frequency_response(&n, &freqs).unwrap();
        assert!(h.iter().all(|z| z.norm() <= 1.0 + 1e-9));
        assert!(n.pole_radius() <= 1.0 - 1e-6);
    }
}

#[test]
fn removes_on_bin_tone_in_the_interior() {
    let n = design_notch(50.0, 2.0, FS).unwrap();
    let x = tone(50.0, 1.0, 10_000);
    let y = filtfilt(&n, &x).unwrap();
    assert!(
        rms(interior(y.samples())) <= 1e-3 * x.rms(),
        "{}",
        rms(interior(y.samples()))
    );
}

#[test]
fn double_pass_attenuation_is_squared() {
    let n = design_notch(50.0, 2.0, FS).unwrap();
    let h = frequency_response(&n, &[50.0]).unwrap()[0].norm();
    let single_db = -20.0 * h.max(f64::MIN_POSITIVE).log10();
    assert!(2.0 * single_db >= 120.0, "{single_db}");
}

#[test]
fn passes_low_tone_without_delay() {
    let n = design_notch(50.0, 2.0, FS).unwrap();
    let x = tone(10.0, 1.0, 10_000);
    let y = filtfilt(&n, &x).unwrap();
    let err = rms(&common::diff(y.samples(), x.samples()));
    assert!(err <= 1e-3 * x.rms(), "{err}");
    assert_eq!(xcorr_peak(x.samples(), y.samples(), 20), 0);
}

#[test]
fn zero_phase_on_passband_probe() {
    let n = design_notch(50.0, 2.0, FS).unwrap();
    for f in [5.0, 20.0, 80.0, 200.0] {
        let x = Signal::from_fn(4000, FS, |t| {
            (2.0 * std::f64::consts::PI * f * t).sin() * (-((t - 2.0) / 0.3).powi(2)).exp()
        })
        .unwrap();
        let y = filtfilt(&n, &x).unwrap();
        assert_eq!(xcorr_peak(x.samples(), y.samples(), 15), 0, "{f} Hz");
    }
}

#[test]
fn filtfilt_is_linear() {
    let n = design_notch(50.0, 2.0, FS).unwrap();
    let x = noise(3000, 1);
    let y = noise(3000, 2);
    let lhs = filtfilt(&n, &x.add(&y).unwrap()).unwrap();
    let rhs = filtfilt(&n, &x)
        .unwrap()
        .add(&filtfilt(&n, &y).unwrap())
        .unwrap();
    let scale = lhs.samples().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(max_abs_diff(lhs.samples(), rhs.samples()) <= 1e-9 * scale);
}

#[test]
fn cascade_clears_every_harmonic() {
    let c = NotchCascade::harmonics(50.0, 2.0, FS, 3).unwrap();
    let x = tone(50.0, 1.0, 10_000)
        .add(&tone(100.0, 0.4, 10_000))
        .unwrap()
        .add(&tone(150.0, 0.2, 10_000))
        .unwrap();
    let y = c.filtfilt(&x).unwrap();
    assert!(rms(interior(y.samples())) <= 1e-3 * x.rms());
}
