use std::fs;

use pliwave_bench::figure::read_columns;
use pliwave_bench::report::{Domain, Method};
use pliwave_bench::{emit_figure_data, run_benchmark, BenchConfig};

fn small(n: usize, levels: Vec<f64>) -> BenchConfig {
    let mut cfg = BenchConfig::default();
    cfg.bench.n_records = n;
    cfg.bench.sir_levels_db = levels;
    cfg
}

#[test]
fn clean_only_regression() {
    // No interference: whatever either method changes is pure distortion.
    let r = run_benchmark(&small(10, vec![f64::INFINITY])).unwrap();
    let time = |m| r.cell(m, Domain::Time, f64::INFINITY).unwrap().mean;
    let w = time(Method::Wavelet);
    let n = time(Method::Notch);
    eprintln!("clean input, time SCI: wavelet {w:.2}%, notch {n:.2}%");
    assert!(w >= 55.0, "{w}");
    assert!((n - 21.0).abs() <= 3.0, "{n}");
    assert!(w > n);
}

#[test]
fn figure_spectra_show_and_reduce_the_harmonics() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small(3, vec![25.0, 10.0]);
    let files = emit_figure_data(&cfg, 2, 10.0, dir.path(), false).unwrap();
    let (freq, [clean, noisy, _notch, wavelet]) = read_columns(&files.spectrum_csv).unwrap();
    let peak = |col: &[f64], f0: f64| {
        freq.iter()
            .zip(col)
            .filter(|(f, _)| (**f - f0).abs() <= 1.0)
            .map(|(_, v)| *v)
            .fold(0.0, f64::max)
    };
    for h in [50.0, 100.0, 150.0] {
        assert!(
            peak(&noisy, h) > 2.0 * peak(&clean, h),
            "{h} Hz line not visible"
        );
        assert!(peak(&wavelet, h) < peak(&noisy, h), "{h} Hz not reduced");
    }
}

#[test]
fn figure_files_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let cfg = small(2, vec![10.0]);
    let fa = emit_figure_data(&cfg, 1, 10.0, a.path(), true).unwrap();
    let fb = emit_figure_data(&cfg, 1, 10.0, b.path(), true).unwrap();
    assert_eq!(
        fs::read(fa.time_csv).unwrap(),
        fs::read(fb.time_csv).unwrap()
    );
    assert_eq!(
        fs::read(&fa.svgs[1]).unwrap(),
        fs::read(&fb.svgs[1]).unwrap()
    );
}
