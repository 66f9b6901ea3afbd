//! Time and spectrum traces of one record: clean, noisy and both denoised
//! versions.

use std::fs;
use std::path::{Path, PathBuf};

use pliwave_core::io::fmt17;
use pliwave_core::{amplitude_spectrum, Signal, Spectrum};

use crate::config::BenchConfig;
use crate::error::{BenchError, Result};
use crate::harness::{process, Outputs};
use crate::svg::{line_plot, Series};

#[derive(Debug, Clone)]
pub struct FigureFiles {
    pub time_csv: PathBuf,
    pub spectrum_csv: PathBuf,
    pub svgs: Vec<PathBuf>,
}

const COLUMNS: [&str; 4] = ["clean", "noisy", "notch", "wavelet"];

fn signals(o: &Outputs) -> [&Signal; 4] {
    [&o.clean, &o.noisy, &o.notch, &o.wavelet]
}

/// Writes `record_<id>_sir_<sir>_{time,spectrum}.csv` (and the matching SVGs
/// when `svg` is set) into `dir`.
///
/// `sir_db` need not be one of the configured levels; with independent
/// records the record drawn for the first level is used in that case.
pub fn emit_figure_data(
    cfg: &BenchConfig,
    record: usize,
    sir_db: f64,
    dir: &Path,
    svg: bool,
) -> Result<FigureFiles> {
    cfg.validate()?;
    if record >= cfg.bench.n_records {
        return Err(BenchError::NotFound(format!(
            "record {record} (configuration has {} records)",
            cfg.bench.n_records
        )));
    }
    if sir_db.is_nan() || sir_db == f64::NEG_INFINITY {
        return Err(BenchError::Config(format!("SIR {sir_db} is not usable")));
    }
    let mut cfg = cfg.clone();
    let k = match cfg.sir_index(sir_db) {
        Some(k) => k,
        None => {
            cfg.bench.sir_levels_db[0] = sir_db;
            0
        }
    };
    let out = process(&cfg, record, k)?;
    fs::create_dir_all(dir).map_err(BenchError::io(dir))?;

    let stem = format!("record_{record}_sir_{sir_db}");
    let sigs = signals(&out);
    let fs_hz = out.clean.sample_rate();
    let time: Vec<f64> = (0..out.clean.len()).map(|i| i as f64 / fs_hz).collect();
    let spectra: Vec<Spectrum> = sigs.iter().map(|s| amplitude_spectrum(s)).collect();
    let freq: Vec<f64> = (0..spectra[0].magnitudes.len())
        .map(|k| spectra[0].frequency(k))
        .collect();

    let time_csv = dir.join(format!("{stem}_time.csv"));
    let cols: Vec<&[f64]> = sigs.iter().map(|s| s.samples()).collect();
    write_columns(&time_csv, "time_s", &time, &cols)?;
    let spectrum_csv = dir.join(format!("{stem}_spectrum.csv"));
    let cols: Vec<&[f64]> = spectra.iter().map(|s| s.magnitudes.as_slice()).collect();
    write_columns(&spectrum_csv, "frequency_hz", &freq, &cols)?;

    let mut svgs = Vec::new();
    if svg {
        let series: Vec<Series> = COLUMNS
            .iter()
            .zip(&sigs)
            .map(|(name, s)| Series {
                name,
                y: s.samples(),
            })
            .collect();
        let path = dir.join(format!("{stem}_time.svg"));
        let title = format!("record {record}, SIR {sir_db} dB, time (mV)");
        fs::write(&path, line_plot(&title, &time, &series)).map_err(BenchError::io(&path))?;
        svgs.push(path);

        let db: Vec<Vec<f64>> = spectra
            .iter()
            .map(|s| {
                s.magnitudes
                    .iter()
                    .map(|m| 20.0 * m.max(1e-12).log10())
                    .collect()
            })
            .collect();
        let series: Vec<Series> = COLUMNS
            .iter()
            .zip(&db)
            .map(|(name, y)| Series { name, y })
            .collect();
        let path = dir.join(format!("{stem}_spectrum.svg"));
        let title = format!("record {record}, SIR {sir_db} dB, amplitude spectrum (dB)");
        fs::write(&path, line_plot(&title, &freq, &series)).map_err(BenchError::io(&path))?;
        svgs.push(path);
    }
    Ok(FigureFiles {
        time_csv,
        spectrum_csv,
        svgs,
    })
}

fn write_columns(path: &Path, axis: &str, x: &[f64], cols: &[&[f64]]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)
        .map_err(|e| BenchError::Data(format!("{}: {e}", path.display())))?;
    let mut header = vec![axis];
    header.extend(COLUMNS);
    let werr = |e: csv::Error| BenchError::Data(format!("{}: {e}", path.display()));
    w.write_record(&header).map_err(werr)?;
    for (i, xv) in x.iter().enumerate() {
        let mut row = vec![fmt17(*xv)];
        row.extend(cols.iter().map(|c| fmt17(c[i])));
        w.write_record(&row).map_err(werr)?;
    }
    w.flush().map_err(BenchError::io(path))
}

/// Reads a file written by [`emit_figure_data`] back as `(axis, columns)`
/// with columns in the order clean, noisy, notch, wavelet.
pub fn read_columns(path: &Path) -> Result<(Vec<f64>, [Vec<f64>; 4])> {
    let mut r = csv::Reader::from_path(path)
        .map_err(|e| BenchError::Data(format!("{}: {e}", path.display())))?;
    let mut axis = Vec::new();
    let mut cols: [Vec<f64>; 4] = Default::default();
    for rec in r.records() {
        let rec = rec.map_err(|e| BenchError::Data(format!("{}: {e}", path.display())))?;
        let vals: Vec<f64> = rec
            .iter()
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| BenchError::Data(format!("{}: {e}", path.display())))?;
        if vals.len() != 5 {
            return Err(BenchError::Data(format!(
                "{}: expected 5 columns",
                path.display()
            )));
        }
        axis.push(vals[0]);
        for (c, v) in cols.iter_mut().zip(&vals[1..]) {
            c.push(*v);
        }
    }
    Ok((axis, cols))
}
