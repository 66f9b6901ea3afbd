//! Benchmark driver: synthesize, mix, denoise both ways, score.

use std::fs;
use std::path::{Path, PathBuf};

use pliwave_core::rng::derive_seed;
use pliwave_core::{
    denoise_notch, denoise_wavelet, mix_at_sir, sci_freq, sci_time, synth_egm, synth_pli, Rng,
    Signal,
};
use rayon::prelude::*;

use crate::config::BenchConfig;
use crate::error::{BenchError, Result};
use crate::report::{render_rows, render_table, Domain, Method, RecordRow, SciReport, TableFormat};

const EGM_STREAM: u64 = 0;
const PLI_STREAM: u64 = 1;

/// Seed of one record. Shared across SIR levels unless
/// `independent_records` is set.
pub fn record_seed(cfg: &BenchConfig, record: usize, sir_index: usize) -> u64 {
    let slot = if cfg.bench.independent_records {
        (sir_index * cfg.bench.n_records + record) as u64
    } else {
        record as u64
    };
    derive_seed(cfg.bench.master_seed, slot)
}

/// Clean electrogram and unscaled interference for a record.
pub fn record_signals(
    cfg: &BenchConfig,
    record: usize,
    sir_index: usize,
) -> Result<(Signal, Signal)> {
    let seed = record_seed(cfg, record, sir_index);
    let fs = cfg.bench.sample_rate_hz;
    let wrap = |source| BenchError::Record { record, source };
    let clean = synth_egm(&cfg.egm, fs, &mut Rng::with_stream(seed, EGM_STREAM)).map_err(wrap)?;
    let pli = synth_pli(
        &cfg.pli,
        clean.duration(),
        fs,
        &mut Rng::with_stream(seed, PLI_STREAM),
    )
    .map_err(wrap)?;
    Ok((clean, pli))
}

/// Both denoised versions of one mixture.
pub struct Outputs {
    pub clean: Signal,
    pub noisy: Signal,
    pub notch: Signal,
    pub wavelet: Signal,
}

pub fn process(cfg: &BenchConfig, record: usize, sir_index: usize) -> Result<Outputs> {
    let sir = cfg.bench.sir_levels_db[sir_index];
    let (clean, pli) = record_signals(cfg, record, sir_index)?;
    let wrap = |source| BenchError::Record { record, source };
    let (noisy, _) = mix_at_sir(&clean, &pli, sir).map_err(wrap)?;
    let notch = denoise_notch(&noisy, &cfg.denoise).map_err(wrap)?;
    let wavelet = denoise_wavelet(&noisy, &cfg.denoise).map_err(wrap)?;
    Ok(Outputs {
        clean,
        noisy,
        notch,
        wavelet,
    })
}

fn score(cfg: &BenchConfig, record: usize, sir_index: usize) -> Result<Vec<RecordRow>> {
    let out = process(cfg, record, sir_index)?;
    let sir_db = cfg.bench.sir_levels_db[sir_index];
    let wrap = |source| BenchError::Record { record, source };
    let mut rows = Vec::with_capacity(4);
    for (method, test) in [(Method::Wavelet, &out.wavelet), (Method::Notch, &out.notch)] {
        for domain in Domain::ALL {
            let r = match domain {
                Domain::Time => sci_time(&out.clean, test, &cfg.sci),
                Domain::Frequency => sci_freq(&out.clean, test, &cfg.sci),
            }
            .map_err(wrap)?;
            rows.push(RecordRow {
                record,
                sir_db,
                method,
                domain,
                raw: r.raw,
                match_percent: r.match_percent,
            });
        }
    }
    Ok(rows)
}

/// Runs every record at every SIR level. Records are processed in parallel;
/// rows come back ordered by record, then SIR level as configured.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<SciReport> {
    cfg.validate()?;
    let levels = cfg.bench.sir_levels_db.len();
    let per_record: Vec<Vec<RecordRow>> = (0..cfg.bench.n_records)
        .into_par_iter()
        .map(|record| {
            let mut rows = Vec::with_capacity(4 * levels);
            for k in 0..levels {
                rows.extend(score(cfg, record, k)?);
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    let rows = per_record.into_iter().flatten().collect();
    Ok(SciReport::from_rows(
        rows,
        &cfg.bench.sir_levels_db,
        cfg.bench.n_records,
        cfg.sci.report_mode,
    ))
}

/// Files written by [`persist`].
#[derive(Debug, Clone)]
pub struct ReportFiles {
    pub records: PathBuf,
    pub table_markdown: PathBuf,
    pub table_csv: PathBuf,
    pub config: PathBuf,
}

pub fn persist(report: &SciReport, cfg: &BenchConfig, dir: &Path) -> Result<ReportFiles> {
    fs::create_dir_all(dir).map_err(BenchError::io(dir))?;
    let files = ReportFiles {
        records: dir.join("records.csv"),
        table_markdown: dir.join("table.md"),
        table_csv: dir.join("table.csv"),
        config: dir.join("config.toml"),
    };
    let write = |path: &Path, text: &str| fs::write(path, text).map_err(BenchError::io(path));
    write(&files.records, &render_rows(&report.rows))?;
    write(
        &files.table_markdown,
        &render_table(report, TableFormat::Markdown)?,
    )?;
    write(&files.table_csv, &render_table(report, TableFormat::Csv)?)?;
    write(&files.config, &cfg.to_text())?;
    Ok(files)
}
