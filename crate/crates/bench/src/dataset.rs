//! Writes a synthesized dataset (clean records and their mixtures) with a
//! manifest.

use std::fs;
use std::path::{Path, PathBuf};

use pliwave_core::io::{fmt17, save_signal};
use pliwave_core::mix_at_sir;
use pliwave_core::synthesis::measured_sir_db;

use crate::config::BenchConfig;
use crate::error::{BenchError, Result};
use crate::harness::{record_seed, record_signals};

#[derive(Debug, Clone, PartialEq)]
pub struct ManifestEntry {
    pub record: usize,
    pub sir_db: f64,
    pub seed: u64,
    pub clean: PathBuf,
    pub noisy: PathBuf,
    pub measured_sir_db: f64,
}

/// One clean file per record (per record and level with independent
/// records) and one noisy file per record and level. Paths in the manifest
/// are relative to `dir`.
pub fn write_dataset(cfg: &BenchConfig, dir: &Path) -> Result<Vec<ManifestEntry>> {
    cfg.validate()?;
    fs::create_dir_all(dir).map_err(BenchError::io(dir))?;
    let mut entries = Vec::new();
    for record in 0..cfg.bench.n_records {
        for (k, &sir) in cfg.bench.sir_levels_db.iter().enumerate() {
            let (clean, pli) = record_signals(cfg, record, k)?;
            let clean_name = if cfg.bench.independent_records {
                PathBuf::from(format!("clean_{record:04}_sir_{sir}.csv"))
            } else {
                PathBuf::from(format!("clean_{record:04}.csv"))
            };
            if k == 0 || cfg.bench.independent_records {
                save_signal(&clean, dir.join(&clean_name))?;
            }
            let (noisy, scaled) = mix_at_sir(&clean, &pli, sir)
                .map_err(|source| BenchError::Record { record, source })?;
            let noisy_name = PathBuf::from(format!("noisy_{record:04}_sir_{sir}.csv"));
            save_signal(&noisy, dir.join(&noisy_name))?;
            entries.push(ManifestEntry {
                record,
                sir_db: sir,
                seed: record_seed(cfg, record, k),
                clean: clean_name,
                noisy: noisy_name,
                measured_sir_db: measured_sir_db(&clean, &scaled),
            });
        }
    }
    let manifest = dir.join("manifest.csv");
    let mut w = csv::Writer::from_path(&manifest).map_err(|e| BenchError::Data(e.to_string()))?;
    let werr = |e: csv::Error| BenchError::Data(e.to_string());
    w.write_record([
        "record",
        "sir_db",
        "seed",
        "clean",
        "noisy",
        "measured_sir_db",
    ])
    .map_err(werr)?;
    for e in &entries {
        w.write_record([
            e.record.to_string(),
            e.sir_db.to_string(),
            e.seed.to_string(),
            e.clean.display().to_string(),
            e.noisy.display().to_string(),
            fmt17(e.measured_sir_db),
        ])
        .map_err(werr)?;
    }
    w.flush().map_err(BenchError::io(&manifest))?;
    let cfg_path = dir.join("config.toml");
    fs::write(&cfg_path, cfg.to_text()).map_err(BenchError::io(&cfg_path))?;
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pliwave_core::io::load_signal;

    #[test]
    fn manifest_matches_files() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = BenchConfig::default();
        cfg.bench.n_records = 2;
        cfg.bench.sir_levels_db = vec![10.0, 5.0];
        cfg.egm.duration_s = 1.0;
        let entries = write_dataset(&cfg, dir.path()).unwrap();
        assert_eq!(entries.len(), 4);
        for e in &entries {
            assert!((e.measured_sir_db - e.sir_db).abs() < 1e-3);
            let noisy = load_signal(dir.path().join(&e.noisy)).unwrap();
            assert_eq!(noisy.len(), 1000);
            assert!(dir.path().join(&e.clean).exists());
        }
        let manifest = fs::read_to_string(dir.path().join("manifest.csv")).unwrap();
        assert_eq!(manifest.lines().count(), 5);
    }
}
