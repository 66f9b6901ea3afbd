//! Run configuration.
//!
//! The file format is plain `key = value` lines grouped under `[section]`
//! headers (a TOML subset):
//!
//! ```text
//! [bench]
//! n_records = 100
//! sir_levels_db = [25, 20, 15, 10, 5]
//! master_seed = 7
//!
//! [denoise]
//! threshold_gain = 1.0
//! ```
//!
//! Every field has a default, so an empty file is a valid configuration.

use std::fs;
use std::path::{Path, PathBuf};

use pliwave_core::{DenoiseConfig, EgmSynthParams, PliParams, SciConfig};
use serde::{Deserialize, Serialize};
use toml::{Table, Value};

use crate::error::{BenchError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSettings {
    pub n_records: usize,
    /// `inf` is accepted and means "no interference".
    pub sir_levels_db: Vec<f64>,
    pub master_seed: u64,
    pub sample_rate_hz: f64,
    pub output_dir: PathBuf,
    /// Draw a fresh clean record for every SIR level instead of mixing the
    /// same record at each level.
    pub independent_records: bool,
}

impl Default for RunSettings {
    fn default() -> Self {
        Self {
            n_records: 100,
            sir_levels_db: vec![25.0, 20.0, 15.0, 10.0, 5.0],
            master_seed: 20_190_101,
            sample_rate_hz: pliwave_core::DEFAULT_SAMPLE_RATE,
            output_dir: PathBuf::from("pliwave-out"),
            independent_records: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchConfig {
    pub bench: RunSettings,
    pub egm: EgmSynthParams,
    pub pli: PliParams,
    pub denoise: DenoiseConfig,
    pub sci: SciConfig,
}

impl BenchConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Self =
            toml::from_str(text).map_err(|e| BenchError::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads `path` (if given), applies `section.key=value` overrides in
    /// order, then validates.
    pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<Self> {
        let mut table = match path {
            Some(p) => {
                let text = fs::read_to_string(p)
                    .map_err(|e| BenchError::Config(format!("{}: {e}", p.display())))?;
                text.parse::<Table>()
                    .map_err(|e| BenchError::Config(format!("{}: {}", p.display(), e.message())))?
            }
            None => Table::new(),
        };
        for o in overrides {
            apply_override(&mut table, o)?;
        }
        let cfg: Self = Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| BenchError::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_text(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let b = &self.bench;
        if b.n_records == 0 {
            return Err(BenchError::Config("n_records must be at least 1".into()));
        }
        if b.sir_levels_db.is_empty() {
            return Err(BenchError::Config("sir_levels_db is empty".into()));
        }
        if let Some(s) = b
            .sir_levels_db
            .iter()
            .find(|s| s.is_nan() || **s == f64::NEG_INFINITY)
        {
            return Err(BenchError::Config(format!("SIR level {s} is not usable")));
        }
        for (i, s) in b.sir_levels_db.iter().enumerate() {
            if b.sir_levels_db[..i].contains(s) {
                return Err(BenchError::Config(format!("SIR level {s} listed twice")));
            }
        }
        let fs = b.sample_rate_hz;
        let wrap = |e: pliwave_core::Error| BenchError::Config(e.to_string());
        self.egm.validate().map_err(wrap)?;
        self.pli.validate(fs).map_err(wrap)?;
        self.denoise.validate().map_err(wrap)?;
        self.sci.validate().map_err(wrap)?;
        let n = (self.egm.duration_s * fs).round() as usize;
        let needed =
            (1usize << self.denoise.levels).max(pliwave_core::iir::Biquad::MIN_FILTFILT_LEN);
        if n < needed {
            return Err(BenchError::Config(format!(
                "records of {n} samples are too short (need {needed})"
            )));
        }
        Ok(())
    }

    /// Index of `sir_db` in the configured levels.
    pub fn sir_index(&self, sir_db: f64) -> Option<usize> {
        self.bench.sir_levels_db.iter().position(|s| *s == sir_db)
    }
}

/// `section.key=value`; the value is read as a TOML literal when it parses as
/// one and as a bare string otherwise.
fn apply_override(table: &mut Table, spec: &str) -> Result<()> {
    let bad = || BenchError::Config(format!("override {spec:?} is not section.key=value"));
    let (path, raw) = spec.split_once('=').ok_or_else(bad)?;
    let (section, key) = path.trim().split_once('.').ok_or_else(bad)?;
    let raw = raw.trim();
    let value = format!("v = {raw}")
        .parse::<Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| Value::String(raw.to_string()));
    let entry = table
        .entry(section.to_string())
        .or_insert_with(|| Value::Table(Table::new()));
    match entry {
        Value::Table(t) => {
            t.insert(key.to_string(), value);
            Ok(())
        }
        _ => Err(BenchError::Config(format!("{section} is not a section"))),
    }
}
