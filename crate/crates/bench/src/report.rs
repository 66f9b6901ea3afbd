//! Aggregated SCI tables.

use std::fmt::{self, Write as _};

use pliwave_core::ReportMode;
use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Wavelet,
    Notch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Time,
    Frequency,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::Wavelet, Method::Notch];

    pub fn label(self) -> &'static str {
        match self {
            Method::Wavelet => "DWT-based",
            Method::Notch => "Notch filtering",
        }
    }
}

impl Domain {
    pub const ALL: [Domain; 2] = [Domain::Time, Domain::Frequency];

    pub fn label(self) -> &'static str {
        match self {
            Domain::Time => "Time",
            Domain::Frequency => "Frequency",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Wavelet => "wavelet",
            Method::Notch => "notch",
        })
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Time => "time",
            Domain::Frequency => "frequency",
        })
    }
}

/// One SCI evaluation: a record at one SIR, one method, one domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordRow {
    pub record: usize,
    pub sir_db: f64,
    pub method: Method,
    pub domain: Domain,
    pub raw: f64,
    pub match_percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub method: Method,
    pub domain: Domain,
    pub sir_db: f64,
    pub mean: f64,
    pub std: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SciReport {
    pub mode: ReportMode,
    /// In the order they are tabulated (descending).
    pub sir_levels_db: Vec<f64>,
    pub n_records: usize,
    pub cells: Vec<Cell>,
    pub rows: Vec<RecordRow>,
}

/// Published means and standard deviations (match percentage) at SIR 25, 20,
/// 15, 10 and 5 dB, used for side-by-side comparison only.
pub const REFERENCE_SIR_DB: [f64; 5] = [25.0, 20.0, 15.0, 10.0, 5.0];
/// `(method, domain, [(mean, std); 5])`.
pub type ReferenceRow = (Method, Domain, [(f64, f64); 5]);
pub const REFERENCE: [ReferenceRow; 4] = [
    (
        Method::Wavelet,
        Domain::Time,
        [
            (94.1, 1.6),
            (93.6, 1.6),
            (92.4, 1.6),
            (89.6, 1.7),
            (85.9, 2.5),
        ],
    ),
    (
        Method::Wavelet,
        Domain::Frequency,
        [
            (99.5, 0.3),
            (99.4, 0.3),
            (99.3, 0.4),
            (99.1, 0.4),
            (98.5, 0.5),
        ],
    ),
    (
        Method::Notch,
        Domain::Time,
        [
            (79.0, 4.1),
            (78.9, 4.1),
            (78.9, 4.1),
            (78.8, 4.0),
            (78.3, 4.1),
        ],
    ),
    (
        Method::Notch,
        Domain::Frequency,
        [
            (96.4, 0.6),
            (96.4, 0.6),
            (96.4, 0.6),
            (96.3, 0.6),
            (96.3, 0.6),
        ],
    ),
];

pub fn reference_value(method: Method, domain: Domain, sir_db: f64) -> Option<(f64, f64)> {
    let k = REFERENCE_SIR_DB.iter().position(|s| *s == sir_db)?;
    REFERENCE
        .iter()
        .find(|(m, d, _)| *m == method && *d == domain)
        .map(|(_, _, v)| v[k])
}

impl SciReport {
    /// Aggregates rows into mean and sample standard deviation per cell,
    /// using the value selected by `mode`.
    pub fn from_rows(
        rows: Vec<RecordRow>,
        sir_levels_db: &[f64],
        n_records: usize,
        mode: ReportMode,
    ) -> Self {
        let mut levels = sir_levels_db.to_vec();
        levels.sort_by(|a, b| b.total_cmp(a));
        let mut cells = Vec::new();
        for method in Method::ALL {
            for domain in Domain::ALL {
                for &sir in &levels {
                    let values: Vec<f64> = rows
                        .iter()
                        .filter(|r| r.method == method && r.domain == domain && r.sir_db == sir)
                        .map(|r| match mode {
                            ReportMode::Raw => r.raw,
                            ReportMode::MatchPercent => r.match_percent,
                        })
                        .collect();
                    let (mean, std) = mean_std(&values);
                    cells.push(Cell {
                        method,
                        domain,
                        sir_db: sir,
                        mean,
                        std,
                        n: values.len(),
                    });
                }
            }
        }
        Self {
            mode,
            sir_levels_db: levels,
            n_records,
            cells,
            rows,
        }
    }

    pub fn cell(&self, method: Method, domain: Domain, sir_db: f64) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.method == method && c.domain == domain && c.sir_db == sir_db)
    }

    /// Every method × domain × SIR cell present with `n == n_records`.
    pub fn check_complete(&self) -> Result<()> {
        if self.cells.is_empty() || self.sir_levels_db.is_empty() {
            return Err(BenchError::Data("report has no cells".into()));
        }
        for method in Method::ALL {
            for domain in Domain::ALL {
                for &sir in &self.sir_levels_db {
                    match self.cell(method, domain, sir) {
                        None => {
                            return Err(BenchError::Data(format!(
                                "missing cell {method}/{domain}/{sir} dB"
                            )))
                        }
                        Some(c) if c.n != self.n_records || c.n == 0 => {
                            return Err(BenchError::Data(format!(
                                "cell {method}/{domain}/{sir} dB has {} of {} records",
                                c.n, self.n_records
                            )))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(())
    }
}

/// Mean and sample (n - 1) standard deviation; the deviation of a single
/// value is 0.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

/// One decimal, halves rounded away from zero on the decimal value
/// (94.05 -> 94.1 even though its binary value is slightly below).
pub fn one_decimal(x: f64) -> String {
    let r = (x * 10.0).round() / 10.0;
    format!("{:.1}", if r == 0.0 { 0.0 } else { r })
}

pub fn mean_pm_std(mean: f64, std: f64) -> String {
    format!("{} ± {}", one_decimal(mean), one_decimal(std))
}

fn sir_label(sir: f64) -> String {
    format!("{sir}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Csv,
}

pub fn render_table(report: &SciReport, format: TableFormat) -> Result<String> {
    report.check_complete()?;
    Ok(match format {
        TableFormat::Markdown => render_markdown(report),
        TableFormat::Csv => render_csv(report),
    })
}

fn render_markdown(report: &SciReport) -> String {
    let unit = match report.mode {
        ReportMode::MatchPercent => "SCI (%)",
        ReportMode::Raw => "SCI (raw)",
    };
    let mut out = String::new();
    let header: Vec<String> = report
        .sir_levels_db
        .iter()
        .map(|s| format!("{} dB", sir_label(*s)))
        .collect();
    let _ = writeln!(out, "| Method | {unit} | {} |", header.join(" | "));
    let _ = writeln!(out, "|---|---|{}", "---|".repeat(header.len()));
    for method in Method::ALL {
        for domain in Domain::ALL {
            let vals: Vec<String> = report
                .sir_levels_db
                .iter()
                .map(|&s| {
                    let c = report.cell(method, domain, s).expect("complete report");
                    mean_pm_std(c.mean, c.std)
                })
                .collect();
            let _ = writeln!(
                out,
                "| {} | {} | {} |",
                method.label(),
                domain.label(),
                vals.join(" | ")
            );
        }
    }
    let _ = writeln!(out, "\nn = {} records per cell.", report.n_records);

    if report.mode == ReportMode::MatchPercent {
        let levels: Vec<f64> = report
            .sir_levels_db
            .iter()
            .copied()
            .filter(|s| REFERENCE_SIR_DB.contains(s))
            .collect();
        if !levels.is_empty() {
            let _ = writeln!(out, "\nWavelet minus notch mean, measured (published):\n");
            let header: Vec<String> = levels
                .iter()
                .map(|s| format!("{} dB", sir_label(*s)))
                .collect();
            let _ = writeln!(out, "| Domain | {} |", header.join(" | "));
            let _ = writeln!(out, "|---|{}", "---|".repeat(levels.len()));
            for domain in Domain::ALL {
                let vals: Vec<String> = levels
                    .iter()
                    .map(|&s| {
                        let gap = report.cell(Method::Wavelet, domain, s).unwrap().mean
                            - report.cell(Method::Notch, domain, s).unwrap().mean;
                        let published = reference_value(Method::Wavelet, domain, s).unwrap().0
                            - reference_value(Method::Notch, domain, s).unwrap().0;
                        format!("{} ({})", one_decimal(gap), one_decimal(published))
                    })
                    .collect();
                let _ = writeln!(out, "| {} | {} |", domain.label(), vals.join(" | "));
            }
        }
    }
    out
}

fn render_csv(report: &SciReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "method",
        "domain",
        "sir_db",
        "mean",
        "std",
        "n",
        "published_mean",
        "published_std",
    ])
    .expect("in-memory write");
    for c in &report.cells {
        let (pm, ps) = match (report.mode, reference_value(c.method, c.domain, c.sir_db)) {
            (ReportMode::MatchPercent, Some((m, s))) => (one_decimal(m), one_decimal(s)),
            _ => (String::new(), String::new()),
        };
        w.write_record([
            c.method.to_string(),
            c.domain.to_string(),
            sir_label(c.sir_db),
            one_decimal(c.mean),
            one_decimal(c.std),
            c.n.to_string(),
            pm,
            ps,
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

#[derive(Debug, Deserialize)]
struct CsvCell {
    method: Method,
    domain: Domain,
    sir_db: f64,
    mean: f64,
    std: f64,
    n: usize,
}

/// Reads a table rendered as CSV back into cells (at printed precision).
pub fn parse_table_csv(text: &str) -> Result<Vec<Cell>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut cells = Vec::new();
    for row in r.deserialize::<CsvCell>() {
        let c = row.map_err(|e| BenchError::Data(format!("table csv: {e}")))?;
        cells.push(Cell {
            method: c.method,
            domain: c.domain,
            sir_db: c.sir_db,
            mean: c.mean,
            std: c.std,
            n: c.n,
        });
    }
    if cells.is_empty() {
        return Err(BenchError::Data("table csv has no rows".into()));
    }
    Ok(cells)
}

/// Per-record rows as CSV, full precision.
pub fn render_rows(rows: &[RecordRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "record",
        "sir_db",
        "method",
        "domain",
        "raw",
        "match_percent",
    ])
    .expect("in-memory write");
    for r in rows {
        w.write_record([
            r.record.to_string(),
            sir_label(r.sir_db),
            r.method.to_string(),
            r.domain.to_string(),
            pliwave_core::io::fmt17(r.raw),
            pliwave_core::io::fmt17(r.match_percent),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}
