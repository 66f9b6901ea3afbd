//! Plain-text signal files.
//!
//! ```text
//! # sample_rate=1000
//! 0,1.2345678901234567e-1
//! 1,-3.0000000000000000e-2
//! ```
//!
//! The index column is optional on input. Amplitudes are written with 17
//! significant digits, which round-trips every `f64` exactly.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::signal::{Signal, Spectrum};

const RATE_KEY: &str = "sample_rate=";

/// Formats a value with 17 significant digits.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_signal<W: Write>(signal: &Signal, mut out: W) -> Result<()> {
    writeln!(out, "# {RATE_KEY}{}", signal.sample_rate())?;
    for (i, v) in signal.samples().iter().enumerate() {
        writeln!(out, "{i},{}", fmt17(*v))?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_signal<R: Read>(input: R) -> Result<Signal> {
    let mut reader = BufReader::new(input);
    let mut header = String::new();
    reader.read_line(&mut header)?;
    let sample_rate = parse_header(&header)?;

    let mut rows = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut samples = Vec::new();
    for (line, record) in rows.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let field = match record.len() {
            1 => &record[0],
            2 => &record[1],
            n => {
                return Err(Error::Parse(format!(
                    "row {}: expected 1 or 2 columns, found {n}",
                    line + 1
                )))
            }
        };
        let v: f64 = field
            .parse()
            .map_err(|_| Error::Parse(format!("row {}: bad amplitude {field:?}", line + 1)))?;
        samples.push(v);
    }
    Signal::new(samples, sample_rate)
}

fn parse_header(line: &str) -> Result<f64> {
    let body = line
        .trim()
        .strip_prefix('#')
        .map(str::trim)
        .and_then(|s| s.strip_prefix(RATE_KEY))
        .ok_or_else(|| Error::Parse(format!("missing '# {RATE_KEY}<Hz>' header")))?;
    body.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad sample rate {:?}", body.trim())))
}

pub fn save_signal(signal: &Signal, path: impl AsRef<Path>) -> Result<()> {
    write_signal(signal, BufWriter::new(File::create(path)?))
}

pub fn load_signal(path: impl AsRef<Path>) -> Result<Signal> {
    read_signal(File::open(path)?)
}

/// Writes `frequency,magnitude` rows.
pub fn write_spectrum<W: Write>(spectrum: &Spectrum, mut out: W) -> Result<()> {
    writeln!(out, "frequency_hz,magnitude")?;
    for (k, m) in spectrum.magnitudes.iter().enumerate() {
        writeln!(out, "{},{}", fmt17(spectrum.frequency(k)), fmt17(*m))?;
    }
    out.flush()?;
    Ok(())
}

pub fn save_spectrum(spectrum: &Spectrum, path: impl AsRef<Path>) -> Result<()> {
    write_spectrum(spectrum, BufWriter::new(File::create(path)?))
}
