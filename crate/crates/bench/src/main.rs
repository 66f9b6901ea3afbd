use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pliwave_bench::report::{render_table, TableFormat};
use pliwave_bench::{
    dataset, emit_figure_data, persist, run_benchmark, BenchConfig, BenchError, Result,
};
use pliwave_core::denoise::denoise_wavelet_detailed;
use pliwave_core::io::{load_signal, save_signal};
use pliwave_core::wavelet::{image_frequency, BOUNDARY_MODE};
use pliwave_core::{
    coif2_filters, denoise_notch, design_notch, frequency_response, scale_band, sci_freq, sci_time,
};

#[derive(Parser)]
#[command(
    name = "pliwave",
    version,
    about = "Powerline interference removal for electrograms"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Configuration file (key = value lines under [section] headers).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides bench.master_seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Extra override, `section.key=value`; repeatable.
    #[arg(long = "set", global = true, value_name = "SECTION.KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate clean records and their mixtures, with a manifest.
    Synth {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Denoise one signal file.
    Denoise {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Wavelet)]
        method: MethodArg,
        /// Print the per-scale thresholds (wavelet method).
        #[arg(long)]
        thresholds: bool,
    },
    /// Signed correlation index of a test signal against a reference.
    Sci {
        #[arg(long)]
        reference: PathBuf,
        #[arg(long)]
        test: PathBuf,
        #[arg(long, value_enum, default_value_t = DomainArg::Both)]
        domain: DomainArg,
        #[arg(long)]
        json: bool,
    },
    /// Full SIR sweep over all records; writes rows and tables.
    Bench {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time and spectrum traces of one record at one SIR.
    Figure {
        #[arg(long)]
        record: usize,
        #[arg(long, allow_negative_numbers = true)]
        sir: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also render SVG line plots.
        #[arg(long)]
        svg: bool,
    },
    /// Coefficients, poles and response of a notch design.
    InspectFilter {
        #[arg(long)]
        center: Option<f64>,
        #[arg(long)]
        bandwidth: Option<f64>,
        #[arg(long)]
        fs: Option<f64>,
        /// Response samples printed between DC and Nyquist.
        #[arg(long, default_value_t = 11)]
        points: usize,
    },
    /// Filter bank checks, scale bands and coefficient lengths.
    InspectWavelet {
        #[arg(long)]
        levels: Option<usize>,
        #[arg(long)]
        fs: Option<f64>,
        #[arg(long)]
        length: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Wavelet,
    Notch,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum DomainArg {
    Time,
    Frequency,
    Both,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pliwave: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn load_config(common: &Common) -> Result<BenchConfig> {
    let mut overrides = common.overrides.clone();
    if let Some(seed) = common.seed {
        overrides.push(format!("bench.master_seed={seed}"));
    }
    BenchConfig::load(common.config.as_deref(), &overrides)
}

fn run(cli: Cli) -> Result<()> {
    let cfg = load_config(&cli.common)?;
    match cli.command {
        Command::Synth { out } => {
            let dir = out.unwrap_or_else(|| cfg.bench.output_dir.join("dataset"));
            let entries = dataset::write_dataset(&cfg, &dir)?;
            println!("wrote {} mixtures to {}", entries.len(), dir.display());
        }
        Command::Denoise {
            input,
            output,
            method,
            thresholds,
        } => {
            let x = load(&input)?;
            let y = match method {
                MethodArg::Notch => denoise_notch(&x, &cfg.denoise)?,
                MethodArg::Wavelet => {
                    let d = denoise_wavelet_detailed(&x, &cfg.denoise)?;
                    if thresholds {
                        for (j, (l, p)) in d
                            .thresholds
                            .lambda
                            .iter()
                            .zip(&d.thresholds.source_power)
                            .enumerate()
                        {
                            println!("scale {}: lambda {l:.6e}  band power {p:.6e}", j + 1);
                        }
                    }
                    d.output
                }
            };
            save_signal(&y, &output)?;
        }
        Command::Sci {
            reference,
            test,
            domain,
            json,
        } => sci(&cfg, &reference, &test, domain, json)?,
        Command::Bench { out } => {
            let dir = out.unwrap_or_else(|| cfg.bench.output_dir.clone());
            let report = run_benchmark(&cfg)?;
            let files = persist(&report, &cfg, &dir)?;
            print!("{}", render_table(&report, TableFormat::Markdown)?);
            println!("\nrows: {}", files.records.display());
        }
        Command::Figure {
            record,
            sir,
            out,
            svg,
        } => {
            let dir = out.unwrap_or_else(|| cfg.bench.output_dir.join("figure"));
            let files = emit_figure_data(&cfg, record, sir, &dir, svg)?;
            println!("{}", files.time_csv.display());
            println!("{}", files.spectrum_csv.display());
            for p in files.svgs {
                println!("{}", p.display());
            }
        }
        Command::InspectFilter {
            center,
            bandwidth,
            fs,
            points,
        } => {
            let center = center.unwrap_or(cfg.denoise.notch_center_hz);
            let bandwidth = bandwidth.unwrap_or(cfg.denoise.notch_bw_hz);
            let fs = fs.unwrap_or(cfg.bench.sample_rate_hz);
            inspect_filter(center, bandwidth, fs, points)?;
        }
        Command::InspectWavelet { levels, fs, length } => {
            let levels = levels.unwrap_or(cfg.denoise.levels);
            let fs = fs.unwrap_or(cfg.bench.sample_rate_hz);
            let length = length.unwrap_or((cfg.egm.duration_s * fs).round() as usize);
            inspect_wavelet(&cfg, levels, fs, length)?;
        }
    }
    Ok(())
}

fn load(path: &Path) -> Result<pliwave_core::Signal> {
    load_signal(path).map_err(|e| BenchError::Data(format!("{}: {e}", path.display())))
}

fn sci(
    cfg: &BenchConfig,
    reference: &Path,
    test: &Path,
    domain: DomainArg,
    json: bool,
) -> Result<()> {
    let r = load(reference)?;
    let t = load(test)?;
    let mut results = Vec::new();
    if domain != DomainArg::Frequency {
        results.push(("time", sci_time(&r, &t, &cfg.sci)?));
    }
    if domain != DomainArg::Time {
        results.push(("frequency", sci_freq(&r, &t, &cfg.sci)?));
    }
    if json {
        let obj: serde_json::Map<String, serde_json::Value> = results
            .iter()
            .map(|(name, res)| {
                (
                    name.to_string(),
                    serde_json::to_value(res).expect("plain struct"),
                )
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&obj).expect("plain map"));
    } else {
        for (name, res) in results {
            println!(
                "{name}: raw {:.6}  match {:.4}%  xi {:.6e}  n {}",
                res.raw, res.match_percent, res.xi_used, res.n_samples
            );
        }
    }
    Ok(())
}

fn inspect_filter(center: f64, bandwidth: f64, fs: f64, points: usize) -> Result<()> {
    let n = design_notch(center, bandwidth, fs).map_err(|e| BenchError::Config(e.to_string()))?;
    println!("notch {center} Hz, bandwidth {bandwidth} Hz, fs {fs} Hz");
    println!("b = [{:.17e}, {:.17e}, {:.17e}]", n.b[0], n.b[1], n.b[2]);
    println!("a = [{:.17e}, {:.17e}, {:.17e}]", n.a[0], n.a[1], n.a[2]);
    let [p, _] = n.poles();
    println!(
        "poles = {:.12} ± {:.12}j  (radius {:.12})",
        p.re,
        p.im.abs(),
        n.pole_radius()
    );
    let mut freqs: Vec<f64> = (0..points.max(2))
        .map(|k| k as f64 * fs / 2.0 / (points.max(2) - 1) as f64)
        .collect();
    freqs.extend([center - bandwidth / 2.0, center, center + bandwidth / 2.0]);
    freqs.sort_by(f64::total_cmp);
    freqs.dedup();
    let h = frequency_response(&n, &freqs)?;
    println!(
        "{:>12}  {:>14}  {:>12}  {:>12}",
        "freq_hz", "|H|", "dB", "dB (2 pass)"
    );
    for (f, z) in freqs.iter().zip(h) {
        let db = 20.0 * z.norm().max(1e-300).log10();
        println!(
            "{f:>12.4}  {:>14.8e}  {db:>12.4}  {:>12.4}",
            z.norm(),
            2.0 * db
        );
    }
    Ok(())
}

fn inspect_wavelet(cfg: &BenchConfig, levels: usize, fs: f64, length: usize) -> Result<()> {
    let bank = coif2_filters();
    let check = bank.check();
    println!(
        "{} ({} taps), boundary {BOUNDARY_MODE}",
        bank.family_name,
        bank.taps()
    );
    println!("low-pass taps:");
    for t in &bank.analysis_lp {
        println!("  {t:+.17e}");
    }
    println!("sum(h) - sqrt(2)       {:.3e}", check.lp_sum_error);
    println!("sum(g)                 {:.3e}", check.hp_sum);
    println!("orthogonality error    {:.3e}", check.orthogonality_error);
    println!(
        "high-pass moments 0..4{:?}",
        check
            .hp_moments
            .iter()
            .map(|m| format!("{m:.1e}"))
            .collect::<Vec<_>>()
    );
    println!("quadrature mirror      {}", check.quadrature_mirror);
    if levels == 0 || length < 1 << levels {
        return Err(BenchError::Config(format!(
            "{length} samples cannot be decomposed into {levels} levels"
        )));
    }
    let harmonics: Vec<f64> = (1..=cfg.denoise.harmonics)
        .map(|h| cfg.denoise.notch_center_hz * h as f64)
        .filter(|f| *f < fs / 2.0)
        .collect();
    println!(
        "\n{:>5}  {:>20}  {:>8}  images (Hz) of {:?}",
        "scale", "band (Hz)", "coeffs", harmonics
    );
    let mut n = length;
    for j in 1..=levels {
        n = bank.output_len(n);
        let (lo, hi) = scale_band(j, fs);
        let images: Vec<String> = harmonics
            .iter()
            .map(|f| format!("{:.3}", image_frequency(*f, j, fs)))
            .collect();
        println!(
            "{j:>5}  {:>20}  {n:>8}  {}",
            format!("{lo:.3} - {hi:.3}"),
            images.join(", ")
        );
    }
    println!(
        "{:>5}  {:>20}  {n:>8}",
        "A",
        format!("0 - {:.3}", fs / 2f64.powi(levels as i32 + 1))
    );
    Ok(())
}
