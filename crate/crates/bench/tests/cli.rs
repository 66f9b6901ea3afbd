use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn pliwave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pliwave"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const SMALL: [&str; 6] = [
    "--set",
    "bench.n_records=2",
    "--set",
    "bench.sir_levels_db=[10]",
    "--set",
    "egm.duration_s=2",
];

#[test]
fn inspect_commands_succeed() {
    let o = pliwave(&["inspect-filter", "--points", "3"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("b = [") && text.contains("49.0000"));
    let o = pliwave(&["inspect-wavelet", "--length", "10000"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("5006"));
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.conf");
    fs::write(&bad, "[bench]\nn_records = -3\n").unwrap();
    assert_eq!(code(&pliwave(&["--config", path(&bad), "bench"])), 2);
    fs::write(&bad, "[denoise]\nunknown_key = 1\n").unwrap();
    assert_eq!(code(&pliwave(&["--config", path(&bad), "bench"])), 2);
    assert_eq!(
        code(&pliwave(&["--config", "/no/such/file.conf", "bench"])),
        2
    );
    assert_eq!(code(&pliwave(&["inspect-filter", "--center", "600"])), 2);
    assert_eq!(code(&pliwave(&["no-such-command"])), 2);
}

#[test]
fn data_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("x.csv");
    fs::write(&garbage, "# sample_rate=1000\n0,abc\n").unwrap();
    let out = dir.path().join("y.csv");
    assert_eq!(
        code(&pliwave(&[
            "denoise",
            "--input",
            path(&garbage),
            "--output",
            path(&out)
        ])),
        3
    );
    assert_eq!(
        code(&pliwave(&[
            "sci",
            "--reference",
            "/no/such.csv",
            "--test",
            path(&garbage)
        ])),
        3
    );
    let mut args = SMALL.to_vec();
    args.extend([
        "figure",
        "--record",
        "5",
        "--sir",
        "10",
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(code(&pliwave(&args)), 3);
}

#[test]
fn synth_denoise_sci_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data");
    let mut args = SMALL.to_vec();
    args.extend(["synth", "--out", path(&data)]);
    assert_eq!(code(&pliwave(&args)), 0);
    let manifest = fs::read_to_string(data.join("manifest.csv")).unwrap();
    assert_eq!(manifest.lines().count(), 3);

    let noisy = data.join("noisy_0000_sir_10.csv");
    let clean = data.join("clean_0000.csv");
    let out = dir.path().join("den.csv");
    let o = pliwave(&[
        "denoise",
        "--input",
        path(&noisy),
        "--output",
        path(&out),
        "--thresholds",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("scale 4"));

    let o = pliwave(&[
        "sci",
        "--reference",
        path(&clean),
        "--test",
        path(&out),
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["time"]["match_percent"].as_f64().unwrap() > 0.0);
    assert!(v["frequency"]["raw"].as_f64().unwrap() <= 1.0);
}

#[test]
fn seed_flag_drives_bench_output() {
    let dir = tempfile::tempdir().unwrap();
    let run = |seed: &str, sub: &str| {
        let out = dir.path().join(sub);
        let mut args = SMALL.to_vec();
        args.extend(["--seed", seed, "bench", "--out", path(&out)]);
        assert_eq!(code(&pliwave(&args)), 0);
        fs::read(out.join("records.csv")).unwrap()
    };
    let a = run("11", "a");
    let b = run("11", "b");
    let c = run("12", "c");
    assert_eq!(a, b);
    assert_ne!(a, c);
    let cfg = fs::read_to_string(dir.path().join("a/config.toml")).unwrap();
    assert!(cfg.contains("master_seed = 11"));
}

#[test]
fn figure_with_svg() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = SMALL.to_vec();
    args.extend([
        "figure",
        "--record",
        "1",
        "--sir",
        "10",
        "--svg",
        "--out",
        path(dir.path()),
    ]);
    let o = pliwave(&args);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 4);
}

#[test]
fn shipped_config_matches_defaults() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../config/pliwave.conf");
    let cfg = pliwave_bench::BenchConfig::load(Some(Path::new(path)), &[]).unwrap();
    assert_eq!(cfg, pliwave_bench::BenchConfig::default());
}
