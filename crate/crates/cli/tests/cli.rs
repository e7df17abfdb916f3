use std::path::Path;
use std::process::{Command, Output};

fn scos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scos"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn construct_then_simulate() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("pac.json");
    let out = scos(&["construct", "pac", "--n", "5", "--r", "2", "--out", p(&spec)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("N = 32, K = 16"));

    let csv = dir.path().join("res.csv");
    let cache = dir.path().join("cache");
    let args = [
        "simulate", "--spec", p(&spec), "--decoder", "scos", "--snr", "1:3:1", "--frames", "300",
        "--min-errors", "10", "--max-visits", "20", "--mode", "hardened", "--profile-trials",
        "2000", "--profile-cache", p(&cache), "--audit-lemma1", "--out", p(&csv),
    ];
    let out = scos(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 3);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("snr_db,frames,"));
    assert_eq!(text.lines().count(), 4);
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 3);

    let mut again = args.to_vec();
    again.push("--append");
    assert!(scos(&again).status.success());
    let appended = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(appended.lines().count(), 7);
    // same seed, same rows
    let rows: Vec<&str> = appended.lines().collect();
    assert_eq!(rows[1..4], rows[4..7]);
}

#[test]
fn every_decoder_runs() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("drm.json");
    let built = scos(&[
        "construct", "drm-polar", "--n", "4", "--k", "8", "--seed", "2", "--crc", "1011", "--out",
        p(&spec),
    ]);
    assert!(built.status.success(), "{}", String::from_utf8_lossy(&built.stderr));
    for dec in ["sc", "scl", "scf", "dscf", "scfano", "scos", "ml"] {
        let csv = dir.path().join(format!("{dec}.csv"));
        let out = scos(&[
            "simulate", "--spec", p(&spec), "--decoder", dec, "--snr", "2", "--frames", "50",
            "--profile-trials", "500", "--out", p(&csv),
        ]);
        assert!(out.status.success(), "{dec}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(csv.exists());
    }
}

#[test]
fn profile_writes_one_line_per_phase() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("polar.json");
    assert!(scos(&["construct", "polar", "--n", "4", "--k", "8", "--out", p(&spec)]).status.success());
    let prof = dir.path().join("p.txt");
    let out = scos(&[
        "profile", "--spec", p(&spec), "--snr", "1", "--trials", "1000", "--out", p(&prof),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&prof).unwrap();
    let vals: Vec<f64> = text.lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(vals.len(), 16);
    assert!(vals.iter().all(|v| (0.0..=0.5).contains(v)));
}

#[test]
fn failures_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("rm.json");
    let missing = dir.path().join("none.json");
    let csv = dir.path().join("x.csv");
    assert!(!scos(&["construct", "rm", "--n", "4", "--out", p(&spec)]).status.success());
    assert!(scos(&["construct", "rm", "--n", "4", "--r", "1", "--out", p(&spec)]).status.success());
    let cases: Vec<Vec<&str>> = vec![
        vec!["simulate", "--spec", p(&missing), "--decoder", "sc", "--snr", "1", "--out", p(&csv)],
        vec!["simulate", "--spec", p(&spec), "--decoder", "scf", "--snr", "1", "--out", p(&csv)],
        vec!["simulate", "--spec", p(&spec), "--decoder", "sc", "--snr", "1:0:1", "--out", p(&csv)],
        vec!["simulate", "--spec", p(&spec), "--decoder", "sc", "--snr", "1", "--mode", "soft", "--out", p(&csv)],
        vec!["construct", "pac", "--n", "4", "--r", "1", "--g", "01x", "--out", p(&csv)],
    ];
    for args in cases {
        let out = scos(&args);
        assert!(!out.status.success(), "{args:?}");
        assert!(!out.stderr.is_empty());
    }

    std::fs::write(&csv, "a,b\n1,2\n").unwrap();
    let out = scos(&[
        "simulate", "--spec", p(&spec), "--decoder", "sc", "--snr", "1", "--frames", "10",
        "--append", "--out", p(&csv),
    ]);
    assert!(!out.status.success());
}
