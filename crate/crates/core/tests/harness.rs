use scos::code::{sample_drm_polar, CodeSpec};
use scos::decoders::DecoderKind;
use scos::harness::{read_csv, run_sweep, write_csv, SimConfig, CSV_COLUMNS};
use scos::scos::ScosParams;
use scos::Error;

const BETA: f64 = 1.189_207_115_002_721;

fn config(snr: Vec<f64>) -> SimConfig {
    let mut cfg = SimConfig::new(DecoderKind::Scos(ScosParams::unbounded()), snr);
    cfg.max_frames = 400;
    cfg.min_errors = 20;
    cfg.profile_trials = 2000;
    cfg.seed = 3;
    cfg.audit_lemma1 = true;
    cfg
}

#[test]
fn sweep_to_csv_and_back() {
    let spec = sample_drm_polar(5, 16, BETA, 2).unwrap();
    let recs = run_sweep(&spec, &config(vec![0.0, 2.0, 4.0])).unwrap();
    assert_eq!(recs.len(), 3);
    for r in &recs {
        assert!(r.frames <= 400 && (r.errors == 20 || r.frames == 400));
        assert!(r.ml_lb_errors <= r.errors);
        assert!(r.mean_visits_over_n >= 1.0);
        assert_eq!(r.ml_certified_fraction, 1.0);
        let a = r.audit.unwrap();
        assert_eq!(a.violations, 0);
        assert!(a.mean_visits_over_n >= a.mean_v_over_n);
    }
    assert!(recs[0].fer >= recs[2].fer);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    write_csv(&path, &recs[..2], false).unwrap();
    write_csv(&path, &recs[2..], true).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_COLUMNS.join(","));
    assert_eq!(text.lines().count(), 4);
    let back = read_csv(&path).unwrap();
    assert_eq!(back.len(), 3);
    for (a, b) in back.iter().zip(&recs) {
        assert_eq!((a.frames, a.errors, a.ml_lb_errors), (b.frames, b.errors, b.ml_lb_errors));
        assert!((a.fer - b.fer).abs() <= 1e-5 * b.fer.max(1e-300));
    }
}

#[test]
fn append_rejects_foreign_header() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("other.csv");
    std::fs::write(&path, "snr,fer\n1,0.5\n").unwrap();
    let spec = sample_drm_polar(3, 4, BETA, 1).unwrap();
    let mut cfg = config(vec![3.0]);
    cfg.audit_lemma1 = false;
    let recs = run_sweep(&spec, &cfg).unwrap();
    assert!(matches!(write_csv(&path, &recs, true), Err(Error::Schema { .. })));
}

#[test]
fn same_seed_same_numbers() {
    let spec = sample_drm_polar(5, 16, BETA, 4).unwrap();
    let mut a = config(vec![1.0]);
    a.threads = Some(1);
    let mut b = a.clone();
    b.threads = Some(3);
    assert_eq!(run_sweep(&spec, &a).unwrap(), run_sweep(&spec, &b).unwrap());
}

#[test]
fn spec_file_round_trip() {
    let spec = sample_drm_polar(6, 30, BETA, 9).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.json");
    spec.save(&path).unwrap();
    let back = CodeSpec::load(&path).unwrap();
    assert_eq!(back, spec);
    assert_eq!(back.fingerprint(), spec.fingerprint());
}
