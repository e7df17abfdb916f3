//! CSV persistence of [`SimRecord`]s.

use super::{AuditStats, SimRecord};
use crate::error::{Error, Result};
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader};
use std::path::Path;

/// Column order of the results file.
pub const CSV_COLUMNS: [&str; 15] = [
    "snr_db",
    "frames",
    "errors",
    "fer",
    "mean_visits_over_n",
    "ml_certified_fraction",
    "ml_lb_errors",
    "ml_lb_fer",
    "profile_seed",
    "profile_trials",
    "lemma1_frames",
    "lemma1_violations",
    "mean_v_over_n",
    "mean_visits_over_n_audited",
    "v_truncated",
];

/// Six significant digits, `%g` style; `nan` for NaN.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    // rounding can carry into the next decade
    let rounded: f64 = format!("{x:.5e}").parse().expect("formatted float parses");
    let exp = exp.max(rounded.abs().log10().floor() as i32);
    if !(-4..6).contains(&exp) {
        let s = format!("{x:.5e}");
        let (mantissa, e) = s.split_once('e').expect("exponent form");
        format!("{}e{}", trim_zeros(mantissa), e)
    } else {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn row(r: &SimRecord) -> Vec<String> {
    let mut out = vec![
        format_real(r.snr_db),
        r.frames.to_string(),
        r.errors.to_string(),
        format_real(r.fer),
        format_real(r.mean_visits_over_n),
        format_real(r.ml_certified_fraction),
        r.ml_lb_errors.to_string(),
        format_real(r.ml_lb_fer),
        r.profile_seed.to_string(),
        r.profile_trials.to_string(),
    ];
    match &r.audit {
        Some(a) => out.extend([
            a.frames.to_string(),
            a.violations.to_string(),
            format_real(a.mean_v_over_n),
            format_real(a.mean_visits_over_n),
            a.truncated.to_string(),
        ]),
        None => out.extend(std::iter::repeat_n("nan".to_string(), 5)),
    }
    out
}

/// Writes `records` to `path`. With `append`, an existing file must carry
/// the same header; rows are added after it.
pub fn write_csv(path: impl AsRef<Path>, records: &[SimRecord], append: bool) -> Result<()> {
    let path = path.as_ref();
    if records.is_empty() {
        return Err(Error::Config("no records to write".into()));
    }
    let existing = append && path.exists() && std::fs::metadata(path)?.len() > 0;
    if existing {
        let mut header = String::new();
        BufReader::new(std::fs::File::open(path)?).read_line(&mut header)?;
        let expected = CSV_COLUMNS.join(",");
        if header.trim_end() != expected {
            return Err(Error::Schema {
                path: path.to_path_buf(),
                detail: format!("header {:?} differs from {:?}", header.trim_end(), expected),
            });
        }
    }
    let file = OpenOptions::new()
        .create(true)
        .write(true)
        .append(existing)
        .truncate(!existing)
        .open(path)?;
    let mut w = csv::Writer::from_writer(file);
    if !existing {
        w.write_record(CSV_COLUMNS).map_err(csv_err)?;
    }
    for r in records {
        w.write_record(row(r)).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Reads a results file written by [`write_csv`].
pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<SimRecord>> {
    let path = path.as_ref();
    let mut rd = csv::Reader::from_path(path).map_err(csv_err)?;
    let headers = rd.headers().map_err(csv_err)?.clone();
    for col in CSV_COLUMNS {
        if !headers.iter().any(|h| h == col) {
            return Err(Error::Schema {
                path: path.to_path_buf(),
                detail: format!("missing column {col}"),
            });
        }
    }
    let idx = |name: &str| headers.iter().position(|h| h == name).expect("checked");
    let mut out = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(csv_err)?;
        let real = |name: &str| -> Result<f64> {
            rec[idx(name)]
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("column {name}: {e}")))
        };
        let int = |name: &str| -> Result<u64> {
            rec[idx(name)]
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("column {name}: {e}")))
        };
        let audit = if &rec[idx("lemma1_frames")] == "nan" {
            None
        } else {
            Some(AuditStats {
                frames: int("lemma1_frames")?,
                violations: int("lemma1_violations")?,
                mean_v_over_n: real("mean_v_over_n")?,
                mean_visits_over_n: real("mean_visits_over_n_audited")?,
                truncated: int("v_truncated")?,
            })
        };
        out.push(SimRecord {
            snr_db: real("snr_db")?,
            frames: int("frames")?,
            errors: int("errors")?,
            fer: real("fer")?,
            mean_visits_over_n: real("mean_visits_over_n")?,
            ml_certified_fraction: real("ml_certified_fraction")?,
            ml_lb_errors: int("ml_lb_errors")?,
            ml_lb_fer: real("ml_lb_fer")?,
            profile_seed: int("profile_seed")?,
            profile_trials: int("profile_trials")?,
            audit,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(snr: f64) -> SimRecord {
        SimRecord {
            snr_db: snr,
            frames: 12345,
            errors: 100,
            fer: 100.0 / 12345.0,
            mean_visits_over_n: 2.10312345,
            ml_certified_fraction: 1.0,
            ml_lb_errors: 97,
            ml_lb_fer: 97.0 / 12345.0,
            profile_seed: 1,
            profile_trials: 100000,
            audit: None,
        }
    }

    #[test]
    fn real_format() {
        assert_eq!(format_real(0.1245), "0.1245");
        assert_eq!(format_real(2.10312345), "2.10312");
        assert_eq!(format_real(1.38e-4), "0.000138");
        assert_eq!(format_real(3.7e-5), "3.7e-5");
        assert_eq!(format_real(1234567.0), "1.23457e6");
        assert_eq!(format_real(999999.7), "1e6");
        assert_eq!(format_real(-2.5), "-2.5");
        assert_eq!(format_real(0.0), "0");
        assert_eq!(format_real(f64::NAN), "nan");
        assert_eq!(format_real(3.0), "3");
    }

    #[test]
    fn single_record_file_has_two_lines() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.csv");
        write_csv(&p, &[rec(3.0)], false).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert_eq!(text.lines().next().unwrap(), CSV_COLUMNS.join(","));
    }

    #[test]
    fn round_trip_and_append() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.csv");
        let mut b = rec(3.5);
        b.audit = Some(AuditStats {
            frames: 90,
            violations: 0,
            mean_v_over_n: 1.5,
            mean_visits_over_n: 2.25,
            truncated: 2,
        });
        write_csv(&p, &[rec(3.0)], false).unwrap();
        write_csv(&p, &[b.clone()], true).unwrap();
        let back = read_csv(&p).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[1].audit, b.audit);
        assert!((back[1].mean_visits_over_n - 2.10312).abs() < 1e-12);
        assert!((back[1].ml_lb_fer - b.ml_lb_fer).abs() < 1e-5 * b.ml_lb_fer);
        assert_eq!(back[0].frames, 12345);
        assert!((back[0].fer - 100.0 / 12345.0).abs() < 1e-8);
        assert!(back[0].audit.is_none());
    }

    #[test]
    fn append_rejects_schema_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.csv");
        std::fs::write(&p, "snr_db,fer\n1,0.5\n").unwrap();
        assert!(matches!(write_csv(&p, &[rec(1.0)], true), Err(Error::Schema { .. })));
        assert!(matches!(read_csv(&p), Err(Error::Schema { .. })));
    }
}
