use crate::code::CodeSpec;
use crate::decoders::DecoderKind;
use crate::error::{Error, Result};
use crate::oracle::DEFAULT_NODE_CAP;
use crate::sc::MetricMode;
use std::path::PathBuf;

/// Everything a sweep needs besides the code.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub decoder: DecoderKind,
    pub mode: MetricMode,
    /// Eb/N0 points in dB.
    pub snr_db: Vec<f64>,
    /// Hard cap on frames per point.
    pub max_frames: u64,
    /// Stop a point once this many frame errors were seen.
    pub min_errors: u64,
    pub seed: u64,
    /// Worker threads; `None` uses the rayon default.
    pub threads: Option<usize>,
    /// Trials for the first-error profile estimate.
    pub profile_trials: u64,
    /// Directory for cached profiles.
    pub profile_cache: Option<PathBuf>,
    /// Per-frame `visits >= |V|` audit for certified SCOS frames.
    pub audit_lemma1: bool,
    pub v_node_cap: u64,
    /// Replaces the noise level derived from the SNR; `0` is noiseless.
    pub sigma_override: Option<f64>,
}

impl SimConfig {
    pub fn new(decoder: DecoderKind, snr_db: Vec<f64>) -> Self {
        Self {
            decoder,
            mode: MetricMode::Exact,
            snr_db,
            max_frames: 10_000_000,
            min_errors: 100,
            seed: 1,
            threads: None,
            profile_trials: 100_000,
            profile_cache: None,
            audit_lemma1: false,
            v_node_cap: DEFAULT_NODE_CAP,
            sigma_override: None,
        }
    }

    pub fn validate(&self, spec: &CodeSpec) -> Result<()> {
        if self.snr_db.is_empty() {
            return Err(Error::Config("SNR grid is empty".into()));
        }
        if self.snr_db.iter().any(|s| !s.is_finite()) {
            return Err(Error::Config("SNR values must be finite".into()));
        }
        if self.max_frames == 0 {
            return Err(Error::Config("frame cap must be at least 1".into()));
        }
        if self.min_errors == 0 {
            return Err(Error::Config("minimum error count must be at least 1".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("thread count must be at least 1".into()));
        }
        if self.decoder.needs_profile() && self.profile_trials == 0 {
            return Err(Error::Config("profile trials must be at least 1".into()));
        }
        if self.sigma_override.is_some_and(|s| !(s >= 0.0)) {
            return Err(Error::Config("noise override must be non-negative".into()));
        }
        self.decoder.validate(spec)
    }
}

/// Parses `start:stop:step` (inclusive) or a single value.
pub fn parse_snr_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<f64> = text
        .split(':')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("SNR grid {text:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    match parts[..] {
        [single] => Ok(vec![single]),
        [start, stop, step] => {
            if !(step > 0.0) || stop < start {
                return Err(Error::Config(format!("invalid SNR grid {text:?}")));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            Ok((0..count)
                .map(|i| {
                    let v = start + i as f64 * step;
                    (v * 1e9).round() / 1e9
                })
                .collect())
        }
        _ => Err(Error::Parse(format!(
            "SNR grid {text:?} must be A or A:B:S"
        ))),
    }
}
