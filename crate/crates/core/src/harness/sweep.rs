use super::SimConfig;
use crate::channel::{frame_rng, snr_to_sigma, transmit};
use crate::code::{CodeSpec, ReliabilityProfile};
use crate::decoders::{DecodeResult, DecoderKind};
use crate::error::Result;
use crate::oracle::{enumerate_v_set, leaf_metric};
use crate::polar::{encode_input, transmitted_word};
use crate::sc::{estimate_first_error_probs, MetricMode};
use rand::Rng;
use rayon::prelude::*;
use std::path::{Path, PathBuf};

/// Per-SNR aggregate.
#[derive(Debug, Clone, PartialEq)]
pub struct SimRecord {
    pub snr_db: f64,
    pub frames: u64,
    pub errors: u64,
    pub fer: f64,
    pub mean_visits_over_n: f64,
    pub ml_certified_fraction: f64,
    pub ml_lb_errors: u64,
    pub ml_lb_fer: f64,
    /// Seed and trial count of the first-error profile; trials are 0 when unused.
    pub profile_seed: u64,
    pub profile_trials: u64,
    pub audit: Option<AuditStats>,
}

/// Node-visit lower-bound audit over certified, non-truncated frames.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditStats {
    pub frames: u64,
    pub violations: u64,
    pub mean_v_over_n: f64,
    pub mean_visits_over_n: f64,
    /// Certified frames excluded because `V` enumeration hit its cap.
    pub truncated: u64,
}

/// Result of one simulated frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameOutcome {
    pub error: bool,
    pub visits: u64,
    pub certified: bool,
    pub ml_lb: bool,
    /// `(|V|, truncated)` when audited.
    pub v_set: Option<(u64, bool)>,
}

/// Whether an errored frame counts toward the empirical ML lower bound:
/// the decision is at least as likely as the transmitted input.
pub fn ml_lb_account(
    decoded: &DecodeResult,
    true_u: &[u8],
    llr: &[f64],
    mode: MetricMode,
    frame_errored: bool,
) -> Result<bool> {
    if !frame_errored {
        return Ok(false);
    }
    Ok(leaf_metric(&decoded.u, llr, mode)? <= leaf_metric(true_u, llr, mode)?)
}

/// Simulates frame `frame` of SNR point `point`.
pub fn run_frame(
    spec: &CodeSpec,
    config: &SimConfig,
    profile: &ReliabilityProfile,
    sigma: f64,
    point: u64,
    frame: u64,
) -> Result<FrameOutcome> {
    let mut rng = frame_rng(config.seed, point, frame);
    let payload: Vec<u8> = (0..spec.payload_len()).map(|_| rng.random_range(0..2)).collect();
    let u = encode_input(spec, &payload)?;
    let llr = transmit(&transmitted_word(&u)?, sigma, &mut rng);
    let out = config.decoder.decode(spec, &llr, profile, config.mode)?;
    let error = out.u != u;
    let ml_lb = ml_lb_account(&out, &u, &llr, config.mode, error)?;
    let v_set = if config.audit_lemma1
        && matches!(config.decoder, DecoderKind::Scos(_))
        && out.ml_certified
    {
        let r = enumerate_v_set(spec, &llr, out.metric, config.mode, config.v_node_cap)?;
        Some((r.size, r.truncated))
    } else {
        None
    };
    Ok(FrameOutcome {
        error,
        visits: out.visits,
        certified: out.ml_certified,
        ml_lb,
        v_set,
    })
}

/// Cache file for a profile estimate.
pub fn profile_cache_path(
    dir: &Path,
    spec: &CodeSpec,
    snr_db: f64,
    trials: u64,
    seed: u64,
    mode: MetricMode,
) -> PathBuf {
    let hash = spec.fingerprint();
    dir.join(format!(
        "profile-{}-{snr_db:.4}dB-{trials}-{seed}-{mode}.txt",
        &hash[..16]
    ))
}

/// Reads the profile from the cache directory, or estimates and stores it.
pub fn load_or_estimate_profile(
    spec: &CodeSpec,
    snr_db: f64,
    sigma: f64,
    trials: u64,
    seed: u64,
    mode: MetricMode,
    cache: Option<&Path>,
) -> Result<ReliabilityProfile> {
    let path = cache.map(|d| profile_cache_path(d, spec, snr_db, trials, seed, mode));
    if let Some(p) = &path {
        if p.exists() {
            let prof = ReliabilityProfile::load(p)?;
            if prof.len() == spec.len() {
                log::debug!("profile cache hit {}", p.display());
                return Ok(prof);
            }
            log::warn!("ignoring malformed profile cache {}", p.display());
        }
    }
    let prof = estimate_first_error_probs(spec, sigma, trials, seed, mode);
    if let Some(p) = &path {
        if let Some(dir) = p.parent() {
            std::fs::create_dir_all(dir)?;
        }
        prof.save(p)?;
    }
    Ok(prof)
}

const BATCH: u64 = 256;

/// Runs every SNR point of `config`.
///
/// Frame `f` of point `k` depends only on `(seed, k, f)`, and outcomes are
/// merged in frame order, stopping exactly at the frame that reaches
/// `min_errors`. Results do not depend on the thread count.
pub fn run_sweep(spec: &CodeSpec, config: &SimConfig) -> Result<Vec<SimRecord>> {
    config.validate(spec)?;
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(t) = config.threads {
            b = b.num_threads(t);
        }
        b.build()
            .map_err(|e| crate::Error::Config(format!("thread pool: {e}")))?
    };
    pool.install(|| {
        config
            .snr_db
            .iter()
            .enumerate()
            .map(|(k, &snr)| run_point(spec, config, k as u64, snr))
            .collect()
    })
}

fn run_point(spec: &CodeSpec, config: &SimConfig, point: u64, snr_db: f64) -> Result<SimRecord> {
    let sigma = match config.sigma_override {
        Some(s) => s,
        None => snr_to_sigma(snr_db, spec.rate())?,
    };
    let (profile, trials) = if config.decoder.needs_profile() {
        let p = load_or_estimate_profile(
            spec,
            snr_db,
            sigma,
            config.profile_trials,
            config.seed,
            config.mode,
            config.profile_cache.as_deref(),
        )?;
        (p, config.profile_trials)
    } else {
        (ReliabilityProfile::zeros(spec.len()), 0)
    };

    let mut acc = Accumulator::default();
    let mut next = 0u64;
    'outer: while next < config.max_frames {
        let end = (next + BATCH).min(config.max_frames);
        let outcomes: Vec<FrameOutcome> = (next..end)
            .into_par_iter()
            .map(|f| run_frame(spec, config, &profile, sigma, point, f))
            .collect::<Result<_>>()?;
        for o in outcomes {
            acc.add(&o, spec.len());
            if acc.errors >= config.min_errors {
                break 'outer;
            }
        }
        next = end;
    }
    let record = acc.finish(snr_db, config.seed, trials, config.audit_lemma1);
    log::info!(
        "{} {:.3} dB: {} frames, {} errors, FER {:.4e}, visits/N {:.4}",
        config.decoder,
        snr_db,
        record.frames,
        record.errors,
        record.fer,
        record.mean_visits_over_n
    );
    if let Some(a) = &record.audit {
        if a.truncated > 0 {
            log::info!("{} certified frames excluded from the audit (V truncated)", a.truncated);
        }
    }
    Ok(record)
}

#[derive(Default)]
struct Accumulator {
    frames: u64,
    errors: u64,
    visits: f64,
    certified: u64,
    ml_lb: u64,
    audit_frames: u64,
    audit_violations: u64,
    audit_v: f64,
    audit_visits: f64,
    audit_truncated: u64,
}

impl Accumulator {
    fn add(&mut self, o: &FrameOutcome, len: usize) {
        let n = len as f64;
        self.frames += 1;
        self.errors += u64::from(o.error);
        self.visits += o.visits as f64 / n;
        self.certified += u64::from(o.certified);
        self.ml_lb += u64::from(o.ml_lb);
        match o.v_set {
            Some((_, true)) => self.audit_truncated += 1,
            Some((size, false)) => {
                self.audit_frames += 1;
                self.audit_violations += u64::from(o.visits < size);
                self.audit_v += size as f64 / n;
                self.audit_visits += o.visits as f64 / n;
            }
            None => {}
        }
    }

    fn finish(self, snr_db: f64, seed: u64, trials: u64, audited: bool) -> SimRecord {
        let frames = self.frames.max(1) as f64;
        let af = self.audit_frames as f64;
        SimRecord {
            snr_db,
            frames: self.frames,
            errors: self.errors,
            fer: self.errors as f64 / frames,
            mean_visits_over_n: self.visits / frames,
            ml_certified_fraction: self.certified as f64 / frames,
            ml_lb_errors: self.ml_lb,
            ml_lb_fer: self.ml_lb as f64 / frames,
            profile_seed: seed,
            profile_trials: trials,
            audit: audited.then(|| AuditStats {
                frames: self.audit_frames,
                violations: self.audit_violations,
                mean_v_over_n: if af > 0.0 { self.audit_v / af } else { f64::NAN },
                mean_visits_over_n: if af > 0.0 { self.audit_visits / af } else { f64::NAN },
                truncated: self.audit_truncated,
            }),
        }
    }
}
