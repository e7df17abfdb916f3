//! `scos`: build codes, estimate reliability profiles and run FER sweeps.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use scos::channel::snr_to_sigma;
use scos::code::{
    pac_precoder, polar_info_set, rm_info_set, rm_polar_info_set, sample_drm_polar, CodeSpec, Crc,
    Metadata,
};
use scos::decoders::{DecoderKind, FanoParams, FlipMetricParams};
use scos::harness::{format_real, parse_snr_grid, run_sweep, write_csv, SimConfig};
use scos::sc::{estimate_first_error_probs, MetricMode};
use scos::scos::ScosParams;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "scos", version, about = "SCOS decoding simulator for modified G_N-coset codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo FER and complexity sweep.
    Simulate(SimulateArgs),
    /// Write a code specification file.
    Construct(ConstructArgs),
    /// Estimate first-error probabilities at one SNR.
    Profile(ProfileArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum DecoderName {
    Sc,
    Scl,
    Scf,
    Dscf,
    Scfano,
    Scos,
    Ml,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeName {
    Exact,
    Hardened,
}

impl From<ModeName> for MetricMode {
    fn from(m: ModeName) -> Self {
        match m {
            ModeName::Exact => MetricMode::Exact,
            ModeName::Hardened => MetricMode::Hardened,
        }
    }
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long, value_enum)]
    decoder: DecoderName,
    /// Eb/N0 grid in dB, `A:B:S` or a single value.
    #[arg(long)]
    snr: String,
    /// Frame cap per SNR point.
    #[arg(long, default_value_t = 10_000_000)]
    frames: u64,
    #[arg(long, default_value_t = 100)]
    min_errors: u64,
    /// Visit budget as a multiple of N; 0 is unbounded.
    #[arg(long, default_value_t = 0)]
    max_visits: u64,
    #[arg(long, default_value_t = 8)]
    list_size: usize,
    /// SCOS list capacity; 0 derives it from the visit budget.
    #[arg(long, default_value_t = 0)]
    list_cap: usize,
    /// SC-Fano threshold step.
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    /// DSCF scaling factor.
    #[arg(long, default_value_t = 0.3)]
    alpha: f64,
    /// SCF/DSCF flip attempts.
    #[arg(long, default_value_t = 10)]
    flips: usize,
    /// DSCF maximum flipping-set size.
    #[arg(long, default_value_t = 2)]
    max_order: usize,
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeName,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    profile_trials: u64,
    #[arg(long)]
    profile_cache: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// Append to an existing results file with the same columns.
    #[arg(long)]
    append: bool,
    /// Check visits against |V| on every certified SCOS frame.
    #[arg(long)]
    audit_lemma1: bool,
    /// Prefix cap for the |V| enumeration.
    #[arg(long, default_value_t = scos::oracle::DEFAULT_NODE_CAP)]
    v_node_cap: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Rm,
    Pac,
    Polar,
    RmPolar,
    DrmPolar,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    kind: Construction,
    /// log2 of the block length.
    #[arg(long)]
    n: u32,
    /// RM order (rm, and pac on an RM information set).
    #[arg(long)]
    r: Option<u32>,
    /// Number of information bits (polar, rm-polar, drm-polar, pac without --r).
    #[arg(long)]
    k: Option<usize>,
    /// β of the β-expansion ranking; defaults to 2^(1/4).
    #[arg(long)]
    beta: Option<f64>,
    /// PAC polynomial g_1 g_2 ..., e.g. 011011.
    #[arg(long, default_value = "011011")]
    g: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Outer CRC generator, MSB first with the leading 1, e.g. 10011.
    #[arg(long)]
    crc: Option<String>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Eb/N0 in dB.
    #[arg(long)]
    snr: f64,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeName,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match Cli::parse().command {
        Command::Simulate(a) => simulate(a),
        Command::Construct(a) => construct(a),
        Command::Profile(a) => profile(a),
    }
}

fn load_spec(path: &PathBuf) -> Result<CodeSpec> {
    CodeSpec::load(path).with_context(|| format!("reading code spec {}", path.display()))
}

fn simulate(a: SimulateArgs) -> Result<()> {
    let spec = load_spec(&a.spec)?;
    let len = spec.len() as u64;
    let budget = (a.max_visits > 0).then(|| a.max_visits * len);
    let flip = FlipMetricParams {
        alpha: a.alpha,
        max_attempts: a.flips,
        max_order: a.max_order,
    };
    let decoder = match a.decoder {
        DecoderName::Sc => DecoderKind::Sc,
        DecoderName::Scl => DecoderKind::Scl {
            list_size: a.list_size,
        },
        DecoderName::Scf => DecoderKind::Scf(flip),
        DecoderName::Dscf => DecoderKind::Dscf(flip),
        DecoderName::Scfano => DecoderKind::ScFano(FanoParams {
            delta: a.delta,
            max_visits: budget,
        }),
        DecoderName::Scos => DecoderKind::Scos(ScosParams {
            max_visits: budget,
            list_cap: (a.list_cap > 0).then_some(a.list_cap),
            audit: false,
        }),
        DecoderName::Ml => DecoderKind::Ml,
    };
    let mut config = SimConfig::new(decoder, parse_snr_grid(&a.snr)?);
    config.mode = a.mode.into();
    config.max_frames = a.frames;
    config.min_errors = a.min_errors;
    config.seed = a.seed;
    config.threads = a.threads;
    config.profile_trials = a.profile_trials;
    config.profile_cache = a.profile_cache;
    config.audit_lemma1 = a.audit_lemma1;
    config.v_node_cap = a.v_node_cap;
    let records = run_sweep(&spec, &config)?;
    write_csv(&a.out, &records, a.append)?;
    for r in &records {
        println!(
            "{} dB  frames {}  errors {}  FER {}  visits/N {}  ML-LB FER {}",
            format_real(r.snr_db),
            r.frames,
            r.errors,
            format_real(r.fer),
            format_real(r.mean_visits_over_n),
            format_real(r.ml_lb_fer)
        );
    }
    Ok(())
}

fn parse_bits(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .filter(|c| !matches!(c, ',' | ' ' | '_'))
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => bail!("invalid bit {c:?} in {text:?}"),
        })
        .collect()
}

fn construct(a: ConstructArgs) -> Result<()> {
    let beta = a.beta.unwrap_or(2f64.powf(0.25));
    let need_k = || a.k.context("--k is required for this construction");
    let spec = match a.kind {
        Construction::Rm => {
            let r = a.r.context("--r is required for rm")?;
            CodeSpec::with_static_frozen(a.n, rm_info_set(a.n, r)?)?
                .with_metadata(Metadata::new("rm"))
        }
        Construction::Polar => {
            let meta = Metadata {
                construction: "polar".into(),
                seed: None,
                beta: Some(beta),
            };
            CodeSpec::with_static_frozen(a.n, polar_info_set(a.n, need_k()?, beta)?)?
                .with_metadata(meta)
        }
        Construction::RmPolar => {
            let meta = Metadata {
                construction: "rm-polar".into(),
                seed: None,
                beta: Some(beta),
            };
            CodeSpec::with_static_frozen(a.n, rm_polar_info_set(a.n, need_k()?, beta)?)?
                .with_metadata(meta)
        }
        Construction::Pac => {
            let info = match a.r {
                Some(r) => rm_info_set(a.n, r)?,
                None => rm_polar_info_set(a.n, need_k()?, beta)?,
            };
            pac_precoder(a.n, info, &parse_bits(&a.g)?)?
        }
        Construction::DrmPolar => sample_drm_polar(a.n, need_k()?, beta, a.seed)?,
    };
    let crc = a.crc.as_deref().map(Crc::parse).transpose()?;
    let spec = if crc.is_some() { spec.with_crc(crc)? } else { spec };
    spec.save(&a.out)
        .with_context(|| format!("writing {}", a.out.display()))?;
    println!(
        "N = {}, K = {}, payload = {}, dynamic frozen rows = {}",
        spec.len(),
        spec.dimension(),
        spec.payload_len(),
        spec.frozen_rows().len()
    );
    Ok(())
}

fn profile(a: ProfileArgs) -> Result<()> {
    let spec = load_spec(&a.spec)?;
    if a.trials == 0 {
        bail!("--trials must be at least 1");
    }
    let sigma = snr_to_sigma(a.snr, spec.rate())?;
    let prof = estimate_first_error_probs(&spec, sigma, a.trials, a.seed, a.mode.into());
    prof.save(&a.out)
        .with_context(|| format!("writing {}", a.out.display()))?;
    Ok(())
}
