//! Decoders sharing the SC kernel, and the common [`Decoder`] interface.

mod fano;
mod flip;
mod scl;

pub use fano::{sc_fano_decode, FanoParams};
pub use flip::{dscf_decode, dscf_metric, scf_decode, FlipMetricParams};
pub use scl::scl_decode;

use crate::code::{CodeSpec, ReliabilityProfile};
use crate::error::{Error, Result};
use crate::oracle::ml_decode_bruteforce;
use crate::polar::polar_transform;
use crate::sc::{sc_decode, MetricMode};
use crate::scos::{scos_decode, ScosParams};
use std::fmt;
use std::str::FromStr;

/// Output of any decoder.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    /// Decided input vector `û^N`.
    pub u: Vec<u8>,
    /// Codeword `û^N G_N`.
    pub codeword: Vec<u8>,
    /// Path metric of `û^N`.
    pub metric: f64,
    /// Node visits (processed phases).
    pub visits: u64,
    /// The decoder proved `û^N` is an ML decision.
    pub ml_certified: bool,
    /// CRC verdict, `None` when the code has no CRC.
    pub crc_ok: Option<bool>,
}

impl DecodeResult {
    pub fn new(spec: &CodeSpec, u: Vec<u8>, metric: f64, visits: u64, ml_certified: bool) -> Self {
        let codeword = polar_transform(&u).expect("power-of-two length");
        let crc_ok = spec.crc().map(|_| spec.crc_passes(&u));
        Self {
            u,
            codeword,
            metric,
            visits,
            ml_certified,
            crc_ok,
        }
    }

    /// Decoded payload (CRC bits removed).
    pub fn payload(&self, spec: &CodeSpec) -> Vec<u8> {
        let mut msg = spec.message_of(&self.u);
        msg.truncate(spec.payload_len());
        msg
    }
}

/// Plain SC as a [`DecodeResult`].
pub fn sc_result(spec: &CodeSpec, llr: &[f64], mode: MetricMode) -> Result<DecodeResult> {
    let out = sc_decode(spec, llr, mode, &ReliabilityProfile::zeros(spec.len()))?;
    Ok(DecodeResult::new(
        spec,
        out.path.bits().to_vec(),
        out.path.metric(),
        out.path.visits(),
        false,
    ))
}

/// Decoder choice with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum DecoderKind {
    Sc,
    Scl { list_size: usize },
    Scf(FlipMetricParams),
    Dscf(FlipMetricParams),
    ScFano(FanoParams),
    Scos(ScosParams),
    Ml,
}

impl DecoderKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Sc => "sc",
            Self::Scl { .. } => "scl",
            Self::Scf(_) => "scf",
            Self::Dscf(_) => "dscf",
            Self::ScFano(_) => "scfano",
            Self::Scos(_) => "scos",
            Self::Ml => "ml",
        }
    }

    /// Whether the decoder consumes a reliability profile.
    pub fn needs_profile(&self) -> bool {
        matches!(self, Self::ScFano(_) | Self::Scos(_))
    }

    /// Configured visit budget, if any.
    pub fn max_visits(&self) -> Option<u64> {
        match self {
            Self::ScFano(p) => p.max_visits,
            Self::Scos(p) => p.max_visits,
            _ => None,
        }
    }

    /// Rejects parameter combinations the decoder cannot run with.
    pub fn validate(&self, spec: &CodeSpec) -> Result<()> {
        match self {
            Self::Scl { list_size: 0 } => Err(Error::Config("list size must be at least 1".into())),
            Self::Scf(p) | Self::Dscf(p) => {
                p.validate()?;
                if spec.crc().is_none() {
                    return Err(Error::MissingCrc);
                }
                Ok(())
            }
            Self::ScFano(p) => p.validate(spec.len()),
            Self::Scos(p) => p.validate(spec.len()),
            Self::Ml if spec.payload_len() > crate::oracle::MAX_BRUTE_FORCE_BITS => {
                Err(Error::TooManyMessages(spec.payload_len()))
            }
            _ => Ok(()),
        }
    }

    /// Decodes one frame.
    pub fn decode(
        &self,
        spec: &CodeSpec,
        llr: &[f64],
        profile: &ReliabilityProfile,
        mode: MetricMode,
    ) -> Result<DecodeResult> {
        match self {
            Self::Sc => sc_result(spec, llr, mode),
            Self::Scl { list_size } => scl_decode(spec, llr, *list_size, mode),
            Self::Scf(p) => scf_decode(spec, llr, p, mode),
            Self::Dscf(p) => dscf_decode(spec, llr, p, mode),
            Self::ScFano(p) => sc_fano_decode(spec, llr, p, profile, mode),
            Self::Scos(p) => scos_decode(spec, llr, profile, mode, *p),
            Self::Ml => ml_decode_bruteforce(spec, llr, mode),
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Decoder names accepted by [`FromStr`]; parameters take their defaults.
impl FromStr for DecoderKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sc" => Self::Sc,
            "scl" => Self::Scl { list_size: 8 },
            "scf" => Self::Scf(FlipMetricParams::default()),
            "dscf" => Self::Dscf(FlipMetricParams::default()),
            "scfano" => Self::ScFano(FanoParams::default()),
            "scos" => Self::Scos(ScosParams::unbounded()),
            "ml" => Self::Ml,
            _ => return Err(Error::Config(format!("unknown decoder {s:?}"))),
        })
    }
}
