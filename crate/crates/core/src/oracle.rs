//! Ground truth: brute-force ML decoding and the prefix set `V` that lower-bounds
//! the node visits of any ML tree search.

use crate::code::CodeSpec;
use crate::decoders::DecodeResult;
use crate::error::{Error, Result};
use crate::polar::{encode_input, kron_transform};
use crate::sc::{pm_increment, DecodePath, MetricMode};

/// Largest payload length enumerated by [`ml_decode_bruteforce`].
pub const MAX_BRUTE_FORCE_BITS: usize = 20;

/// Default prefix cap of [`enumerate_v_set`].
pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

/// Slack on the `M(u^i) <= M_ML` membership test.
pub const V_SET_TOLERANCE: f64 = 1e-9;

/// Path metric of a complete input vector, computed from its transmitted word.
pub fn leaf_metric(u: &[u8], llr: &[f64], mode: MetricMode) -> Result<f64> {
    if u.len() != llr.len() {
        return Err(Error::LengthMismatch {
            expected: llr.len(),
            actual: u.len(),
        });
    }
    let x = kron_transform(u)?;
    Ok(x.iter().zip(llr).map(|(&b, &l)| pm_increment(l, b, mode)).sum())
}

/// ML decision by enumerating every payload; ties go to the lexicographically
/// smallest payload. Visits are reported as `N · 2^payload_len`.
pub fn ml_decode_bruteforce(spec: &CodeSpec, llr: &[f64], mode: MetricMode) -> Result<DecodeResult> {
    let k = spec.payload_len();
    if k > MAX_BRUTE_FORCE_BITS {
        return Err(Error::TooManyMessages(k));
    }
    if llr.len() != spec.len() {
        return Err(Error::LengthMismatch {
            expected: spec.len(),
            actual: llr.len(),
        });
    }
    let mut payload = vec![0u8; k];
    let mut best: Option<(f64, Vec<u8>)> = None;
    for m in 0u64..1 << k {
        for (b, bit) in payload.iter_mut().enumerate() {
            *bit = ((m >> (k - 1 - b)) & 1) as u8;
        }
        let u = encode_input(spec, &payload)?;
        let metric = leaf_metric(&u, llr, mode)?;
        if best.as_ref().is_none_or(|(bm, _)| metric < *bm) {
            best = Some((metric, u));
        }
    }
    let (metric, u) = best.expect("at least one payload");
    Ok(DecodeResult::new(
        spec,
        u,
        metric,
        (spec.len() as u64) << k,
        true,
    ))
}

/// Size of `V(û_ML, y)`: all prefixes `u^i`, `1 <= i <= N`, of valid input
/// vectors with `M(u^i) <= M_ML`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VSetReport {
    pub size: u64,
    pub truncated: bool,
    pub cap: u64,
}

/// Counts `V` by depth-first search, cutting subtrees whose metric exceeds `m_ml`.
pub fn enumerate_v_set(
    spec: &CodeSpec,
    llr: &[f64],
    m_ml: f64,
    mode: MetricMode,
    node_cap: u64,
) -> Result<VSetReport> {
    if llr.len() != spec.len() {
        return Err(Error::LengthMismatch {
            expected: spec.len(),
            actual: llr.len(),
        });
    }
    let mut path = DecodePath::new(spec, mode);
    path.load(llr);
    let mut report = VSetReport {
        size: 0,
        truncated: false,
        cap: node_cap,
    };
    descend(&mut path, m_ml + V_SET_TOLERANCE, &mut report);
    Ok(report)
}

fn descend(path: &mut DecodePath<'_>, limit: f64, report: &mut VSetReport) {
    if path.is_complete() || report.truncated {
        return;
    }
    let depth = path.phase();
    let choices: &[u8] = if path.next_is_info() {
        &[0, 1]
    } else if path.next_frozen_bit() == 0 {
        &[0]
    } else {
        &[1]
    };
    for &bit in choices {
        if path.metric_if(bit) > limit {
            continue;
        }
        if report.size >= report.cap {
            report.truncated = true;
            return;
        }
        report.size += 1;
        path.push(bit);
        descend(path, limit, report);
        path.rewind(depth);
        if report.truncated {
            return;
        }
    }
}

/// `visits >= |V|`; errors on truncated reports.
pub fn lemma1_check(visits: u64, report: &VSetReport) -> Result<bool> {
    if report.truncated {
        return Err(Error::Truncated(report.cap));
    }
    Ok(visits >= report.size)
}
