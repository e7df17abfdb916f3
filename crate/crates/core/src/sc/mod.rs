//! Successive-cancellation kernel shared by every decoder.

mod metric;
mod path;
mod profile;

pub use metric::{
    f_combine, g_combine, hard_decision, pm_increment, pm_update, score_of, softplus, MetricMode,
};
pub use path::DecodePath;
pub use profile::estimate_first_error_probs;

use crate::code::{CodeSpec, ReliabilityProfile};
use crate::error::{Error, Result};

/// Metric and score of the one-step extension that disagrees with the
/// decision taken at an information phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlipRecord {
    /// 1-based phase index.
    pub phase: usize,
    pub metric: f64,
    pub score: f64,
}

/// Stopping conditions for [`extend`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Limits {
    /// Stop as soon as the path metric reaches this value.
    pub prune_at: Option<f64>,
    /// Stop before the path's visit counter would exceed this value.
    pub max_visits: Option<u64>,
}

/// How an extension ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    Leaf,
    /// The metric reached the threshold after deciding this 1-based phase.
    Pruned { phase: usize },
    BudgetExhausted,
}

/// Continues SC decoding from the current phase of `path`.
///
/// `decide(pos, sc_bit)` picks the bit at every 0-based information position
/// given the SC decision; frozen positions take their frozen value. For each
/// information phase the alternative branch is reported to `record`.
pub fn extend(
    path: &mut DecodePath<'_>,
    bias: &[f64],
    limits: Limits,
    mut decide: impl FnMut(usize, u8) -> u8,
    mut record: impl FnMut(FlipRecord),
) -> Extension {
    while !path.is_complete() {
        if limits.max_visits.is_some_and(|cap| path.visits() >= cap) {
            return Extension::BudgetExhausted;
        }
        let pos = path.phase();
        let sc = path.sc_bit();
        let bit = if path.next_is_info() {
            let bit = decide(pos, sc);
            let metric = path.metric_if(bit ^ 1);
            record(FlipRecord {
                phase: pos + 1,
                metric,
                score: metric + bias[pos + 1],
            });
            bit
        } else {
            sc
        };
        path.push(bit);
        if limits.prune_at.is_some_and(|t| path.metric() >= t) {
            return Extension::Pruned { phase: pos + 1 };
        }
    }
    Extension::Leaf
}

/// Result of a plain SC pass.
#[derive(Debug, Clone)]
pub struct ScOutcome<'a> {
    pub path: DecodePath<'a>,
    pub flips: Vec<FlipRecord>,
}

/// Plain SC decoding; records the flipped alternative at every information phase.
pub fn sc_decode<'a>(
    spec: &'a CodeSpec,
    llr: &[f64],
    mode: MetricMode,
    profile: &ReliabilityProfile,
) -> Result<ScOutcome<'a>> {
    check_inputs(spec, llr, profile)?;
    let mut path = DecodePath::new(spec, mode);
    path.load(llr);
    let bias = profile.cumulative_bias();
    let mut flips = Vec::with_capacity(spec.dimension());
    extend(&mut path, &bias, Limits::default(), |_, b| b, |r| flips.push(r));
    Ok(ScOutcome { path, flips })
}

/// Result of [`resume_from`].
#[derive(Debug, Clone, PartialEq)]
pub struct Resumed {
    pub end: Extension,
    pub flips: Vec<FlipRecord>,
}

/// Truncates `path` to phase `j - 1`, forces `u_j = forced_bit` and continues SC.
///
/// Flip records are emitted for information phases after `j`.
pub fn resume_from(
    path: &mut DecodePath<'_>,
    j: usize,
    forced_bit: u8,
    profile: &ReliabilityProfile,
    limits: Limits,
) -> Result<Resumed> {
    let spec = path.spec();
    if j == 0 || j > path.phase() {
        return Err(Error::PhaseOutOfRange {
            phase: j,
            len: path.phase(),
        });
    }
    if !spec.is_info(j) {
        return Err(Error::NotInformation(j));
    }
    let bias = profile.cumulative_bias();
    path.rewind(j - 1);
    let mut flips = Vec::new();
    let end = extend(
        path,
        &bias,
        limits,
        |pos, b| if pos + 1 == j { forced_bit } else { b },
        |r| {
            if r.phase > j {
                flips.push(r)
            }
        },
    );
    Ok(Resumed { end, flips })
}

pub(crate) fn check_inputs(
    spec: &CodeSpec,
    llr: &[f64],
    profile: &ReliabilityProfile,
) -> Result<()> {
    if llr.len() != spec.len() {
        return Err(Error::LengthMismatch {
            expected: spec.len(),
            actual: llr.len(),
        });
    }
    if profile.len() != spec.len() {
        return Err(Error::LengthMismatch {
            expected: spec.len(),
            actual: profile.len(),
        });
    }
    Ok(())
}
