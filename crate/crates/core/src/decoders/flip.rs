use super::DecodeResult;
use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::sc::{DecodePath, MetricMode};
use crate::scos::next_rollback_phase;

/// Parameters of the bit-flipping decoders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlipMetricParams {
    /// Scaling factor `α` of the DSCF metric.
    pub alpha: f64,
    /// Maximum number of flip attempts `T`.
    pub max_attempts: usize,
    /// Maximum flipping-set size for DSCF.
    pub max_order: usize,
}

impl Default for FlipMetricParams {
    fn default() -> Self {
        Self {
            alpha: 0.3,
            max_attempts: 10,
            max_order: 2,
        }
    }
}

impl FlipMetricParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0) {
            return Err(Error::Config(format!("alpha = {} must be positive", self.alpha)));
        }
        if self.max_order == 0 {
            return Err(Error::Config("maximum flip order must be at least 1".into()));
        }
        Ok(())
    }
}

/// Runs SC from the rollback point with the decisions in `set` inverted,
/// recording decision LLRs into `trace`.
fn redecode(path: &mut DecodePath<'_>, from: usize, set: &[usize], trace: &mut [f64]) {
    path.rewind(from);
    while !path.is_complete() {
        let pos = path.phase();
        let ell = path.next_llr();
        trace[pos] = ell;
        let mut bit = path.sc_bit();
        if path.next_is_info() && set.binary_search(&(pos + 1)).is_ok() {
            bit ^= 1;
        }
        path.push(bit);
    }
}

fn require_crc(spec: &CodeSpec, llr: &[f64], params: &FlipMetricParams) -> Result<()> {
    params.validate()?;
    if spec.crc().is_none() {
        return Err(Error::MissingCrc);
    }
    if llr.len() != spec.len() {
        return Err(Error::LengthMismatch {
            expected: spec.len(),
            actual: llr.len(),
        });
    }
    Ok(())
}

fn result_of(path: &DecodePath<'_>, ml: bool) -> DecodeResult {
    DecodeResult::new(path.spec(), path.bits().to_vec(), path.metric(), path.visits(), ml)
}

/// SC flip decoding: up to `T` single-bit retrials at the least reliable
/// information phases (ascending `|ℓ|`) until the CRC passes.
pub fn scf_decode(
    spec: &CodeSpec,
    llr: &[f64],
    params: &FlipMetricParams,
    mode: MetricMode,
) -> Result<DecodeResult> {
    require_crc(spec, llr, params)?;
    let mut path = DecodePath::new(spec, mode);
    path.load(llr);
    let mut trace = vec![0.0; spec.len()];
    redecode(&mut path, 0, &[], &mut trace);
    if spec.crc_passes(path.bits()) {
        return Ok(result_of(&path, false));
    }
    let initial = result_of(&path, false);
    let mut order: Vec<usize> = spec.info_set().to_vec();
    order.sort_by(|&a, &b| trace[a - 1].abs().total_cmp(&trace[b - 1].abs()).then(a.cmp(&b)));
    let mut prev: Vec<usize> = Vec::new();
    for &i in order.iter().take(params.max_attempts) {
        let j = next_rollback_phase(&[i], &prev)?;
        redecode(&mut path, j - 1, &[i], &mut trace);
        prev = vec![i];
        if spec.crc_passes(path.bits()) {
            return Ok(result_of(&path, false));
        }
    }
    Ok(DecodeResult {
        visits: path.visits(),
        ..initial
    })
}

/// DSCF metric `Σ_{i∈E} |ℓ_i| + Σ_{j∈A, j<=max E} (1/α) ln(1 + e^{-α|ℓ_j|})`.
///
/// `trace[j-1]` is the decision LLR at phase `j` on the branch that produced `E`.
pub fn dscf_metric(set: &[usize], trace: &[f64], spec: &CodeSpec, alpha: f64) -> f64 {
    let Some(&max) = set.last() else {
        return 0.0;
    };
    let flips: f64 = set.iter().map(|&i| trace[i - 1].abs()).sum();
    let bias: f64 = spec
        .info_set()
        .iter()
        .take_while(|&&j| j <= max)
        .map(|&j| (-alpha * trace[j - 1].abs()).exp().ln_1p() / alpha)
        .sum();
    flips + bias
}

#[derive(Debug, Clone)]
struct Candidate {
    q: f64,
    set: Vec<usize>,
}

/// Dynamic SC flip decoding.
///
/// Candidate sets are kept sorted by [`dscf_metric`] in a pool of at most `T`
/// entries. Each attempt decodes the best set; if the CRC fails and the set
/// is smaller than `max_order`, it spawns supersets with one later
/// information index, scored on the attempt's own LLR trace.
pub fn dscf_decode(
    spec: &CodeSpec,
    llr: &[f64],
    params: &FlipMetricParams,
    mode: MetricMode,
) -> Result<DecodeResult> {
    require_crc(spec, llr, params)?;
    let mut path = DecodePath::new(spec, mode);
    path.load(llr);
    let mut trace = vec![0.0; spec.len()];
    redecode(&mut path, 0, &[], &mut trace);
    if spec.crc_passes(path.bits()) {
        return Ok(result_of(&path, false));
    }
    let initial = result_of(&path, false);
    let cap = params.max_attempts;
    let mut pool: Vec<Candidate> = Vec::new();
    spawn(&mut pool, &[], spec, &trace, params.alpha, cap);
    let mut prev: Vec<usize> = Vec::new();
    for _ in 0..params.max_attempts {
        if pool.is_empty() {
            break;
        }
        let cand = pool.remove(0);
        let j = next_rollback_phase(&cand.set, &prev)?;
        redecode(&mut path, j - 1, &cand.set, &mut trace);
        if spec.crc_passes(path.bits()) {
            return Ok(result_of(&path, false));
        }
        if cand.set.len() < params.max_order {
            spawn(&mut pool, &cand.set, spec, &trace, params.alpha, cap);
        }
        prev = cand.set;
    }
    Ok(DecodeResult {
        visits: path.visits(),
        ..initial
    })
}

fn spawn(
    pool: &mut Vec<Candidate>,
    base: &[usize],
    spec: &CodeSpec,
    trace: &[f64],
    alpha: f64,
    cap: usize,
) {
    let after = base.last().copied().unwrap_or(0);
    for &i in spec.info_set().iter().filter(|&&i| i > after) {
        let mut set = base.to_vec();
        set.push(i);
        let q = dscf_metric(&set, trace, spec, alpha);
        let at = pool.partition_point(|c| {
            c.q.total_cmp(&q)
                .then(c.set.len().cmp(&set.len()))
                .then_with(|| c.set.cmp(&set))
                .is_lt()
        });
        if at < cap {
            pool.insert(at, Candidate { q, set });
            pool.truncate(cap);
        }
    }
}
