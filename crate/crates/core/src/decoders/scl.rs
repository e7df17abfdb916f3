use super::DecodeResult;
use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::sc::{DecodePath, MetricMode};

/// SC list decoding with `list_size` paths.
///
/// At each information phase the `list_size` lowest-metric extensions
/// survive; ties go to the lower parent index, then to the SC decision.
/// Returns the lowest-metric leaf, restricted to CRC-passing leaves when the
/// code has a CRC and at least one leaf passes. Visits count one per active
/// path per phase.
pub fn scl_decode(
    spec: &CodeSpec,
    llr: &[f64],
    list_size: usize,
    mode: MetricMode,
) -> Result<DecodeResult> {
    if list_size == 0 {
        return Err(Error::Config("list size must be at least 1".into()));
    }
    if llr.len() != spec.len() {
        return Err(Error::LengthMismatch {
            expected: spec.len(),
            actual: llr.len(),
        });
    }
    let mut first = DecodePath::new(spec, mode);
    first.load(llr);
    let mut paths = vec![first];
    let mut visits = 0u64;
    let mut cands: Vec<(f64, usize, u8, u8)> = Vec::new();
    for pos in 0..spec.len() {
        visits += paths.len() as u64;
        if !spec.info_at(pos) {
            for p in &mut paths {
                let bit = p.sc_bit();
                p.push(bit);
            }
            continue;
        }
        cands.clear();
        for (idx, p) in paths.iter_mut().enumerate() {
            let hard = p.sc_bit();
            cands.push((p.metric_if(hard), idx, 0, hard));
            cands.push((p.metric_if(hard ^ 1), idx, 1, hard ^ 1));
        }
        cands.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        cands.truncate(list_size);
        let mut survivors = vec![0u8; paths.len()];
        for &(_, idx, _, _) in &cands {
            survivors[idx] += 1;
        }
        let mut old: Vec<Option<DecodePath<'_>>> = paths.drain(..).map(Some).collect();
        for &(_, idx, _, bit) in &cands {
            survivors[idx] -= 1;
            let mut p = if survivors[idx] == 0 {
                old[idx].take().expect("path used once")
            } else {
                old[idx].as_ref().expect("path still present").clone()
            };
            p.push(bit);
            paths.push(p);
        }
    }
    let pick = |require_crc: bool| {
        paths
            .iter()
            .enumerate()
            .filter(|(_, p)| !require_crc || spec.crc_passes(p.bits()))
            .min_by(|a, b| a.1.metric().total_cmp(&b.1.metric()).then(a.0.cmp(&b.0)))
            .map(|(_, p)| p)
    };
    let best = if spec.crc().is_some() {
        pick(true).or_else(|| pick(false))
    } else {
        pick(false)
    }
    .expect("list is non-empty");
    Ok(DecodeResult::new(
        spec,
        best.bits().to_vec(),
        best.metric(),
        visits,
        false,
    ))
}
